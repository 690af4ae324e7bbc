#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "fireprox/config.hpp"
#include "fireprox/error.hpp"
#include "fireprox/geometry.hpp"
#include "fireprox/overlay.hpp"
#include "fireprox/reference.hpp"
#include "fireprox/risk.hpp"
#include "fireprox/synth.hpp"
#include "fireprox/temporal.hpp"
#include "fireprox/validate.hpp"
#include "fireprox/wire.hpp"

namespace py = pybind11;
using namespace fireprox;

namespace {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFiniteField: return "NonFiniteField";
    case ErrorKind::ConfidenceOutOfRange: return "ConfidenceOutOfRange";
    case ErrorKind::NegativeDimension: return "NegativeDimension";
    case ErrorKind::ZeroFrameArea: return "ZeroFrameArea";
    case ErrorKind::AreaExceedsFrame: return "AreaExceedsFrame";
    case ErrorKind::NonPositiveReference: return "NonPositiveReference";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::RiskOutOfRange: return "RiskOutOfRange";
    case ErrorKind::OutOfOrderFrame: return "OutOfOrderFrame";
    case ErrorKind::MalformedJson: return "MalformedJson";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::MismatchedReport: return "MismatchedReport";
    case ErrorKind::SpecLengthMismatch: return "SpecLengthMismatch";
    case ErrorKind::MissingScale: return "MissingScale";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}


}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Proximity-aware fire hazard risk engine";

  static py::exception<Error> error_type(m, "FireproxError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("kind") = kind_name(e.kind());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::enum_<ScaleSource>(m, "ScaleSource")
      .value("ReferenceObject", ScaleSource::ReferenceObject)
      .value("Manual", ScaleSource::Manual)
      .value("ConfigDefault", ScaleSource::ConfigDefault);
  py::enum_<Aggregation>(m, "Aggregation")
      .value("WorstCaseMax", Aggregation::WorstCaseMax)
      .value("BoundedSum", Aggregation::BoundedSum);
  py::enum_<RiskTier>(m, "RiskTier")
      .value("Low", RiskTier::Low)
      .value("Medium", RiskTier::Medium)
      .value("High", RiskTier::High)
      .value("Critical", RiskTier::Critical)
      .def("__lt__", [](RiskTier a, RiskTier b) { return a < b; })
      .def("__le__", [](RiskTier a, RiskTier b) { return a <= b; });
  py::enum_<ProximityMetric>(m, "ProximityMetric")
      .value("Centroid", ProximityMetric::Centroid)
      .value("BBoxGap", ProximityMetric::BBoxGap);
  py::enum_<OverlayStyle>(m, "OverlayStyle")
      .value("Direct", OverlayStyle::Direct)
      .value("Horizontal", OverlayStyle::Horizontal);

  py::class_<BBox>(m, "BBox")
      .def(py::init<>())
      .def(py::init([](double x, double y, double w, double h) { return BBox{x, y, w, h}; }), py::arg("x"),
           py::arg("y"), py::arg("w"), py::arg("h"))
      .def_readwrite("x", &BBox::x)
      .def_readwrite("y", &BBox::y)
      .def_readwrite("w", &BBox::w)
      .def_readwrite("h", &BBox::h)
      .def("area", &BBox::area)
      .def(py::self == py::self)
      .def("__repr__", [](const BBox& b) {
        return "BBox(" + std::to_string(b.x) + ", " + std::to_string(b.y) + ", " + std::to_string(b.w) + ", " +
               std::to_string(b.h) + ")";
      });

  py::class_<FireInstance>(m, "FireInstance")
      .def(py::init<>())
      .def(py::init([](BBox bbox, double confidence, std::optional<double> mask) {
             return FireInstance{bbox, confidence, mask};
           }),
           py::arg("bbox"), py::arg("confidence"), py::arg("mask_area_px") = std::nullopt)
      .def_readwrite("bbox", &FireInstance::bbox)
      .def_readwrite("confidence", &FireInstance::confidence)
      .def_readwrite("mask_area_px", &FireInstance::mask_area_px)
      .def(py::self == py::self);

  py::class_<ContextObject>(m, "ContextObject")
      .def(py::init<>())
      .def(py::init([](BBox bbox, std::string label, double confidence) {
             return ContextObject{bbox, std::move(label), confidence};
           }),
           py::arg("bbox"), py::arg("class_label"), py::arg("confidence"))
      .def_readwrite("bbox", &ContextObject::bbox)
      .def_readwrite("class_label", &ContextObject::class_label)
      .def_readwrite("confidence", &ContextObject::confidence)
      .def(py::self == py::self);

  py::class_<CalibrationScale>(m, "CalibrationScale")
      .def(py::init([](double kappa, ScaleSource source) { return CalibrationScale{kappa, source}; }),
           py::arg("kappa"), py::arg("source") = ScaleSource::Manual)
      .def_readwrite("kappa", &CalibrationScale::kappa)
      .def_readwrite("source", &CalibrationScale::source)
      .def(py::self == py::self);

  py::class_<FrameRecord>(m, "FrameRecord")
      .def(py::init<>())
      .def(py::init([](std::uint64_t id, std::uint32_t w, std::uint32_t h, std::vector<FireInstance> fires,
                       std::vector<ContextObject> objects) {
             FrameRecord f;
             f.frame_id = id;
             f.width_px = w;
             f.height_px = h;
             f.fires = std::move(fires);
             f.objects = std::move(objects);
             return f;
           }),
           py::arg("frame_id"), py::arg("width_px"), py::arg("height_px"),
           py::arg("fires") = std::vector<FireInstance>{}, py::arg("objects") = std::vector<ContextObject>{})
      .def_readwrite("frame_id", &FrameRecord::frame_id)
      .def_readwrite("timestamp_ms", &FrameRecord::timestamp_ms)
      .def_readwrite("width_px", &FrameRecord::width_px)
      .def_readwrite("height_px", &FrameRecord::height_px)
      .def_readwrite("fires", &FrameRecord::fires)
      .def_readwrite("objects", &FrameRecord::objects)
      .def_readwrite("scale_override", &FrameRecord::scale_override)
      .def("area_px", &FrameRecord::area_px)
      .def(py::self == py::self);

  py::class_<VulnerabilityTable>(m, "VulnerabilityTable")
      .def(py::init(&VulnerabilityTable::defaults))
      .def_readwrite("entries", &VulnerabilityTable::entries)
      .def_readwrite("default_weight", &VulnerabilityTable::default_weight);

  py::class_<RiskParams>(m, "RiskParams")
      .def(py::init<>())
      .def_readwrite("alpha_s", &RiskParams::alpha_s)
      .def_readwrite("alpha_a", &RiskParams::alpha_a)
      .def_readwrite("beta_s", &RiskParams::beta_s)
      .def_readwrite("lambda_m", &RiskParams::lambda_m)
      .def_readwrite("tau1", &RiskParams::tau1)
      .def_readwrite("tau2", &RiskParams::tau2)
      .def_readwrite("tau3", &RiskParams::tau3)
      .def_readwrite("d_crit_m", &RiskParams::d_crit_m)
      .def_readwrite("rho_crit", &RiskParams::rho_crit)
      .def_readwrite("gamma", &RiskParams::gamma)
      .def_readwrite("delta_d_m", &RiskParams::delta_d_m)
      .def_readwrite("vulnerability", &RiskParams::vulnerability)
      .def_readwrite("aggregation", &RiskParams::aggregation)
      .def_readwrite("use_worst_case_exposure", &RiskParams::use_worst_case_exposure)
      .def("validate", &RiskParams::validate);

  py::class_<EngineConfig>(m, "EngineConfig")
      .def(py::init<>())
      .def_readwrite("params", &EngineConfig::params)
      .def_readwrite("kappa", &EngineConfig::kappa)
      .def_readwrite("proximity_metric", &EngineConfig::proximity_metric)
      .def_readwrite("overlay_style", &EngineConfig::overlay_style)
      .def_readwrite("debounce_frames", &EngineConfig::debounce_frames)
      .def("to_json", &config_to_json);

  py::class_<PairAssessment>(m, "PairAssessment")
      .def_readonly("fire_index", &PairAssessment::fire_index)
      .def_readonly("object_index", &PairAssessment::object_index)
      .def_readonly("distance_px", &PairAssessment::distance_px)
      .def_readonly("distance_m", &PairAssessment::distance_m)
      .def_readonly("severity", &PairAssessment::severity)
      .def_readonly("vulnerability", &PairAssessment::vulnerability)
      .def_readonly("confidence_factor", &PairAssessment::confidence_factor)
      .def_readonly("exposure", &PairAssessment::exposure)
      .def_readonly("risk", &PairAssessment::risk);

  py::class_<AlertEvent>(m, "AlertEvent")
      .def_readonly("frame_id", &AlertEvent::frame_id)
      .def_readonly("fire_index", &AlertEvent::fire_index)
      .def_readonly("object_index", &AlertEvent::object_index)
      .def_readonly("class_label", &AlertEvent::class_label)
      .def_readonly("distance_m", &AlertEvent::distance_m)
      .def_readonly("risk", &AlertEvent::risk)
      .def_readonly("tier", &AlertEvent::tier)
      .def_readonly("smoothed", &AlertEvent::smoothed)
      .def("to_json", &emit_alert_line);

  py::class_<RiskReport>(m, "RiskReport")
      .def_readonly("frame_id", &RiskReport::frame_id)
      .def_readonly("kappa_used", &RiskReport::kappa_used)
      .def_readonly("pairs", &RiskReport::pairs)
      .def_readonly("object_risks", &RiskReport::object_risks)
      .def_readonly("frame_risk_max", &RiskReport::frame_risk_max)
      .def_readonly("frame_risk_accumulated", &RiskReport::frame_risk_accumulated)
      .def_readonly("tier", &RiskReport::tier)
      .def_readonly("alerts", &RiskReport::alerts)
      .def_readonly("smoothed_risk", &RiskReport::smoothed_risk)
      .def_readonly("smoothed_tier", &RiskReport::smoothed_tier)
      .def("to_json", &emit_report_line)
      .def(py::self == py::self);

  py::class_<StreamStep>(m, "StreamStep")
      .def_readonly("report", &StreamStep::report)
      .def_readonly("smoothed_risk", &StreamStep::smoothed_risk)
      .def_readonly("smoothed_tier", &StreamStep::smoothed_tier)
      .def_readonly("stream_alerts", &StreamStep::stream_alerts);

  py::class_<StreamAssessor>(m, "StreamAssessor")
      .def(py::init<RiskParams, std::uint32_t, ProximityMetric>(), py::arg("params") = RiskParams{},
           py::arg("debounce_frames") = 5, py::arg("metric") = ProximityMetric::Centroid)
      .def("push", &StreamAssessor::push, py::arg("frame"), py::arg("scale"))
      .def_property_readonly("smoothed_risk", [](const StreamAssessor& s) { return s.state().smoothed_risk; })
      .def_property_readonly("frames_seen", [](const StreamAssessor& s) { return s.state().frames_seen; });

  m.def("validate_frame", [](const FrameRecord& f) { return validate_frame(f); }, py::arg("frame"));
  m.def("centroid", [](const BBox& b) {
    const auto c = centroid(b);
    return py::make_tuple(c.x, c.y);
  });
  m.def("pixel_distance", [](std::pair<double, double> p, std::pair<double, double> q) {
    return pixel_distance({p.first, p.second}, {q.first, q.second});
  });
  m.def("bbox_gap_distance", &bbox_gap_distance);
  m.def("derive_scale", &derive_scale, py::arg("ref_px"), py::arg("ref_m"));
  m.def("to_meters", &to_meters, py::arg("distance_px"), py::arg("scale"));

  m.def("logistic", &logistic);
  m.def("exposure", &exposure, py::arg("distance_m"), py::arg("params") = RiskParams{});
  m.def("exposure_worst_case", &exposure_worst_case, py::arg("distance_m"), py::arg("params") = RiskParams{});
  m.def("frame_risk_max", [](const std::vector<double>& r) { return frame_risk_max(r); });
  m.def("frame_risk_bounded_sum", [](const std::vector<double>& r) { return frame_risk_bounded_sum(r); });
  m.def("tier", &tier, py::arg("risk"), py::arg("params") = RiskParams{});
  m.def("pairwise_risk", &pairwise_risk, py::arg("fire_index"), py::arg("object_index"), py::arg("frame"),
        py::arg("scale"), py::arg("params") = RiskParams{}, py::arg("metric") = ProximityMetric::Centroid);
  m.def("assess_frame", &assess_frame, py::arg("frame"), py::arg("scale"), py::arg("params") = RiskParams{},
        py::arg("metric") = ProximityMetric::Centroid);
  m.def("reference_assess", &reference::reference_assess, py::arg("frame"), py::arg("scale"),
        py::arg("params") = RiskParams{});
  m.def(
      "stream_assess",
      [](const std::vector<FrameRecord>& frames, const CalibrationScale& scale, const RiskParams& params,
         std::uint32_t debounce, ProximityMetric metric) {
        return stream_assess(frames, scale, params, debounce, metric);
      },
      py::arg("frames"), py::arg("scale"), py::arg("params") = RiskParams{}, py::arg("debounce_frames") = 5,
      py::arg("metric") = ProximityMetric::Centroid);

  m.def("parse_frame_line", &parse_frame_line, py::arg("line"));
  m.def("emit_frame_line", &emit_frame_line, py::arg("frame"));
  m.def("parse_report_line", &parse_report_line, py::arg("line"));
  m.def("emit_report_line", &emit_report_line, py::arg("report"));
  m.def("parse_alert_line", &parse_alert_line, py::arg("line"));
  m.def("emit_alert_line", &emit_alert_line, py::arg("alert"));

  m.def("parse_config", &parse_config, py::arg("json_text"));
  m.def("resolve_scale", &resolve_scale, py::arg("frame"), py::arg("config_kappa") = std::nullopt,
        py::arg("cli_kappa") = std::nullopt);
  m.def("render_overlay", &render_overlay, py::arg("frame"), py::arg("report"),
        py::arg("config") = EngineConfig{});

  m.def(
      "random_frames",
      [](std::uint64_t seed, std::size_t count, std::uint32_t width, std::uint32_t height) {
        std::mt19937_64 rng(seed);
        std::vector<FrameRecord> frames;
        for (std::size_t k = 0; k < count; ++k) frames.push_back(synth::random_frame(rng, k, width, height));
        return frames;
      },
      py::arg("seed"), py::arg("count"), py::arg("width_px") = 1280, py::arg("height_px") = 720);
}
