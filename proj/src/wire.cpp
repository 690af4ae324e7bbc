#include "fireprox/wire.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "fireprox/error.hpp"
#include "fireprox/validate.hpp"

namespace fireprox {
namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

json parse_document(std::string_view line) {
  try {
    return json::parse(line.begin(), line.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedJson, "at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

[[noreturn]] void schema(const std::string& field, const char* expected) {
  throw Error(ErrorKind::SchemaViolation, "field \"" + field + "\" must be " + expected);
}

const json& required(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorKind::SchemaViolation, "missing field \"" + path + key + "\"");
  }
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) schema(field, "a number");
  return v.get<double>();
}

std::uint64_t as_uint(const json& v, const std::string& field,
                      std::uint64_t max = std::numeric_limits<std::uint64_t>::max()) {
  const bool non_negative_int =
      v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
  if (!non_negative_int) schema(field, "an unsigned integer");
  const auto value = v.get<std::uint64_t>();
  if (value > max) schema(field, "within the unsigned range of its type");
  return value;
}

std::size_t as_index(const json& v, const std::string& field) {
  return static_cast<std::size_t>(as_uint(v, field));
}

const std::string& as_string(const json& v, const std::string& field) {
  if (!v.is_string()) schema(field, "a string");
  return v.get_ref<const std::string&>();
}

bool as_bool(const json& v, const std::string& field) {
  if (!v.is_boolean()) schema(field, "a boolean");
  return v.get<bool>();
}

const json& as_array(const json& v, const std::string& field) {
  if (!v.is_array()) schema(field, "an array");
  return v;
}

const json& as_object(const json& v, const std::string& field) {
  if (!v.is_object()) schema(field, "an object");
  return v;
}

RiskTier as_tier(const json& v, const std::string& field) {
  const auto parsed = parse_tier(as_string(v, field));
  if (!parsed) schema(field, "one of Low, Medium, High, Critical");
  return *parsed;
}

BBox as_bbox(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 4) schema(field, "an array [x, y, w, h]");
  return {as_number(v[0], field + "[0]"), as_number(v[1], field + "[1]"),
          as_number(v[2], field + "[2]"), as_number(v[3], field + "[3]")};
}

std::string element(const char* list, std::size_t i) {
  return std::string(list) + "[" + std::to_string(i) + "]";
}

double num(double v) { return round_sig12(v); }

ordered_json bbox_json(const BBox& b) {
  return ordered_json::array({num(b.x), num(b.y), num(b.w), num(b.h)});
}

ordered_json alert_json(const AlertEvent& a) {
  ordered_json out;
  out["frame_id"] = a.frame_id;
  out["fire_index"] = a.fire_index;
  out["object_index"] = a.object_index;
  out["class"] = a.class_label;
  out["distance_m"] = num(a.distance_m);
  out["risk"] = num(a.risk);
  out["tier"] = to_string(a.tier);
  out["smoothed"] = a.smoothed;
  return out;
}

AlertEvent alert_from(const json& v, const std::string& path) {
  as_object(v, path);
  AlertEvent a;
  a.frame_id = as_uint(required(v, "frame_id", path + "."), path + ".frame_id");
  a.fire_index = as_index(required(v, "fire_index", path + "."), path + ".fire_index");
  a.object_index = as_index(required(v, "object_index", path + "."), path + ".object_index");
  a.class_label = as_string(required(v, "class", path + "."), path + ".class");
  a.distance_m = as_number(required(v, "distance_m", path + "."), path + ".distance_m");
  a.risk = as_number(required(v, "risk", path + "."), path + ".risk");
  a.tier = as_tier(required(v, "tier", path + "."), path + ".tier");
  a.smoothed = as_bool(required(v, "smoothed", path + "."), path + ".smoothed");
  return a;
}

}  // namespace

double round_sig12(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

FrameRecord parse_frame_line(std::string_view line) {
  const json doc = parse_document(line);
  as_object(doc, "<frame>");

  FrameRecord frame;
  frame.frame_id = as_uint(required(doc, "frame_id", ""), "frame_id");
  if (const auto* ts = optional_field(doc, "timestamp_ms")) frame.timestamp_ms = as_uint(*ts, "timestamp_ms");
  constexpr auto kMaxDim = std::numeric_limits<std::uint32_t>::max();
  frame.width_px = static_cast<std::uint32_t>(as_uint(required(doc, "width_px", ""), "width_px", kMaxDim));
  frame.height_px = static_cast<std::uint32_t>(as_uint(required(doc, "height_px", ""), "height_px", kMaxDim));
  if (const auto* scale = optional_field(doc, "scale_px_per_m")) {
    frame.scale_override = CalibrationScale{as_number(*scale, "scale_px_per_m"), ScaleSource::Manual};
  }

  const auto& fires = as_array(required(doc, "fires", ""), "fires");
  for (std::size_t i = 0; i < fires.size(); ++i) {
    const auto path = element("fires", i);
    const auto& f = as_object(fires[i], path);
    FireInstance fire;
    fire.bbox = as_bbox(required(f, "bbox", path + "."), path + ".bbox");
    fire.confidence = as_number(required(f, "confidence", path + "."), path + ".confidence");
    if (const auto* mask = optional_field(f, "mask_area_px")) {
      fire.mask_area_px = as_number(*mask, path + ".mask_area_px");
    }
    frame.fires.push_back(fire);
  }

  const auto& objects = as_array(required(doc, "objects", ""), "objects");
  for (std::size_t j = 0; j < objects.size(); ++j) {
    const auto path = element("objects", j);
    const auto& o = as_object(objects[j], path);
    ContextObject object;
    object.bbox = as_bbox(required(o, "bbox", path + "."), path + ".bbox");
    object.class_label = as_string(required(o, "class", path + "."), path + ".class");
    object.confidence = as_number(required(o, "confidence", path + "."), path + ".confidence");
    frame.objects.push_back(std::move(object));
  }

  validate_frame(frame);
  return frame;
}

std::string emit_frame_line(const FrameRecord& frame) {
  ordered_json out;
  out["frame_id"] = frame.frame_id;
  if (frame.timestamp_ms) out["timestamp_ms"] = *frame.timestamp_ms;
  out["width_px"] = frame.width_px;
  out["height_px"] = frame.height_px;
  if (frame.scale_override) out["scale_px_per_m"] = num(frame.scale_override->kappa);
  out["fires"] = ordered_json::array();
  for (const auto& fire : frame.fires) {
    ordered_json f;
    f["bbox"] = bbox_json(fire.bbox);
    f["confidence"] = num(fire.confidence);
    if (fire.mask_area_px) f["mask_area_px"] = num(*fire.mask_area_px);
    out["fires"].push_back(std::move(f));
  }
  out["objects"] = ordered_json::array();
  for (const auto& object : frame.objects) {
    ordered_json o;
    o["bbox"] = bbox_json(object.bbox);
    o["class"] = object.class_label;
    o["confidence"] = num(object.confidence);
    out["objects"].push_back(std::move(o));
  }
  return out.dump();
}

std::string emit_report_line(const RiskReport& report) {
  ordered_json out;
  out["frame_id"] = report.frame_id;
  out["kappa_used"] = num(report.kappa_used);
  out["pairs"] = ordered_json::array();
  for (const auto& p : report.pairs) {
    ordered_json pair;
    pair["fire_index"] = p.fire_index;
    pair["object_index"] = p.object_index;
    pair["distance_px"] = num(p.distance_px);
    pair["distance_m"] = num(p.distance_m);
    pair["severity"] = num(p.severity);
    pair["vulnerability"] = num(p.vulnerability);
    pair["confidence_factor"] = num(p.confidence_factor);
    pair["exposure"] = num(p.exposure);
    pair["risk"] = num(p.risk);
    out["pairs"].push_back(std::move(pair));
  }
  out["object_risks"] = ordered_json::array();
  for (double r : report.object_risks) out["object_risks"].push_back(num(r));
  out["frame_risk_max"] = num(report.frame_risk_max);
  out["frame_risk_accumulated"] = num(report.frame_risk_accumulated);
  out["tier"] = to_string(report.tier);
  if (report.smoothed_risk) out["smoothed_risk"] = num(*report.smoothed_risk);
  if (report.smoothed_tier) out["smoothed_tier"] = to_string(*report.smoothed_tier);
  out["alerts"] = ordered_json::array();
  for (const auto& a : report.alerts) out["alerts"].push_back(alert_json(a));
  return out.dump();
}

RiskReport parse_report_line(std::string_view line) {
  const json doc = parse_document(line);
  as_object(doc, "<report>");

  RiskReport report;
  report.frame_id = as_uint(required(doc, "frame_id", ""), "frame_id");
  report.kappa_used = as_number(required(doc, "kappa_used", ""), "kappa_used");
  const auto& pairs = as_array(required(doc, "pairs", ""), "pairs");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto path = element("pairs", k);
    const auto& p = as_object(pairs[k], path);
    const auto field = [&](const char* key) -> const json& { return required(p, key, path + "."); };
    PairAssessment pair;
    pair.fire_index = as_index(field("fire_index"), path + ".fire_index");
    pair.object_index = as_index(field("object_index"), path + ".object_index");
    pair.distance_px = as_number(field("distance_px"), path + ".distance_px");
    pair.distance_m = as_number(field("distance_m"), path + ".distance_m");
    pair.severity = as_number(field("severity"), path + ".severity");
    pair.vulnerability = as_number(field("vulnerability"), path + ".vulnerability");
    pair.confidence_factor = as_number(field("confidence_factor"), path + ".confidence_factor");
    pair.exposure = as_number(field("exposure"), path + ".exposure");
    pair.risk = as_number(field("risk"), path + ".risk");
    report.pairs.push_back(pair);
  }
  const auto& risks = as_array(required(doc, "object_risks", ""), "object_risks");
  for (std::size_t j = 0; j < risks.size(); ++j) {
    report.object_risks.push_back(as_number(risks[j], element("object_risks", j)));
  }
  report.frame_risk_max = as_number(required(doc, "frame_risk_max", ""), "frame_risk_max");
  report.frame_risk_accumulated =
      as_number(required(doc, "frame_risk_accumulated", ""), "frame_risk_accumulated");
  report.tier = as_tier(required(doc, "tier", ""), "tier");
  if (const auto* s = optional_field(doc, "smoothed_risk")) report.smoothed_risk = as_number(*s, "smoothed_risk");
  if (const auto* s = optional_field(doc, "smoothed_tier")) report.smoothed_tier = as_tier(*s, "smoothed_tier");
  const auto& alerts = as_array(required(doc, "alerts", ""), "alerts");
  for (std::size_t k = 0; k < alerts.size(); ++k) {
    report.alerts.push_back(alert_from(alerts[k], element("alerts", k)));
  }
  return report;
}

std::string emit_alert_line(const AlertEvent& alert) { return alert_json(alert).dump(); }

AlertEvent parse_alert_line(std::string_view line) {
  return alert_from(parse_document(line), "<alert>");
}

}  // namespace fireprox
