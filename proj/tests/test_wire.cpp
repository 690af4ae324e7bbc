#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fireprox/config.hpp"
#include "fireprox/error.hpp"
#include "fireprox/risk.hpp"
#include "fireprox/synth.hpp"
#include "fireprox/wire.hpp"
#include "test_support.hpp"

namespace fireprox {
namespace {

using testing::empty_frame;
using testing::fire_at;
using testing::object_at;

ErrorKind parse_error_kind(std::string_view line) {
  try {
    parse_frame_line(line);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << line;
  return ErrorKind::Io;
}

std::string error_text(std::string_view line) {
  try {
    parse_frame_line(line);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(ParseFrameLine, Minimal) {
  const auto f = parse_frame_line(R"({"frame_id":0,"width_px":640,"height_px":640,"fires":[],"objects":[]})");
  EXPECT_EQ(f, empty_frame(0));
}

TEST(ParseFrameLine, OneFireOnePerson) {
  const auto f = parse_frame_line(
      R"({"frame_id":4,"timestamp_ms":1700,"width_px":1280,"height_px":720,"scale_px_per_m":42.5,)"
      R"("fires":[{"bbox":[10,20,30,40],"confidence":0.91,"mask_area_px":812}],)"
      R"("objects":[{"bbox":[500,200,60,180],"class":"person","confidence":0.88}],"camera":"north"})");
  ASSERT_EQ(f.fires.size(), 1u);
  ASSERT_EQ(f.objects.size(), 1u);
  EXPECT_EQ(f.frame_id, 4u);
  EXPECT_EQ(f.timestamp_ms, 1700u);
  EXPECT_EQ(f.width_px, 1280u);
  EXPECT_EQ(f.scale_override->kappa, 42.5);
  EXPECT_EQ(f.fires[0].bbox, (BBox{10, 20, 30, 40}));
  EXPECT_EQ(f.fires[0].mask_area_px, 812.0);
  EXPECT_EQ(f.objects[0].class_label, "person");
  EXPECT_EQ(f.objects[0].confidence, 0.88);
}

TEST(ParseFrameLine, TruncatedLineReportsByteOffset) {
  const std::string line = R"({"frame_id":0,"width_px":640,"hei)";
  EXPECT_EQ(parse_error_kind(line), ErrorKind::MalformedJson);
  EXPECT_NE(error_text(line).find("at byte"), std::string::npos) << error_text(line);
}

TEST(ParseFrameLine, SchemaViolationsNameTheField) {
  EXPECT_EQ(parse_error_kind(R"({"width_px":640,"height_px":640,"fires":[],"objects":[]})"),
            ErrorKind::SchemaViolation);
  EXPECT_NE(error_text(R"({"width_px":640,"height_px":640,"fires":[],"objects":[]})").find("frame_id"),
            std::string::npos);
  const std::string bad_bbox =
      R"({"frame_id":0,"width_px":640,"height_px":640,"fires":[{"bbox":[1,2,3],"confidence":0.5}],"objects":[]})";
  EXPECT_EQ(parse_error_kind(bad_bbox), ErrorKind::SchemaViolation);
  EXPECT_NE(error_text(bad_bbox).find("fires[0].bbox"), std::string::npos);
  EXPECT_EQ(parse_error_kind(R"({"frame_id":-1,"width_px":640,"height_px":640,"fires":[],"objects":[]})"),
            ErrorKind::SchemaViolation);
  EXPECT_EQ(parse_error_kind(R"({"frame_id":1.5,"width_px":640,"height_px":640,"fires":[],"objects":[]})"),
            ErrorKind::SchemaViolation);
  EXPECT_EQ(parse_error_kind(
                R"({"frame_id":0,"width_px":640,"height_px":640,"fires":[],"objects":[{"bbox":[0,0,1,1],"class":7,"confidence":0.5}]})"),
            ErrorKind::SchemaViolation);
  EXPECT_EQ(parse_error_kind(R"([1,2,3])"), ErrorKind::SchemaViolation);
}

TEST(ParseFrameLine, ValidationErrorsPropagate) {
  EXPECT_EQ(parse_error_kind(
                R"({"frame_id":0,"width_px":640,"height_px":640,"fires":[{"bbox":[0,0,1,1],"confidence":1.3}],"objects":[]})"),
            ErrorKind::ConfidenceOutOfRange);
  EXPECT_EQ(parse_error_kind(
                R"({"frame_id":0,"width_px":640,"height_px":640,"fires":[{"bbox":[0,0,-5,1],"confidence":0.3}],"objects":[]})"),
            ErrorKind::NegativeDimension);
  EXPECT_EQ(parse_error_kind(R"({"frame_id":0,"width_px":0,"height_px":640,"fires":[],"objects":[]})"),
            ErrorKind::ZeroFrameArea);
}

TEST(EmitReportLine, EmptyFrame) {
  const auto report = assess_frame(empty_frame(3), {50, ScaleSource::Manual}, RiskParams{});
  EXPECT_EQ(emit_report_line(report),
            R"({"frame_id":3,"kappa_used":50.0,"pairs":[],"object_risks":[],"frame_risk_max":0.0,)"
            R"("frame_risk_accumulated":0.0,"tier":"Low","alerts":[]})");
}

TEST(EmitReportLine, NumbersUseAtMostTwelveSignificantDigits) {
  EXPECT_EQ(round_sig12(0.1 + 0.2), 0.3);
  EXPECT_EQ(round_sig12(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(round_sig12(0.0), 0.0);
  RiskReport r;
  r.frame_risk_max = 1.0 / 3.0;
  r.frame_risk_accumulated = 2.0 / 3.0;
  const auto line = emit_report_line(r);
  EXPECT_NE(line.find(R"("frame_risk_max":0.333333333333,)"), std::string::npos) << line;
  EXPECT_NE(line.find(R"("frame_risk_accumulated":0.666666666667,)"), std::string::npos) << line;
}

TEST(EmitReportLine, TwoAlertsInDescendingRisk) {
  auto frame = empty_frame(1);
  frame.fires.push_back(fire_at(100, 100, 200, 200, 1.0, 640.0 * 640.0 * 0.5));
  frame.objects.push_back(object_at(340, 190, 20, 20, "bus", 1.0));     // 3 m
  frame.objects.push_back(object_at(240, 190, 20, 20, "person", 1.0));  // 1 m
  const auto report = assess_frame(frame, {50, ScaleSource::Manual}, RiskParams{});
  const auto parsed = parse_report_line(emit_report_line(report));
  ASSERT_EQ(parsed.alerts.size(), 2u);
  EXPECT_GT(parsed.alerts[0].risk, parsed.alerts[1].risk);
  EXPECT_EQ(parsed.alerts[0].class_label, "person");
  EXPECT_EQ(parsed.alerts[1].class_label, "bus");
}

TEST(Wire, ReportRoundTripToTwelveDigits) {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 300; ++n) {
    const auto frame = synth::random_frame(rng, n, 1920, 1080);
    auto report = assess_frame(frame, {37.3, ScaleSource::Manual}, testing::random_params(rng));
    if (n % 2 == 0) {
      report.smoothed_risk = std::uniform_real_distribution<double>(0, 1)(rng);
      report.smoothed_tier = RiskTier::High;
    }
    const auto parsed = parse_report_line(emit_report_line(report));
    // Half a unit in the twelfth digit, relative to distances up to the diagonal.
    EXPECT_LE(testing::report_divergence(report, parsed), 5e-12 * std::hypot(1920.0, 1080.0));
    EXPECT_EQ(emit_report_line(parsed), emit_report_line(report));
  }
}

TEST(Wire, FrameRoundTripOnRandomCorpus) {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 500; ++n) {
    auto frame = synth::random_frame(rng, n, 1280, 720);
    if (n % 3 == 0) frame.timestamp_ms = 1000u * n;
    if (n % 4 == 0) frame.scale_override = CalibrationScale{12.25, ScaleSource::Manual};
    const auto parsed = parse_frame_line(emit_frame_line(frame));
    const auto reparsed = parse_frame_line(emit_frame_line(parsed));
    EXPECT_EQ(parsed, reparsed);
    ASSERT_EQ(parsed.fires.size(), frame.fires.size());
    ASSERT_EQ(parsed.objects.size(), frame.objects.size());
    for (std::size_t i = 0; i < frame.fires.size(); ++i) {
      EXPECT_EQ(parsed.fires[i].bbox.x, round_sig12(frame.fires[i].bbox.x));
      EXPECT_EQ(parsed.fires[i].confidence, round_sig12(frame.fires[i].confidence));
    }
    EXPECT_EQ(parsed.timestamp_ms, frame.timestamp_ms);
  }
}

TEST(Wire, AlertLineRoundTrip) {
  AlertEvent a{12, 1, 3, "bus", 2.5, 0.61, RiskTier::High, true};
  EXPECT_EQ(parse_alert_line(emit_alert_line(a)), a);
}

TEST(Config, EmptyDocumentGivesDefaults) {
  const auto config = parse_config("{}");
  EXPECT_EQ(config, EngineConfig{});
  EXPECT_FALSE(config.kappa.has_value());
  EXPECT_EQ(config.debounce_frames, 5u);
}

TEST(Config, OverridesAndRoundTrip) {
  const auto config = parse_config(R"({"alpha_s":1.5,"tau1":0.2,"tau2":0.4,"tau3":0.9,"kappa":64,)"
                                   R"("vulnerability":{"person":0.95,"forklift":0.5},"default_vulnerability":0.1,)"
                                   R"("aggregation":"bounded_sum","use_worst_case_exposure":true,"delta_d_m":1.5,)"
                                   R"("proximity_metric":"bbox_gap","overlay_style":"horizontal","debounce_frames":2})");
  EXPECT_EQ(config.params.alpha_s, 1.5);
  EXPECT_EQ(config.params.tau3, 0.9);
  EXPECT_EQ(config.kappa, 64.0);
  EXPECT_EQ(config.params.vulnerability.entries.size(), 2u);
  EXPECT_EQ(config.params.vulnerability.entries.at("forklift"), 0.5);
  EXPECT_EQ(config.params.aggregation, Aggregation::BoundedSum);
  EXPECT_TRUE(config.params.use_worst_case_exposure);
  EXPECT_EQ(config.proximity_metric, ProximityMetric::BBoxGap);
  EXPECT_EQ(config.overlay_style, OverlayStyle::Horizontal);
  EXPECT_EQ(config.debounce_frames, 2u);
  EXPECT_EQ(parse_config(config_to_json(config)), config);
}

TEST(Config, Rejections) {
  for (const char* text : {"not json", "[]", R"({"alpha":1})", R"({"tau1":0.6})", R"({"gamma":1.0})",
                           R"({"kappa":0})", R"({"aggregation":"mean"})", R"({"debounce_frames":-1})",
                           R"({"vulnerability":{"person":2}})", R"({"lambda_m":"10"})"}) {
    try {
      parse_config(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig) << text;
      EXPECT_TRUE(e.is_config_error());
    }
  }
}

TEST(ResolveScale, Priority) {
  auto frame = empty_frame();
  EXPECT_EQ(resolve_scale(frame, 40.0, 10.0).kappa, 40.0);
  EXPECT_EQ(resolve_scale(frame, 40.0, 10.0).source, ScaleSource::ConfigDefault);
  EXPECT_EQ(resolve_scale(frame, std::nullopt, 10.0).kappa, 10.0);
  frame.scale_override = CalibrationScale{75.0, ScaleSource::Manual};
  EXPECT_EQ(resolve_scale(frame, 40.0, 10.0).kappa, 75.0);
  frame.scale_override.reset();
  try {
    resolve_scale(frame, std::nullopt, std::nullopt);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingScale);
  }
}

}  // namespace
}  // namespace fireprox
