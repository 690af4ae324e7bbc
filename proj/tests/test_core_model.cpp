#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fireprox/error.hpp"
#include "fireprox/validate.hpp"
#include "test_support.hpp"

namespace fireprox {
namespace {

using testing::empty_frame;
using testing::fire_at;
using testing::object_at;

FrameRecord sample_frame() {
  auto f = empty_frame(7);
  f.timestamp_ms = 1234;
  f.fires.push_back(fire_at(10, 20, 30, 40, 0.9, 500.0));
  f.objects.push_back(object_at(300, 300, 50, 120, "person", 0.8));
  return f;
}

ErrorKind kind_of(const FrameRecord& f) {
  try {
    validate_frame(f);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected validation failure";
  return ErrorKind::Io;
}

TEST(ValidateFrame, WellFormedRecordIsReturnedUnchanged) {
  const auto f = sample_frame();
  EXPECT_EQ(validate_frame(f), f);
}

TEST(ValidateFrame, Idempotent) {
  const auto f = sample_frame();
  const FrameRecord once = validate_frame(f);
  EXPECT_EQ(validate_frame(once), once);
}

TEST(ValidateFrame, ConfidenceAboveOne) {
  auto f = sample_frame();
  f.fires[0].confidence = 1.3;
  EXPECT_EQ(kind_of(f), ErrorKind::ConfidenceOutOfRange);
  try {
    validate_frame(f);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("fires[0].confidence"), std::string::npos) << e.what();
  }
}

TEST(ValidateFrame, NegativeWidth) {
  auto f = sample_frame();
  f.objects[0].bbox.w = -5;
  EXPECT_EQ(kind_of(f), ErrorKind::NegativeDimension);
  try {
    validate_frame(f);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("objects[0].bbox.w"), std::string::npos) << e.what();
  }
}

TEST(ValidateFrame, NonFiniteCoordinate) {
  auto f = sample_frame();
  f.fires[0].bbox.x = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of(f), ErrorKind::NonFiniteField);
  f = sample_frame();
  f.objects[0].confidence = std::numeric_limits<double>::infinity();
  EXPECT_EQ(kind_of(f), ErrorKind::NonFiniteField);
}

TEST(ValidateFrame, ZeroArea) {
  auto f = sample_frame();
  f.height_px = 0;
  EXPECT_EQ(kind_of(f), ErrorKind::ZeroFrameArea);
}

TEST(ValidateFrame, MaskLargerThanFrame) {
  auto f = sample_frame();
  f.fires[0].mask_area_px = 640.0 * 640.0 + 1.0;
  EXPECT_EQ(kind_of(f), ErrorKind::AreaExceedsFrame);
  f.fires[0].mask_area_px = -1.0;
  EXPECT_EQ(kind_of(f), ErrorKind::NegativeDimension);
}

TEST(ValidateFrame, BadScaleOverride) {
  auto f = sample_frame();
  f.scale_override = CalibrationScale{0.0, ScaleSource::Manual};
  EXPECT_EQ(kind_of(f), ErrorKind::NonPositiveReference);
}

TEST(RiskParams, DefaultsAreValid) {
  const RiskParams p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_DOUBLE_EQ(p.alpha_s, 2.0);
  EXPECT_DOUBLE_EQ(p.alpha_a, 4.0);
  EXPECT_DOUBLE_EQ(p.beta_s, 2.0);
  EXPECT_DOUBLE_EQ(p.lambda_m, 10.0);
  EXPECT_DOUBLE_EQ(p.d_crit_m, 5.0);
  EXPECT_DOUBLE_EQ(p.rho_crit, 0.5);
  EXPECT_DOUBLE_EQ(p.gamma, 0.6);
  EXPECT_DOUBLE_EQ(p.delta_d_m, 0.0);
  EXPECT_EQ(p.vulnerability.entries.at("person"), 1.0);
  EXPECT_EQ(p.vulnerability.entries.at("bus"), 0.8);
  EXPECT_EQ(p.vulnerability.default_weight, 0.3);
}

TEST(RiskParams, RejectsUnorderedThresholds) {
  RiskParams p;
  p.tau2 = 0.2;
  EXPECT_THROW(p.validate(), Error);
  p = RiskParams{};
  p.gamma = 1.0;
  EXPECT_THROW(p.validate(), Error);
  p = RiskParams{};
  p.rho_crit = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = RiskParams{};
  p.vulnerability.entries["crane"] = 1.5;
  EXPECT_THROW(p.validate(), Error);
}

TEST(RiskTier, OrderingAndNames) {
  EXPECT_LT(RiskTier::Low, RiskTier::Medium);
  EXPECT_LT(RiskTier::High, RiskTier::Critical);
  for (auto t : {RiskTier::Low, RiskTier::Medium, RiskTier::High, RiskTier::Critical}) {
    EXPECT_EQ(parse_tier(to_string(t)), t);
  }
  EXPECT_FALSE(parse_tier("low").has_value());
}

}  // namespace
}  // namespace fireprox
