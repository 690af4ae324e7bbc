#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fireprox/error.hpp"
#include "fireprox/risk.hpp"
#include "fireprox/temporal.hpp"
#include "test_support.hpp"

namespace fireprox {
namespace {

using testing::empty_frame;
using testing::fire_at;
using testing::object_at;

StreamState primed(double smoothed) {
  StreamState s;
  s.smoothed_risk = smoothed;
  s.frames_seen = 1;
  return s;
}

TEST(SmoothUpdate, Examples) {
  RiskParams p;
  p.gamma = 0.5;
  EXPECT_EQ(smooth_update(primed(0.0), 1.0, p).smoothed_risk, 0.5);
  EXPECT_EQ(smooth_update(primed(0.37), 0.37, p).smoothed_risk, 0.37);
  p.gamma = 0.9;
  EXPECT_NEAR(smooth_update(primed(1.0), 0.0, p).smoothed_risk, 0.9, 1e-15);
}

TEST(SmoothUpdate, FirstFrameInitializes) {
  const RiskParams p;
  const auto s = smooth_update(StreamState{}, 0.83, p);
  EXPECT_EQ(s.smoothed_risk, 0.83);
  EXPECT_EQ(s.frames_seen, 1u);
}

TEST(SmoothUpdate, RejectsOutOfRange) {
  const RiskParams p;
  for (double bad : {-0.01, 1.01, double(NAN)}) {
    try {
      smooth_update(primed(0.2), bad, p);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::RiskOutOfRange);
    }
  }
}

TEST(SmoothUpdate, StaysWithinHistoryBounds) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    RiskParams p;
    p.gamma = 0.01 + 0.98 * unit(rng);
    StreamState s;
    double lo = 1.0;
    double hi = 0.0;
    for (int t = 0; t < 50; ++t) {
      const double r = unit(rng);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      s = smooth_update(s, r, p);
      EXPECT_GE(s.smoothed_risk, lo - 1e-15);
      EXPECT_LE(s.smoothed_risk, hi + 1e-15);
    }
  }
}

// A fire whose single "person" neighbour sits `distance_px` away at kappa 50.
FrameRecord hazard_frame(std::uint64_t id, double distance_px) {
  auto frame = empty_frame(id);
  frame.fires.push_back(fire_at(100, 100, 200, 200, 1.0, 640.0 * 640.0 * 0.5));
  frame.objects.push_back(object_at(200 + distance_px - 10, 190, 20, 20, "person", 1.0));
  return frame;
}

const CalibrationScale kScale50{50.0, ScaleSource::Manual};

TEST(StreamAssess, RejectsOutOfOrderFrames) {
  StreamAssessor assessor(RiskParams{});
  assessor.push(empty_frame(3), kScale50);
  try {
    assessor.push(empty_frame(3), kScale50);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfOrderFrame);
  }
  EXPECT_THROW(assessor.push(empty_frame(1), kScale50), Error);
  EXPECT_NO_THROW(assessor.push(empty_frame(10), kScale50));  // gaps are fine
  EXPECT_EQ(assessor.state().frames_seen, 2u);
}

TEST(StreamAssess, ZeroRiskStreamStaysZero) {
  std::vector<FrameRecord> frames;
  for (std::uint64_t k = 0; k < 20; ++k) frames.push_back(empty_frame(k));
  for (const auto& step : stream_assess(frames, kScale50, RiskParams{})) {
    EXPECT_EQ(step.smoothed_risk, 0.0);
    EXPECT_TRUE(step.stream_alerts.empty());
    EXPECT_EQ(step.report.smoothed_risk, 0.0);
    EXPECT_EQ(step.report.smoothed_tier, RiskTier::Low);
  }
}

TEST(StreamAssess, ThreeFrameSequenceMatchesUnrolledRecursion) {
  RiskParams p;
  std::vector<FrameRecord> frames{hazard_frame(0, 600), hazard_frame(1, 50), hazard_frame(2, 250)};
  const auto steps = stream_assess(frames, kScale50, p);
  const double r0 = steps[0].report.frame_risk_max;
  const double r1 = steps[1].report.frame_risk_max;
  const double r2 = steps[2].report.frame_risk_max;
  const double g = p.gamma;
  EXPECT_EQ(steps[0].smoothed_risk, r0);
  EXPECT_NEAR(steps[1].smoothed_risk, g * r0 + (1 - g) * r1, 1e-15);
  EXPECT_NEAR(steps[2].smoothed_risk, g * g * r0 + g * (1 - g) * r1 + (1 - g) * r2, 1e-15);
}

TEST(StreamAssess, UsesConfiguredAggregationForSmoothing) {
  RiskParams p;
  p.aggregation = Aggregation::BoundedSum;
  auto frame = hazard_frame(0, 100);
  frame.objects.push_back(object_at(400, 400, 20, 20, "car", 0.9));
  const auto steps = stream_assess(std::vector<FrameRecord>{frame}, kScale50, p);
  EXPECT_EQ(steps[0].smoothed_risk, steps[0].report.frame_risk_accumulated);
}

TEST(StreamAssess, ScaleOverrideWins) {
  auto frame = hazard_frame(0, 250);
  frame.scale_override = CalibrationScale{25.0, ScaleSource::Manual};
  const auto steps = stream_assess(std::vector<FrameRecord>{frame}, kScale50, RiskParams{});
  EXPECT_EQ(steps[0].report.kappa_used, 25.0);
  EXPECT_EQ(steps[0].report.pairs[0].distance_m, 10.0);
}

TEST(StreamAlerts, RequireHighSmoothedTierAndPairPredicate) {
  RiskParams p;
  // Close pair, high risk: the instantaneous alert exists from frame 0.
  std::vector<FrameRecord> frames;
  for (std::uint64_t k = 0; k < 3; ++k) frames.push_back(hazard_frame(k, 50));
  const auto steps = stream_assess(frames, kScale50, p, /*debounce_frames=*/0);
  ASSERT_FALSE(steps[0].report.alerts.empty());
  ASSERT_GE(steps[0].smoothed_tier, RiskTier::High);
  for (const auto& step : steps) {
    ASSERT_EQ(step.stream_alerts.size(), 1u);
    EXPECT_TRUE(step.stream_alerts[0].smoothed);
    EXPECT_EQ(step.stream_alerts[0].tier, step.smoothed_tier);
    EXPECT_LE(step.stream_alerts[0].distance_m, p.d_crit_m);
    EXPECT_GE(step.stream_alerts[0].risk, p.rho_crit);
  }
}

TEST(StreamAlerts, SmoothedTierGatesAlerts) {
  RiskParams p;
  // Quiet history drags the smoothed value below High while the spike frame
  // itself satisfies the pair predicate.
  std::vector<FrameRecord> frames;
  for (std::uint64_t k = 0; k < 5; ++k) frames.push_back(empty_frame(k));
  frames.push_back(hazard_frame(5, 50));
  const auto steps = stream_assess(frames, kScale50, p);
  EXPECT_FALSE(steps[5].report.alerts.empty());
  EXPECT_LT(steps[5].smoothed_tier, RiskTier::High);
  EXPECT_TRUE(steps[5].stream_alerts.empty());
}

TEST(StreamAlerts, DebounceSuppressesRepeatsForNFrames) {
  RiskParams p;
  std::vector<FrameRecord> frames;
  for (std::uint64_t k = 0; k < 13; ++k) frames.push_back(hazard_frame(k, 50));
  const auto steps = stream_assess(frames, kScale50, p, /*debounce_frames=*/5);
  std::vector<std::size_t> fired;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    if (!steps[t].stream_alerts.empty()) fired.push_back(t);
  }
  EXPECT_EQ(fired, (std::vector<std::size_t>{0, 6, 12}));
}

TEST(StreamAssess, ReplayIsBitIdentical) {
  std::vector<FrameRecord> frames;
  for (std::uint64_t k = 0; k < 30; ++k) frames.push_back(hazard_frame(k, 20.0 * k));
  const auto a = stream_assess(frames, kScale50, RiskParams{});
  const auto b = stream_assess(frames, kScale50, RiskParams{});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].report, b[k].report);
    EXPECT_EQ(a[k].stream_alerts, b[k].stream_alerts);
  }
}

}  // namespace
}  // namespace fireprox
