#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fireprox/geometry.hpp"
#include "fireprox/types.hpp"

namespace fireprox {

struct StreamState {
  double smoothed_risk = 0.0;
  std::optional<std::uint64_t> last_frame_id;
  std::uint64_t frames_seen = 0;
  /// (fire_index, object_index) -> frames of suppression left.
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> debounce_remaining;

  friend bool operator==(const StreamState&, const StreamState&) = default;
};

/// One step of exponential smoothing. The first observed frame initializes the
/// smoothed value to its own risk. Throws RiskOutOfRange if frame_risk is not in [0,1].
StreamState smooth_update(const StreamState& state, double frame_risk, const RiskParams& params);

struct StreamStep {
  RiskReport report;  // carries smoothed_risk / smoothed_tier
  double smoothed_risk = 0.0;
  RiskTier smoothed_tier = RiskTier::Low;
  std::vector<AlertEvent> stream_alerts;
};

/// Sequential assessor for one stream. Single owner; not shareable.
class StreamAssessor {
 public:
  explicit StreamAssessor(RiskParams params, std::uint32_t debounce_frames = 5,
                          ProximityMetric metric = ProximityMetric::Centroid);

  /// Throws OutOfOrderFrame unless frame_id strictly exceeds the previous one.
  StreamStep push(const FrameRecord& frame, const CalibrationScale& scale);

  const StreamState& state() const { return state_; }
  const RiskParams& params() const { return params_; }

 private:
  RiskParams params_;
  std::uint32_t debounce_frames_;
  ProximityMetric metric_;
  StreamState state_;
};

/// Convenience over StreamAssessor. Each frame's scale_override wins over `scale`.
std::vector<StreamStep> stream_assess(std::span<const FrameRecord> frames,
                                      const CalibrationScale& scale, const RiskParams& params,
                                      std::uint32_t debounce_frames = 5,
                                      ProximityMetric metric = ProximityMetric::Centroid);

}  // namespace fireprox
