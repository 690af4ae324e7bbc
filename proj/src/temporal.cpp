#include "fireprox/temporal.hpp"

#include <cmath>
#include <string>

#include "fireprox/error.hpp"
#include "fireprox/risk.hpp"

namespace fireprox {

StreamState smooth_update(const StreamState& state, double frame_risk, const RiskParams& params) {
  if (!(frame_risk >= 0.0 && frame_risk <= 1.0)) {
    throw Error(ErrorKind::RiskOutOfRange, "frame risk " + std::to_string(frame_risk) + " not in [0, 1]");
  }
  StreamState next = state;
  next.smoothed_risk = state.frames_seen == 0
                           ? frame_risk
                           : params.gamma * state.smoothed_risk + (1.0 - params.gamma) * frame_risk;
  next.frames_seen = state.frames_seen + 1;
  return next;
}

StreamAssessor::StreamAssessor(RiskParams params, std::uint32_t debounce_frames, ProximityMetric metric)
    : params_(std::move(params)), debounce_frames_(debounce_frames), metric_(metric) {
  params_.validate();
}

StreamStep StreamAssessor::push(const FrameRecord& frame, const CalibrationScale& scale) {
  if (state_.last_frame_id && frame.frame_id <= *state_.last_frame_id) {
    throw Error(ErrorKind::OutOfOrderFrame, "frame_id " + std::to_string(frame.frame_id) +
                                                " does not follow " + std::to_string(*state_.last_frame_id));
  }

  StreamStep step;
  step.report = assess_frame(frame, scale, params_, metric_);
  const double instantaneous = params_.aggregation == Aggregation::BoundedSum
                                   ? step.report.frame_risk_accumulated
                                   : step.report.frame_risk_max;
  StreamState next = smooth_update(state_, instantaneous, params_);
  next.last_frame_id = frame.frame_id;

  step.smoothed_risk = next.smoothed_risk;
  step.smoothed_tier = tier(next.smoothed_risk, params_);
  step.report.smoothed_risk = step.smoothed_risk;
  step.report.smoothed_tier = step.smoothed_tier;

  // Stream alerts need an elevated smoothed tier plus a pair that meets the
  // instantaneous distance/risk predicate. Suppressed pairs stay quiet for
  // debounce_frames frames after they fire.
  std::vector<std::pair<std::size_t, std::size_t>> issued;
  if (step.smoothed_tier >= RiskTier::High) {
    for (const auto& alert : step.report.alerts) {
      const auto key = std::make_pair(alert.fire_index, alert.object_index);
      if (next.debounce_remaining.contains(key)) continue;
      AlertEvent stream_alert = alert;
      stream_alert.tier = step.smoothed_tier;
      stream_alert.smoothed = true;
      step.stream_alerts.push_back(std::move(stream_alert));
      issued.push_back(key);
    }
  }
  for (auto it = next.debounce_remaining.begin(); it != next.debounce_remaining.end();) {
    if (--it->second == 0) {
      it = next.debounce_remaining.erase(it);
    } else {
      ++it;
    }
  }
  if (debounce_frames_ > 0) {
    for (const auto& key : issued) next.debounce_remaining[key] = debounce_frames_;
  }

  state_ = std::move(next);
  return step;
}

std::vector<StreamStep> stream_assess(std::span<const FrameRecord> frames,
                                      const CalibrationScale& scale, const RiskParams& params,
                                      std::uint32_t debounce_frames, ProximityMetric metric) {
  StreamAssessor assessor(params, debounce_frames, metric);
  std::vector<StreamStep> steps;
  steps.reserve(frames.size());
  for (const auto& frame : frames) {
    steps.push_back(assessor.push(frame, frame.scale_override.value_or(scale)));
  }
  return steps;
}

}  // namespace fireprox
