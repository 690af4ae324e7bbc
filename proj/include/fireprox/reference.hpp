#pragma once

#include "fireprox/types.hpp"

namespace fireprox::reference {

/// Straight transcription of the risk model with naive loops and no code
/// shared with the production scorer. Centroid metric only. Used as a test
/// oracle for assess_frame.
RiskReport reference_assess(const FrameRecord& frame, const CalibrationScale& scale,
                            const RiskParams& params);

}  // namespace fireprox::reference
