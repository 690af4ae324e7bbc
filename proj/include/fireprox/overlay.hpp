#pragma once

#include <string>

#include "fireprox/config.hpp"
#include "fireprox/types.hpp"

namespace fireprox {

/// SVG annotation for one frame: red fire boxes, green object boxes, a red
/// proximity line per fire/object pair (heavier stroke for alerting pairs) and
/// a "%.2f m" label per line. Throws MismatchedReport if the ids differ.
std::string render_overlay(const FrameRecord& frame, const RiskReport& report,
                           const EngineConfig& config);

}  // namespace fireprox
