#pragma once

// Line-delimited JSON wire format.
//
// Frame line:
//   {"frame_id": uint, "timestamp_ms": uint?, "width_px": uint, "height_px": uint,
//    "scale_px_per_m": number?,
//    "fires":   [{"bbox": [x,y,w,h], "confidence": number, "mask_area_px": number?}],
//    "objects": [{"bbox": [x,y,w,h], "class": string, "confidence": number}]}
//
// Report line:
//   {"frame_id", "kappa_used", "pairs", "object_risks", "frame_risk_max",
//    "frame_risk_accumulated", "tier", "smoothed_risk"?, "smoothed_tier"?, "alerts"}
//
// Reals are written with at most 12 significant digits in the shortest form
// that reproduces the 12-digit value.

#include <string>
#include <string_view>

#include "fireprox/types.hpp"

namespace fireprox {

/// Rounds to 12 significant digits.
double round_sig12(double value);

/// Parses and validates one frame line. Throws MalformedJson (with byte
/// offset), SchemaViolation (naming the field) or a validation error.
FrameRecord parse_frame_line(std::string_view line);
std::string emit_frame_line(const FrameRecord& frame);

std::string emit_report_line(const RiskReport& report);
RiskReport parse_report_line(std::string_view line);

std::string emit_alert_line(const AlertEvent& alert);
AlertEvent parse_alert_line(std::string_view line);

}  // namespace fireprox
