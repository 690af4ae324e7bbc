#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fireprox/geometry.hpp"
#include "fireprox/types.hpp"

namespace fireprox {

enum class OverlayStyle { Direct, Horizontal };

struct EngineConfig {
  RiskParams params;
  std::optional<double> kappa;
  ProximityMetric proximity_metric = ProximityMetric::Centroid;
  OverlayStyle overlay_style = OverlayStyle::Direct;
  std::uint32_t debounce_frames = 5;

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

/// Parses a JSON config document. Absent keys keep their defaults; unknown
/// keys and out-of-range values throw Error(InvalidConfig).
///
/// Keys: alpha_s, alpha_a, beta_s, lambda_m, tau1, tau2, tau3, d_crit_m,
/// rho_crit, gamma, delta_d_m, vulnerability (object, replaces the default
/// table), default_vulnerability, aggregation ("worst_case_max" |
/// "bounded_sum"), use_worst_case_exposure, kappa, proximity_metric
/// ("centroid" | "bbox_gap"), overlay_style ("direct" | "horizontal"),
/// debounce_frames.
EngineConfig parse_config(std::string_view json_text);
EngineConfig load_config(const std::filesystem::path& path);

/// Serializes every key, so parse_config(config_to_json(c)) == c.
std::string config_to_json(const EngineConfig& config);

/// Picks the scale for a frame: the frame's own override, then the config
/// kappa, then a command-line kappa. Throws MissingScale when none is set.
CalibrationScale resolve_scale(const FrameRecord& frame, std::optional<double> config_kappa,
                               std::optional<double> cli_kappa = std::nullopt);

}  // namespace fireprox
