#pragma once

// Value types shared by every stage of the engine: detections in, risk out.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fireprox {

/// Axis-aligned box in pixels, top-left origin.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  friend bool operator==(const BBox&, const BBox&) = default;
};

struct FireInstance {
  BBox bbox;
  double confidence = 0.0;
  /// Segmentation mask pixel count; the bbox area stands in when absent.
  std::optional<double> mask_area_px;

  friend bool operator==(const FireInstance&, const FireInstance&) = default;
};

struct ContextObject {
  BBox bbox;
  std::string class_label;
  double confidence = 0.0;

  friend bool operator==(const ContextObject&, const ContextObject&) = default;
};

enum class ScaleSource { ReferenceObject, Manual, ConfigDefault };

/// Pixels per meter.
struct CalibrationScale {
  double kappa = 1.0;
  ScaleSource source = ScaleSource::Manual;

  friend bool operator==(const CalibrationScale&, const CalibrationScale&) = default;
};

struct FrameRecord {
  std::uint64_t frame_id = 0;
  std::optional<std::uint64_t> timestamp_ms;
  std::uint32_t width_px = 0;
  std::uint32_t height_px = 0;
  std::vector<FireInstance> fires;
  std::vector<ContextObject> objects;
  std::optional<CalibrationScale> scale_override;

  double area_px() const { return static_cast<double>(width_px) * static_cast<double>(height_px); }
  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

/// Class-label to consequence weight. Lookup is case-sensitive.
struct VulnerabilityTable {
  std::map<std::string, double, std::less<>> entries;
  double default_weight = 0.3;

  static VulnerabilityTable defaults();
  friend bool operator==(const VulnerabilityTable&, const VulnerabilityTable&) = default;
};

enum class Aggregation { WorstCaseMax, BoundedSum };

/// Every tunable of the risk model. Member initializers are the engine defaults.
struct RiskParams {
  double alpha_s = 2.0;   // fire confidence weight in severity
  double alpha_a = 4.0;   // normalized fire area weight in severity
  double beta_s = 2.0;    // object confidence weight
  double lambda_m = 10.0; // exposure decay length
  double tau1 = 0.25;
  double tau2 = 0.50;
  double tau3 = 0.75;
  double d_crit_m = 5.0;
  double rho_crit = 0.5;
  double gamma = 0.6;
  double delta_d_m = 0.0;
  VulnerabilityTable vulnerability = VulnerabilityTable::defaults();
  Aggregation aggregation = Aggregation::WorstCaseMax;
  bool use_worst_case_exposure = false;

  /// Throws Error(InvalidConfig) naming the first field out of range.
  void validate() const;
  friend bool operator==(const RiskParams&, const RiskParams&) = default;
};

enum class RiskTier { Low = 0, Medium = 1, High = 2, Critical = 3 };

std::string_view to_string(RiskTier tier);
std::optional<RiskTier> parse_tier(std::string_view name);
std::string_view to_string(Aggregation aggregation);
std::optional<Aggregation> parse_aggregation(std::string_view name);

struct PairAssessment {
  std::size_t fire_index = 0;
  std::size_t object_index = 0;
  double distance_px = 0.0;
  double distance_m = 0.0;
  double severity = 0.0;
  double vulnerability = 0.0;
  double confidence_factor = 0.0;
  double exposure = 0.0;
  double risk = 0.0;

  friend bool operator==(const PairAssessment&, const PairAssessment&) = default;
};

struct AlertEvent {
  std::uint64_t frame_id = 0;
  std::size_t fire_index = 0;
  std::size_t object_index = 0;
  std::string class_label;
  double distance_m = 0.0;
  double risk = 0.0;
  RiskTier tier = RiskTier::Low;
  bool smoothed = false;

  friend bool operator==(const AlertEvent&, const AlertEvent&) = default;
};

struct RiskReport {
  std::uint64_t frame_id = 0;
  double kappa_used = 1.0;
  std::vector<PairAssessment> pairs;  // fire-major: pairs[i * N_O + j]
  std::vector<double> object_risks;
  double frame_risk_max = 0.0;
  double frame_risk_accumulated = 0.0;
  RiskTier tier = RiskTier::Low;
  std::vector<AlertEvent> alerts;
  // Filled in only when the report went through temporal smoothing.
  std::optional<double> smoothed_risk;
  std::optional<RiskTier> smoothed_tier;

  friend bool operator==(const RiskReport&, const RiskReport&) = default;
};

}  // namespace fireprox
