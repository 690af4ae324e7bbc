#pragma once

// Proximity-aware fire hazard scoring.
//
//   severity      H  = logistic(alpha_s * s_fire + alpha_a * area / frame_area)
//   confidence    C  = logistic(beta_s * s_obj)
//   exposure      E  = exp(-d / lambda)   (or exp(-max(d - delta_d, 0) / lambda))
//   pair risk     R  = H * V(class) * C * E
//   object risk      = max over fires
//   frame risk       = max over objects, or 1 - prod(1 - object risk)

#include <span>
#include <string_view>
#include <vector>

#include "fireprox/geometry.hpp"
#include "fireprox/types.hpp"

namespace fireprox {

double logistic(double x);

double severity(const FireInstance& fire, const FrameRecord& frame, const RiskParams& params);

double confidence_factor(const ContextObject& object, const RiskParams& params);

double vulnerability(std::string_view class_label, const VulnerabilityTable& table);

double exposure(double distance_m, const RiskParams& params);

double exposure_worst_case(double distance_m, const RiskParams& params);

/// Throws IndexOutOfRange for bad indices.
PairAssessment pairwise_risk(std::size_t fire_index, std::size_t object_index,
                             const FrameRecord& frame, const CalibrationScale& scale,
                             const RiskParams& params,
                             ProximityMetric metric = ProximityMetric::Centroid);

/// Max of `risks`; 0 for an empty span.
double object_risk(std::span<const double> risks);

double frame_risk_max(std::span<const double> object_risks);
double frame_risk_bounded_sum(std::span<const double> object_risks);
double frame_risk(std::span<const double> object_risks, const RiskParams& params);

/// Lower bounds inclusive: [0,t1) Low, [t1,t2) Medium, [t2,t3) High, [t3,1] Critical.
RiskTier tier(double risk, const RiskParams& params);

/// Pairs with distance_m <= d_crit and risk >= rho_crit, sorted by descending
/// risk then (fire_index, object_index).
std::vector<AlertEvent> evaluate_alerts(std::span<const PairAssessment> pairs,
                                        const FrameRecord& frame, const RiskParams& params);

RiskReport assess_frame(const FrameRecord& frame, const CalibrationScale& scale,
                        const RiskParams& params,
                        ProximityMetric metric = ProximityMetric::Centroid);

}  // namespace fireprox
