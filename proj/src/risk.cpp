#include "fireprox/risk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fireprox/error.hpp"

namespace fireprox {
namespace {

// Shared by pairwise_risk and assess_frame so the per-fire and per-object
// factors are computed once per frame.
PairAssessment combine(std::size_t i, std::size_t j, const FrameRecord& frame, double severity_i,
                       double vulnerability_j, double confidence_j, const CalibrationScale& scale,
                       const RiskParams& params, ProximityMetric metric) {
  PairAssessment pair;
  pair.fire_index = i;
  pair.object_index = j;
  pair.distance_px = proximity_px(frame.fires[i].bbox, frame.objects[j].bbox, metric);
  pair.distance_m = to_meters(pair.distance_px, scale);
  pair.severity = severity_i;
  pair.vulnerability = vulnerability_j;
  pair.confidence_factor = confidence_j;
  pair.exposure = params.use_worst_case_exposure ? exposure_worst_case(pair.distance_m, params)
                                                 : exposure(pair.distance_m, params);
  pair.risk = pair.severity * pair.vulnerability * pair.confidence_factor * pair.exposure;
  return pair;
}

}  // namespace

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double severity(const FireInstance& fire, const FrameRecord& frame, const RiskParams& params) {
  const double area = fire.mask_area_px.value_or(fire.bbox.area());
  return logistic(params.alpha_s * fire.confidence + params.alpha_a * normalized_area(area, frame));
}

double confidence_factor(const ContextObject& object, const RiskParams& params) {
  return logistic(params.beta_s * object.confidence);
}

double vulnerability(std::string_view class_label, const VulnerabilityTable& table) {
  const auto it = table.entries.find(class_label);
  return it == table.entries.end() ? table.default_weight : it->second;
}

double exposure(double distance_m, const RiskParams& params) {
  return std::exp(-distance_m / params.lambda_m);
}

double exposure_worst_case(double distance_m, const RiskParams& params) {
  return std::exp(-std::max(distance_m - params.delta_d_m, 0.0) / params.lambda_m);
}

PairAssessment pairwise_risk(std::size_t fire_index, std::size_t object_index,
                             const FrameRecord& frame, const CalibrationScale& scale,
                             const RiskParams& params, ProximityMetric metric) {
  if (fire_index >= frame.fires.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "fire_index " + std::to_string(fire_index) + " >= " +
                                                std::to_string(frame.fires.size()));
  }
  if (object_index >= frame.objects.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "object_index " + std::to_string(object_index) +
                                                " >= " + std::to_string(frame.objects.size()));
  }
  const auto& object = frame.objects[object_index];
  return combine(fire_index, object_index, frame, severity(frame.fires[fire_index], frame, params),
                 vulnerability(object.class_label, params.vulnerability),
                 confidence_factor(object, params), scale, params, metric);
}

double object_risk(std::span<const double> risks) {
  double best = 0.0;
  for (double r : risks) best = std::max(best, r);
  return best;
}

double frame_risk_max(std::span<const double> object_risks) { return object_risk(object_risks); }

double frame_risk_bounded_sum(std::span<const double> object_risks) {
  double survival = 1.0;
  for (double r : object_risks) survival *= (1.0 - r);
  // 1 - (1 - r) can round below r; keep the max <= bounded-sum ordering exact.
  return std::max(1.0 - survival, frame_risk_max(object_risks));
}

double frame_risk(std::span<const double> object_risks, const RiskParams& params) {
  return params.aggregation == Aggregation::BoundedSum ? frame_risk_bounded_sum(object_risks)
                                                       : frame_risk_max(object_risks);
}

RiskTier tier(double risk, const RiskParams& params) {
  if (risk >= params.tau3) return RiskTier::Critical;
  if (risk >= params.tau2) return RiskTier::High;
  if (risk >= params.tau1) return RiskTier::Medium;
  return RiskTier::Low;
}

std::vector<AlertEvent> evaluate_alerts(std::span<const PairAssessment> pairs,
                                        const FrameRecord& frame, const RiskParams& params) {
  std::vector<AlertEvent> alerts;
  for (const auto& pair : pairs) {
    if (pair.distance_m > params.d_crit_m || pair.risk < params.rho_crit) continue;
    AlertEvent alert;
    alert.frame_id = frame.frame_id;
    alert.fire_index = pair.fire_index;
    alert.object_index = pair.object_index;
    alert.class_label =
        pair.object_index < frame.objects.size() ? frame.objects[pair.object_index].class_label : "";
    alert.distance_m = pair.distance_m;
    alert.risk = pair.risk;
    alert.tier = tier(pair.risk, params);
    alerts.push_back(std::move(alert));
  }
  std::sort(alerts.begin(), alerts.end(), [](const AlertEvent& a, const AlertEvent& b) {
    if (a.risk != b.risk) return a.risk > b.risk;
    if (a.fire_index != b.fire_index) return a.fire_index < b.fire_index;
    return a.object_index < b.object_index;
  });
  return alerts;
}

RiskReport assess_frame(const FrameRecord& frame, const CalibrationScale& scale,
                        const RiskParams& params, ProximityMetric metric) {
  const std::size_t n_fires = frame.fires.size();
  const std::size_t n_objects = frame.objects.size();

  std::vector<double> severities(n_fires);
  for (std::size_t i = 0; i < n_fires; ++i) severities[i] = severity(frame.fires[i], frame, params);
  std::vector<double> weights(n_objects);
  std::vector<double> confidences(n_objects);
  for (std::size_t j = 0; j < n_objects; ++j) {
    weights[j] = vulnerability(frame.objects[j].class_label, params.vulnerability);
    confidences[j] = confidence_factor(frame.objects[j], params);
  }

  RiskReport report;
  report.frame_id = frame.frame_id;
  report.kappa_used = scale.kappa;
  report.pairs.reserve(n_fires * n_objects);
  report.object_risks.assign(n_objects, 0.0);
  for (std::size_t i = 0; i < n_fires; ++i) {
    for (std::size_t j = 0; j < n_objects; ++j) {
      auto pair = combine(i, j, frame, severities[i], weights[j], confidences[j], scale, params, metric);
      report.object_risks[j] = std::max(report.object_risks[j], pair.risk);
      report.pairs.push_back(pair);
    }
  }
  report.frame_risk_max = frame_risk_max(report.object_risks);
  report.frame_risk_accumulated = frame_risk_bounded_sum(report.object_risks);
  report.tier = tier(params.aggregation == Aggregation::BoundedSum ? report.frame_risk_accumulated
                                                                   : report.frame_risk_max,
                     params);
  report.alerts = evaluate_alerts(report.pairs, frame, params);
  return report;
}

}  // namespace fireprox
