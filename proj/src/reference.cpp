// Independent transcription of the scoring equations. Deliberately shares
// nothing with risk.cpp or geometry.cpp beyond the value types, so that
// agreement between the two is evidence rather than tautology.

#include "fireprox/reference.hpp"

#include <algorithm>
#include <cmath>

#include "fireprox/error.hpp"

namespace fireprox::reference {
namespace {

double sigma(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double weight_of(const std::string& label, const VulnerabilityTable& table) {
  for (const auto& [name, weight] : table.entries) {
    if (name == label) return weight;
  }
  return table.default_weight;
}

RiskTier tier_of(double r, const RiskParams& p) {
  RiskTier t = RiskTier::Low;
  if (r >= p.tau1) t = RiskTier::Medium;
  if (r >= p.tau2) t = RiskTier::High;
  if (r >= p.tau3) t = RiskTier::Critical;
  return t;
}

}  // namespace

RiskReport reference_assess(const FrameRecord& frame, const CalibrationScale& scale,
                            const RiskParams& params) {
  const double frame_area = double(frame.width_px) * double(frame.height_px);

  RiskReport report;
  report.frame_id = frame.frame_id;
  report.kappa_used = scale.kappa;

  for (std::size_t i = 0; i < frame.fires.size(); ++i) {
    const FireInstance& f = frame.fires[i];
    const double fire_cx = f.bbox.x + f.bbox.w / 2.0;
    const double fire_cy = f.bbox.y + f.bbox.h / 2.0;
    const double area = f.mask_area_px ? *f.mask_area_px : f.bbox.w * f.bbox.h;
    if (area > frame_area) throw Error(ErrorKind::AreaExceedsFrame, "fire area exceeds frame area");
    const double h = sigma(params.alpha_s * f.confidence + params.alpha_a * (area / frame_area));

    for (std::size_t j = 0; j < frame.objects.size(); ++j) {
      const ContextObject& o = frame.objects[j];
      const double obj_cx = o.bbox.x + o.bbox.w / 2.0;
      const double obj_cy = o.bbox.y + o.bbox.h / 2.0;
      const double dx = fire_cx - obj_cx;
      const double dy = fire_cy - obj_cy;
      const double d_px = std::sqrt(dx * dx + dy * dy);
      const double d_m = d_px / scale.kappa;

      double effective_d = d_m;
      if (params.use_worst_case_exposure) {
        effective_d = d_m - params.delta_d_m;
        if (effective_d < 0.0) effective_d = 0.0;
      }

      PairAssessment p;
      p.fire_index = i;
      p.object_index = j;
      p.distance_px = d_px;
      p.distance_m = d_m;
      p.severity = h;
      p.vulnerability = weight_of(o.class_label, params.vulnerability);
      p.confidence_factor = sigma(params.beta_s * o.confidence);
      p.exposure = std::exp(-effective_d / params.lambda_m);
      p.risk = p.severity * p.vulnerability * p.confidence_factor * p.exposure;
      report.pairs.push_back(p);
    }
  }

  // Object risk: max over fires, zero when there are none.
  const std::size_t n_objects = frame.objects.size();
  report.object_risks.assign(n_objects, 0.0);
  for (const auto& p : report.pairs) {
    if (p.risk > report.object_risks[p.object_index]) report.object_risks[p.object_index] = p.risk;
  }

  double worst = 0.0;
  double product = 1.0;
  for (double r : report.object_risks) {
    if (r > worst) worst = r;
    product *= 1.0 - r;
  }
  report.frame_risk_max = worst;
  report.frame_risk_accumulated = 1.0 - product;
  report.tier = tier_of(
      params.aggregation == Aggregation::BoundedSum ? report.frame_risk_accumulated : worst, params);

  for (const auto& p : report.pairs) {
    if (p.distance_m <= params.d_crit_m && p.risk >= params.rho_crit) {
      AlertEvent a;
      a.frame_id = frame.frame_id;
      a.fire_index = p.fire_index;
      a.object_index = p.object_index;
      a.class_label = frame.objects[p.object_index].class_label;
      a.distance_m = p.distance_m;
      a.risk = p.risk;
      a.tier = tier_of(p.risk, params);
      report.alerts.push_back(a);
    }
  }
  // Insertion sort: descending risk, then ascending (fire, object).
  auto& alerts = report.alerts;
  for (std::size_t k = 1; k < alerts.size(); ++k) {
    for (std::size_t m = k; m > 0; --m) {
      const AlertEvent& prev = alerts[m - 1];
      const AlertEvent& cur = alerts[m];
      const bool before = cur.risk > prev.risk ||
                          (cur.risk == prev.risk &&
                           (cur.fire_index < prev.fire_index ||
                            (cur.fire_index == prev.fire_index && cur.object_index < prev.object_index)));
      if (!before) break;
      std::swap(alerts[m - 1], alerts[m]);
    }
  }
  return report;
}

}  // namespace fireprox::reference
