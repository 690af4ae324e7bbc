#include "fireprox/types.hpp"

#include <cmath>

#include "fireprox/error.hpp"

namespace fireprox {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFiniteField: return "NonFiniteField";
    case ErrorKind::ConfidenceOutOfRange: return "ConfidenceOutOfRange";
    case ErrorKind::NegativeDimension: return "NegativeDimension";
    case ErrorKind::ZeroFrameArea: return "ZeroFrameArea";
    case ErrorKind::AreaExceedsFrame: return "AreaExceedsFrame";
    case ErrorKind::NonPositiveReference: return "NonPositiveReference";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::RiskOutOfRange: return "RiskOutOfRange";
    case ErrorKind::OutOfOrderFrame: return "OutOfOrderFrame";
    case ErrorKind::MalformedJson: return "MalformedJson";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::MismatchedReport: return "MismatchedReport";
    case ErrorKind::SpecLengthMismatch: return "SpecLengthMismatch";
    case ErrorKind::MissingScale: return "MissingScale";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

VulnerabilityTable VulnerabilityTable::defaults() {
  VulnerabilityTable table;
  table.entries = {{"person", 1.0}, {"bicycle", 0.7}, {"car", 0.6}, {"truck", 0.7}, {"bus", 0.8}};
  table.default_weight = 0.3;
  return table;
}

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw Error(ErrorKind::InvalidConfig, std::string(field) + " must be " + rule);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void RiskParams::validate() const {
  require(finite(alpha_s) && alpha_s >= 0.0, "alpha_s", ">= 0");
  require(finite(alpha_a) && alpha_a >= 0.0, "alpha_a", ">= 0");
  require(finite(beta_s) && beta_s >= 0.0, "beta_s", ">= 0");
  require(finite(lambda_m) && lambda_m > 0.0, "lambda_m", "> 0");
  require(finite(tau1) && finite(tau2) && finite(tau3) && 0.0 < tau1 && tau1 < tau2 &&
              tau2 < tau3 && tau3 < 1.0,
          "tau1/tau2/tau3", "ordered as 0 < tau1 < tau2 < tau3 < 1");
  require(finite(d_crit_m) && d_crit_m > 0.0, "d_crit_m", "> 0");
  require(finite(rho_crit) && rho_crit > 0.0 && rho_crit <= 1.0, "rho_crit", "in (0, 1]");
  require(finite(gamma) && gamma > 0.0 && gamma < 1.0, "gamma", "in (0, 1)");
  require(finite(delta_d_m) && delta_d_m >= 0.0, "delta_d_m", ">= 0");
  require(finite(vulnerability.default_weight) && vulnerability.default_weight >= 0.0 &&
              vulnerability.default_weight <= 1.0,
          "default_vulnerability", "in [0, 1]");
  for (const auto& [label, weight] : vulnerability.entries) {
    if (label.empty()) throw Error(ErrorKind::InvalidConfig, "vulnerability labels must be nonempty");
    if (!(finite(weight) && weight >= 0.0 && weight <= 1.0)) {
      throw Error(ErrorKind::InvalidConfig, "vulnerability[\"" + label + "\"] must be in [0, 1]");
    }
  }
}

std::string_view to_string(RiskTier tier) {
  switch (tier) {
    case RiskTier::Low: return "Low";
    case RiskTier::Medium: return "Medium";
    case RiskTier::High: return "High";
    case RiskTier::Critical: return "Critical";
  }
  return "Low";
}

std::optional<RiskTier> parse_tier(std::string_view name) {
  if (name == "Low") return RiskTier::Low;
  if (name == "Medium") return RiskTier::Medium;
  if (name == "High") return RiskTier::High;
  if (name == "Critical") return RiskTier::Critical;
  return std::nullopt;
}

std::string_view to_string(Aggregation aggregation) {
  return aggregation == Aggregation::BoundedSum ? "bounded_sum" : "worst_case_max";
}

std::optional<Aggregation> parse_aggregation(std::string_view name) {
  if (name == "worst_case_max") return Aggregation::WorstCaseMax;
  if (name == "bounded_sum") return Aggregation::BoundedSum;
  return std::nullopt;
}

}  // namespace fireprox
