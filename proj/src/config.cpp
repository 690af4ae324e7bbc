#include "fireprox/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fireprox/error.hpp"

namespace fireprox {
namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::InvalidConfig, message); }

double number(const json& doc, const char* key, double fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number()) invalid(std::string(key) + " must be a number");
  return it->get<double>();
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "alpha_s", "alpha_a", "beta_s", "lambda_m", "tau1", "tau2", "tau3",
    "d_crit_m", "rho_crit", "gamma", "delta_d_m", "vulnerability", "default_vulnerability",
    "aggregation", "use_worst_case_exposure", "kappa", "proximity_metric", "overlay_style",
    "debounce_frames"};

}  // namespace

EngineConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) invalid("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKnownKeys.contains(key)) invalid("unknown config key \"" + key + "\"");
  }

  EngineConfig config;
  auto& p = config.params;
  p.alpha_s = number(doc, "alpha_s", p.alpha_s);
  p.alpha_a = number(doc, "alpha_a", p.alpha_a);
  p.beta_s = number(doc, "beta_s", p.beta_s);
  p.lambda_m = number(doc, "lambda_m", p.lambda_m);
  p.tau1 = number(doc, "tau1", p.tau1);
  p.tau2 = number(doc, "tau2", p.tau2);
  p.tau3 = number(doc, "tau3", p.tau3);
  p.d_crit_m = number(doc, "d_crit_m", p.d_crit_m);
  p.rho_crit = number(doc, "rho_crit", p.rho_crit);
  p.gamma = number(doc, "gamma", p.gamma);
  p.delta_d_m = number(doc, "delta_d_m", p.delta_d_m);
  p.vulnerability.default_weight = number(doc, "default_vulnerability", p.vulnerability.default_weight);

  if (const auto it = doc.find("vulnerability"); it != doc.end()) {
    if (!it->is_object()) invalid("vulnerability must be an object of class -> weight");
    p.vulnerability.entries.clear();
    for (const auto& [label, weight] : it->items()) {
      if (!weight.is_number()) invalid("vulnerability[\"" + label + "\"] must be a number");
      p.vulnerability.entries[label] = weight.get<double>();
    }
  }
  if (const auto it = doc.find("aggregation"); it != doc.end()) {
    const auto parsed = it->is_string() ? parse_aggregation(it->get<std::string>()) : std::nullopt;
    if (!parsed) invalid("aggregation must be \"worst_case_max\" or \"bounded_sum\"");
    p.aggregation = *parsed;
  }
  if (const auto it = doc.find("use_worst_case_exposure"); it != doc.end()) {
    if (!it->is_boolean()) invalid("use_worst_case_exposure must be a boolean");
    p.use_worst_case_exposure = it->get<bool>();
  }
  if (const auto it = doc.find("kappa"); it != doc.end() && !it->is_null()) {
    if (!it->is_number()) invalid("kappa must be a number");
    const double kappa = it->get<double>();
    if (!(std::isfinite(kappa) && kappa > 0.0)) invalid("kappa must be finite and > 0");
    config.kappa = kappa;
  }
  if (const auto it = doc.find("proximity_metric"); it != doc.end()) {
    const std::string name = it->is_string() ? it->get<std::string>() : "";
    if (name == "centroid") {
      config.proximity_metric = ProximityMetric::Centroid;
    } else if (name == "bbox_gap") {
      config.proximity_metric = ProximityMetric::BBoxGap;
    } else {
      invalid("proximity_metric must be \"centroid\" or \"bbox_gap\"");
    }
  }
  if (const auto it = doc.find("overlay_style"); it != doc.end()) {
    const std::string name = it->is_string() ? it->get<std::string>() : "";
    if (name == "direct") {
      config.overlay_style = OverlayStyle::Direct;
    } else if (name == "horizontal") {
      config.overlay_style = OverlayStyle::Horizontal;
    } else {
      invalid("overlay_style must be \"direct\" or \"horizontal\"");
    }
  }
  if (const auto it = doc.find("debounce_frames"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0 ||
        it->get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
      invalid("debounce_frames must be a non-negative integer");
    }
    config.debounce_frames = static_cast<std::uint32_t>(it->get<std::int64_t>());
  }

  p.validate();
  return config;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const EngineConfig& config) {
  const auto& p = config.params;
  nlohmann::ordered_json out;
  out["alpha_s"] = p.alpha_s;
  out["alpha_a"] = p.alpha_a;
  out["beta_s"] = p.beta_s;
  out["lambda_m"] = p.lambda_m;
  out["tau1"] = p.tau1;
  out["tau2"] = p.tau2;
  out["tau3"] = p.tau3;
  out["d_crit_m"] = p.d_crit_m;
  out["rho_crit"] = p.rho_crit;
  out["gamma"] = p.gamma;
  out["delta_d_m"] = p.delta_d_m;
  out["vulnerability"] = nlohmann::ordered_json::object();
  for (const auto& [label, weight] : p.vulnerability.entries) out["vulnerability"][label] = weight;
  out["default_vulnerability"] = p.vulnerability.default_weight;
  out["aggregation"] = to_string(p.aggregation);
  out["use_worst_case_exposure"] = p.use_worst_case_exposure;
  if (config.kappa) out["kappa"] = *config.kappa;
  out["proximity_metric"] = config.proximity_metric == ProximityMetric::BBoxGap ? "bbox_gap" : "centroid";
  out["overlay_style"] = config.overlay_style == OverlayStyle::Horizontal ? "horizontal" : "direct";
  out["debounce_frames"] = config.debounce_frames;
  return out.dump(2);
}

CalibrationScale resolve_scale(const FrameRecord& frame, std::optional<double> config_kappa,
                               std::optional<double> cli_kappa) {
  if (frame.scale_override) return *frame.scale_override;
  if (config_kappa) return {*config_kappa, ScaleSource::ConfigDefault};
  if (cli_kappa) return {*cli_kappa, ScaleSource::ReferenceObject};
  throw Error(ErrorKind::MissingScale,
              "frame " + std::to_string(frame.frame_id) +
                  " has no scale_px_per_m and neither the config nor --kappa supplies one");
}

}  // namespace fireprox
