#include "fireprox/synth.hpp"

#include <string>

#include <nlohmann/json.hpp>

#include "fireprox/error.hpp"

namespace fireprox::synth {
namespace {

using json = nlohmann::json;

[[noreturn]] void bad_spec(const std::string& message) {
  throw Error(ErrorKind::InvalidConfig, "scenario spec: " + message);
}

double number_at(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) bad_spec(path + "." + key + " must be a number");
  return it->get<double>();
}

BBox box_at(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_array() || it->size() != 4) {
    bad_spec(path + "." + key + " must be [x, y, w, h]");
  }
  for (const auto& v : *it) {
    if (!v.is_number()) bad_spec(path + "." + key + " must hold numbers");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>(), (*it)[3].get<double>()};
}

std::string label_at(const json& obj, const std::string& path) {
  const auto it = obj.find("class");
  if (it == obj.end() || !it->is_string()) bad_spec(path + ".class must be a string");
  return it->get<std::string>();
}

std::optional<double> mask_at(const json& obj) {
  const auto it = obj.find("mask_area_px");
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) bad_spec("mask_area_px must be a number");
  return it->get<double>();
}

// A track is either explicit per-frame entries or a start box with constant velocity.
template <typename Entry, typename FromJson>
std::vector<Entry> track_at(const json& t, const std::string& path, std::size_t frame_count,
                            FromJson&& from_json) {
  if (!t.is_object()) bad_spec(path + " must be an object");
  std::vector<Entry> entries;
  if (const auto frames = t.find("frames"); frames != t.end()) {
    if (!frames->is_array()) bad_spec(path + ".frames must be an array");
    for (std::size_t k = 0; k < frames->size(); ++k) {
      const auto& f = (*frames)[k];
      if (!f.is_object()) bad_spec(path + ".frames[" + std::to_string(k) + "] must be an object");
      entries.push_back(from_json(f, box_at(f, "bbox", path + ".frames[" + std::to_string(k) + "]")));
    }
    return entries;
  }
  double dx = 0.0;
  double dy = 0.0;
  if (const auto v = t.find("velocity"); v != t.end()) {
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
      bad_spec(path + ".velocity must be [dx, dy]");
    }
    dx = (*v)[0].get<double>();
    dy = (*v)[1].get<double>();
  }
  for (const auto& box : linear_path(box_at(t, "start", path), dx, dy, frame_count)) {
    entries.push_back(from_json(t, box));
  }
  return entries;
}

}  // namespace

std::vector<BBox> linear_path(const BBox& start, double dx, double dy, std::size_t frame_count) {
  std::vector<BBox> path;
  path.reserve(frame_count);
  for (std::size_t k = 0; k < frame_count; ++k) {
    const double step = static_cast<double>(k);
    path.push_back({start.x + step * dx, start.y + step * dy, start.w, start.h});
  }
  return path;
}

FrameRecord random_frame(std::mt19937_64& rng, std::uint64_t frame_id, std::uint32_t width_px,
                         std::uint32_t height_px, const RandomFill& fill) {
  static const std::vector<std::string> kLabels = [] {
    std::vector<std::string> labels;
    for (const auto& [label, _] : VulnerabilityTable::defaults().entries) labels.push_back(label);
    labels.emplace_back("bench");  // not in the default table
    return labels;
  }();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double w_max = width_px;
  const double h_max = height_px;
  auto box = [&] {
    BBox b;
    b.w = unit(rng) * w_max;
    b.h = unit(rng) * h_max;
    b.x = unit(rng) * (w_max - b.w);
    b.y = unit(rng) * (h_max - b.h);
    return b;
  };

  FrameRecord frame;
  frame.frame_id = frame_id;
  frame.width_px = width_px;
  frame.height_px = height_px;
  const auto n_fires = std::uniform_int_distribution<std::size_t>(0, fill.max_fires)(rng);
  const auto n_objects = std::uniform_int_distribution<std::size_t>(0, fill.max_objects)(rng);
  for (std::size_t i = 0; i < n_fires; ++i) {
    FireInstance fire;
    fire.bbox = box();
    fire.confidence = unit(rng);
    if (unit(rng) < 0.5) fire.mask_area_px = unit(rng) * fire.bbox.area();
    frame.fires.push_back(fire);
  }
  std::uniform_int_distribution<std::size_t> pick(0, kLabels.size() - 1);
  for (std::size_t j = 0; j < n_objects; ++j) {
    ContextObject object;
    object.bbox = box();
    object.class_label = kLabels[pick(rng)];
    object.confidence = unit(rng);
    frame.objects.push_back(std::move(object));
  }
  return frame;
}

std::vector<FrameRecord> generate(const ScenarioSpec& spec) {
  std::optional<CalibrationScale> scale;
  if (spec.kappa) scale = CalibrationScale{*spec.kappa, ScaleSource::Manual};

  std::vector<FrameRecord> frames;
  frames.reserve(spec.frame_count);
  if (spec.random) {
    if (!spec.fire_tracks.empty() || !spec.object_tracks.empty()) {
      throw Error(ErrorKind::SpecLengthMismatch, "random scenarios cannot also carry tracks");
    }
    std::mt19937_64 rng(spec.rng_seed);
    for (std::size_t k = 0; k < spec.frame_count; ++k) {
      auto frame = random_frame(rng, k, spec.width_px, spec.height_px, *spec.random);
      frame.scale_override = scale;
      frames.push_back(std::move(frame));
    }
    return frames;
  }

  for (std::size_t t = 0; t < spec.fire_tracks.size(); ++t) {
    if (spec.fire_tracks[t].size() != spec.frame_count) {
      throw Error(ErrorKind::SpecLengthMismatch,
                  "fire track " + std::to_string(t) + " has " + std::to_string(spec.fire_tracks[t].size()) +
                      " entries, expected " + std::to_string(spec.frame_count));
    }
  }
  for (std::size_t t = 0; t < spec.object_tracks.size(); ++t) {
    if (spec.object_tracks[t].size() != spec.frame_count) {
      throw Error(ErrorKind::SpecLengthMismatch,
                  "object track " + std::to_string(t) + " has " +
                      std::to_string(spec.object_tracks[t].size()) + " entries, expected " +
                      std::to_string(spec.frame_count));
    }
  }
  for (std::size_t k = 0; k < spec.frame_count; ++k) {
    FrameRecord frame;
    frame.frame_id = k;
    frame.width_px = spec.width_px;
    frame.height_px = spec.height_px;
    frame.scale_override = scale;
    for (const auto& track : spec.fire_tracks) frame.fires.push_back(track[k]);
    for (const auto& track : spec.object_tracks) frame.objects.push_back(track[k]);
    frames.push_back(std::move(frame));
  }
  return frames;
}

ScenarioSpec parse_scenario_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    bad_spec(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad_spec("must be a JSON object");

  auto uint_at = [&](const char* key, std::uint64_t fallback) -> std::uint64_t {
    const auto it = doc.find(key);
    if (it == doc.end()) return fallback;
    if (!it->is_number_unsigned()) bad_spec(std::string(key) + " must be an unsigned integer");
    return it->get<std::uint64_t>();
  };

  ScenarioSpec spec;
  spec.width_px = static_cast<std::uint32_t>(uint_at("width_px", spec.width_px));
  spec.height_px = static_cast<std::uint32_t>(uint_at("height_px", spec.height_px));
  spec.frame_count = static_cast<std::size_t>(uint_at("frame_count", spec.frame_count));
  spec.rng_seed = uint_at("rng_seed", spec.rng_seed);
  if (const auto it = doc.find("kappa"); it != doc.end() && !it->is_null()) {
    spec.kappa = number_at(doc, "kappa", "spec");
  }
  if (const auto it = doc.find("random"); it != doc.end()) {
    if (!it->is_object()) bad_spec("random must be an object");
    RandomFill fill;
    fill.max_fires = static_cast<std::size_t>(it->value("max_fires", fill.max_fires));
    fill.max_objects = static_cast<std::size_t>(it->value("max_objects", fill.max_objects));
    spec.random = fill;
  }
  if (const auto it = doc.find("fires"); it != doc.end()) {
    if (!it->is_array()) bad_spec("fires must be an array");
    for (std::size_t t = 0; t < it->size(); ++t) {
      const std::string path = "fires[" + std::to_string(t) + "]";
      spec.fire_tracks.push_back(track_at<FireInstance>(
          (*it)[t], path, spec.frame_count, [&](const json& src, const BBox& box) {
            return FireInstance{box, number_at(src, "confidence", path), mask_at(src)};
          }));
    }
  }
  if (const auto it = doc.find("objects"); it != doc.end()) {
    if (!it->is_array()) bad_spec("objects must be an array");
    for (std::size_t t = 0; t < it->size(); ++t) {
      const std::string path = "objects[" + std::to_string(t) + "]";
      spec.object_tracks.push_back(track_at<ContextObject>(
          (*it)[t], path, spec.frame_count, [&](const json& src, const BBox& box) {
            return ContextObject{box, label_at(src, path), number_at(src, "confidence", path)};
          }));
    }
  }
  return spec;
}

}  // namespace fireprox::synth
