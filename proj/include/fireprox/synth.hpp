#pragma once

// Synthetic scenes with known geometry, for tests and corpus generation.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "fireprox/types.hpp"

namespace fireprox::synth {

struct RandomFill {
  std::size_t max_fires = 5;
  std::size_t max_objects = 8;
};

struct ScenarioSpec {
  std::uint32_t width_px = 640;
  std::uint32_t height_px = 640;
  /// Written into every frame as its scale override when set.
  std::optional<double> kappa;
  /// fire_tracks[t][k] is track t at frame k; likewise for objects.
  std::vector<std::vector<FireInstance>> fire_tracks;
  std::vector<std::vector<ContextObject>> object_tracks;
  std::size_t frame_count = 1;
  std::uint64_t rng_seed = 0;
  /// When set, frames are drawn independently from the seeded generator and
  /// the tracks must be empty.
  std::optional<RandomFill> random;
};

/// Throws SpecLengthMismatch if any track length differs from frame_count.
std::vector<FrameRecord> generate(const ScenarioSpec& spec);

/// Boxes uniform inside the frame, confidences uniform on [0,1], classes from
/// the default vulnerability table plus one unlisted label.
FrameRecord random_frame(std::mt19937_64& rng, std::uint64_t frame_id, std::uint32_t width_px,
                         std::uint32_t height_px, const RandomFill& fill = {});

/// Box translated by (dx, dy) per frame.
std::vector<BBox> linear_path(const BBox& start, double dx, double dy, std::size_t frame_count);

/// JSON scenario file. Tracks take either explicit "frames" or a "start" box
/// plus "velocity" [dx, dy]; a "random" object switches to random frames.
ScenarioSpec parse_scenario_spec(std::string_view json_text);

}  // namespace fireprox::synth
