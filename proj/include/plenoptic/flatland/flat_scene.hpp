#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "plenoptic/core/camera.hpp"
#include "plenoptic/core/texture.hpp"

namespace plenoptic::flatland {

// A textured segment at depth z covering world positions [x_min, x_max).
// `feather` is the width of a raised-cosine opacity ramp inside each end
// (0 = hard edges). The texture is evaluated at the world position.
struct FlatSegment {
  double depth = 1.0;
  double x_min = -0.5;
  double x_max = 0.5;
  BandLimitedNoise texture = BandLimitedNoise::constant(0.5);
  double opacity = 1.0;
  double feather = 0.0;

  bool covers(double x) const { return x >= x_min && x < x_max; }
  // Coverage in [0, opacity] including the feathered ramps.
  double coverage(double x) const;
};

struct FlatScene {
  std::vector<FlatSegment> segments;
  double background = 0.0;

  SceneBounds depth_range() const;
  // Throws InvalidArgument for malformed segments, OutOfBounds for depths
  // outside `bounds`.
  void validate(const std::optional<SceneBounds>& bounds = std::nullopt) const;
  // Indices sorted near to far (stable).
  std::vector<int> depth_order() const;
};

// YAML flatland scene:
//   background: 0.0
//   bounds: [z_min, z_max]                    (optional)
//   segments:
//     - depth: 2.0
//       extent: [x_min, x_max]
//       opacity: 1.0                          (optional)
//       feather: 0.0                          (optional)
//       texture:                              (one of)
//         constant: 0.5
//         cosine: {frequency: 4, mean: 0.5, amplitude: 0.2, phase: 0}
//         noise: {cutoff: 8, mean: 0.5, rms: 0.15, components: 32, seed: 1}
struct FlatSceneFile {
  FlatScene scene;
  std::optional<SceneBounds> bounds;
};

FlatSceneFile load_flat_scene(const std::filesystem::path& path);

}  // namespace plenoptic::flatland
