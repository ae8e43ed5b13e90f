#pragma once

#include <cstdint>
#include <vector>

#include "plenoptic/core/camera.hpp"
#include "plenoptic/core/scene.hpp"

namespace plenoptic {

struct SceneSuiteParams {
  int count = 8;
  int width = 256;
  int height = 256;
  double fov_degrees = 64.0;
  double z_min = 1.0;
  // Textured back wall at wall_factor * z_min, filling every view.
  double wall_factor = 10.0;
  int rectangles = 6;
  // Texture smoothing in texels; textures are sized so a texel covers about
  // one pixel in the reference views.
  double texture_sigma = 1.2;
  double contrast = 0.18;
  std::uint64_t seed = 1234;

  CameraIntrinsics intrinsics() const;
};

struct SuiteScene {
  int id;
  std::uint64_t seed;
  SyntheticScene scene;
  SceneBounds bounds;  // [z_min, inf)
};

// Seeded desk-scale scenes for cameras near the origin looking down +z: a
// wall plus rectangles at random disparities, the nearest exactly at z_min.
std::vector<SuiteScene> make_scene_suite(const SceneSuiteParams& params);

}  // namespace plenoptic
