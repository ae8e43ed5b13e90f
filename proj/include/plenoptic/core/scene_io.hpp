#pragma once

#include <filesystem>
#include <optional>

#include "plenoptic/core/scene.hpp"

namespace plenoptic {

// A scene file: YAML mapping with keys
//   background: [r, g, b]                 (optional, default black, opaque)
//   bounds: [z_min, z_max]                 (optional; z_max may be "inf")
//   rectangles:                            (required, non-empty list)
//     - depth: 2.0
//       center: [x, y]
//       size: [width, height]
//       opacity: 1.0                       (optional)
//       texture:                           (exactly one of)
//         color: [r, g, b]
//         png: path/relative/to/scene.png
//         noise: {resolution: [w, h], sigma: 1.5, mean: [r, g, b],
//                 contrast: 0.15, seed: 1}
// Unknown keys are rejected.
struct SceneFile {
  SyntheticScene scene;
  std::optional<SceneBounds> bounds;
};

SceneFile load_scene(const std::filesystem::path& path);

}  // namespace plenoptic
