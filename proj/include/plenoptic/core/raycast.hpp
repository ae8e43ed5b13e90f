#pragma once

#include "plenoptic/core/camera.hpp"
#include "plenoptic/core/image.hpp"
#include "plenoptic/core/scene.hpp"

namespace plenoptic {

struct RaycastOptions {
  // Stratified samples per pixel axis (1 = one ray through the pixel center).
  int samples_per_axis = 1;
  int workers = 1;
};

// Ground-truth render: every ray composites all rectangle hits front to back
// with the over operator, then the background.
ImageRGBA raycast(const SyntheticScene& scene, const CameraIntrinsics& intrinsics,
                  const CameraPose& pose, const RaycastOptions& options = {});

// Single ray through continuous pixel coordinate `pixel`.
Rgba raycast_pixel(const SyntheticScene& scene, const std::vector<int>& front_to_back,
                   const CameraIntrinsics& intrinsics, const CameraPose& pose,
                   const Vec2& pixel, bool include_background = true);

}  // namespace plenoptic
