#pragma once

#include <optional>

#include "plenoptic/core/camera.hpp"

namespace plenoptic {

// Homography taking novel-view pixel coordinates (homogeneous) to
// reference-view pixel coordinates for the plane Z_ref = depth, fronto-parallel
// in the reference camera. depth may be +infinity (pure rotation case).
//
// The matrix is not rescaled: for a novel camera in front of the plane, the
// third homogeneous coordinate of H * (x, y, 1) is positive exactly when the
// novel ray meets the plane in front of the camera.
//
// Throws InvalidArgument for depth <= 0 and DegenerateHomography when the
// novel camera center lies in the plane.
Mat3 plane_homography(double depth, const Camera& reference, const Camera& novel);

// True when the novel camera center is on the reference camera's side of the plane.
bool camera_in_front_of_plane(double depth, const Camera& reference, const CameraPose& novel);

// Applies `h` to a continuous pixel coordinate; nullopt when the mapped
// homogeneous coordinate is not positive (ray misses the plane ahead).
std::optional<Vec2> apply_homography(const Mat3& h, const Vec2& pixel);

}  // namespace plenoptic
