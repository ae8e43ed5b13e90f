#include "plenoptic/core/homography.hpp"

#include <cmath>

#include "plenoptic/core/error.hpp"

namespace plenoptic {
namespace {

// Novel camera center in the reference frame.
Vec3 novel_center_in_reference(const Camera& reference, const CameraPose& novel) {
  return reference.pose.world_to_camera(novel.center());
}

}  // namespace

bool camera_in_front_of_plane(double depth, const Camera& reference, const CameraPose& novel) {
  const double inv_depth = 1.0 / depth;
  return 1.0 - inv_depth * novel_center_in_reference(reference, novel).z() > 0.0;
}

Mat3 plane_homography(double depth, const Camera& reference, const Camera& novel) {
  if (!(depth > 0.0)) throw InvalidArgument("plane depth must be positive");
  const double inv_depth = 1.0 / depth;  // 0 for a plane at infinity
  const Vec3 o = novel_center_in_reference(reference, novel.pose);
  const double scale = 1.0 - inv_depth * o.z();
  if (std::abs(scale) < 1e-12) {
    throw DegenerateHomography("novel camera center lies in the plane at depth " +
                               std::to_string(depth));
  }
  // A ray v (reference frame) from o meets Z = depth at o + s v, whose
  // homogeneous image is inv_depth * o * v_z + (1 - inv_depth * o_z) * v.
  Mat3 plane = scale * Mat3::Identity();
  plane.col(2) += inv_depth * o;
  const Mat3 to_reference =
      reference.pose.rotation().transpose() * novel.pose.rotation();
  return reference.intrinsics.matrix() * plane * to_reference *
         novel.intrinsics.inverse_matrix();
}

std::optional<Vec2> apply_homography(const Mat3& h, const Vec2& pixel) {
  const Vec3 p = h * Vec3(pixel.x(), pixel.y(), 1.0);
  if (!(p.z() > 0.0)) return std::nullopt;
  return Vec2(p.x() / p.z(), p.y() / p.z());
}

}  // namespace plenoptic
