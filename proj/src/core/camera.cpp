#include "plenoptic/core/camera.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "plenoptic/core/error.hpp"

namespace plenoptic {

CameraIntrinsics::CameraIntrinsics(double focal_length, double pixel_pitch, int width,
                                   int height)
    : focal_length_(focal_length), pixel_pitch_(pixel_pitch), width_(width), height_(height) {
  if (!(focal_length > 0.0) || !std::isfinite(focal_length)) {
    throw InvalidArgument("focal length must be positive and finite");
  }
  if (!(pixel_pitch > 0.0) || !std::isfinite(pixel_pitch)) {
    throw InvalidArgument("pixel pitch must be positive and finite");
  }
  if (width < 2) throw InvalidArgument("image width must be at least 2 pixels");
  if (height < 1) throw InvalidArgument("image height must be at least 1 pixel");
}

CameraIntrinsics CameraIntrinsics::from_horizontal_fov(double fov_degrees, int width,
                                                       int height, double pixel_pitch) {
  if (!(fov_degrees > 0.0 && fov_degrees < 180.0)) {
    throw InvalidArgument("field of view must lie in (0, 180) degrees, got " +
                          std::to_string(fov_degrees));
  }
  const double half = fov_degrees * std::numbers::pi / 360.0;
  return {0.5 * width * pixel_pitch / std::tan(half), pixel_pitch, width, height};
}

double CameraIntrinsics::horizontal_fov_radians() const {
  return 2.0 * std::atan(width_ * pixel_pitch_ / (2.0 * focal_length_));
}

double CameraIntrinsics::horizontal_fov_degrees() const {
  return horizontal_fov_radians() * 180.0 / std::numbers::pi;
}

Mat3 CameraIntrinsics::matrix() const {
  const double f = focal_px();
  Mat3 k;
  k << f, 0.0, 0.5 * width_, 0.0, f, 0.5 * height_, 0.0, 0.0, 1.0;
  return k;
}

Mat3 CameraIntrinsics::inverse_matrix() const {
  const double inv_f = 1.0 / focal_px();
  Mat3 k;
  k << inv_f, 0.0, -0.5 * width_ * inv_f, 0.0, inv_f, -0.5 * height_ * inv_f, 0.0, 0.0, 1.0;
  return k;
}

CameraIntrinsics CameraIntrinsics::padded(int margin) const {
  if (margin < 0) throw InvalidArgument("padding margin must be non-negative");
  return {focal_length_, pixel_pitch_, width_ + 2 * margin, height_ + 2 * margin};
}

CameraPose::CameraPose() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()) {}

CameraPose::CameraPose(const Mat3& rotation, const Vec3& translation)
    : rotation_(rotation), translation_(translation) {
  const double orthogonality = (rotation.transpose() * rotation - Mat3::Identity()).norm();
  if (!(orthogonality < 1e-9)) throw InvalidArgument("pose rotation is not orthonormal");
  if (!(std::abs(rotation.determinant() - 1.0) < 1e-9)) {
    throw InvalidArgument("pose rotation must have determinant +1");
  }
  if (!translation.allFinite()) throw InvalidArgument("pose translation must be finite");
}

CameraPose CameraPose::translated(const Vec3& center) { return {Mat3::Identity(), center}; }

Vec3 CameraPose::world_to_camera(const Vec3& world) const {
  return rotation_.transpose() * (world - translation_);
}

Vec3 CameraPose::camera_to_world(const Vec3& camera) const {
  return rotation_ * camera + translation_;
}

Vec3 CameraPose::direction_to_world(const Vec3& camera_direction) const {
  return rotation_ * camera_direction;
}

SceneBounds::SceneBounds(double z_min, double z_max) : z_min_(z_min), z_max_(z_max) {
  if (!(z_min > 0.0) || !std::isfinite(z_min)) {
    throw InvalidArgument("z_min must be positive and finite");
  }
  if (!(z_max >= z_min)) throw InvalidArgument("z_max must not be smaller than z_min");
}

std::optional<Vec2> project(const Vec3& world_point, const CameraIntrinsics& intrinsics,
                            const CameraPose& pose) {
  const Vec3 c = pose.world_to_camera(world_point);
  if (!(c.z() > 0.0)) return std::nullopt;
  const double f = intrinsics.focal_px();
  return Vec2(f * c.x() / c.z() + 0.5 * intrinsics.width(),
              f * c.y() / c.z() + 0.5 * intrinsics.height());
}

Vec3 pixel_ray(const Vec2& pixel, const CameraIntrinsics& intrinsics) {
  const double inv_f = 1.0 / intrinsics.focal_px();
  return {(pixel.x() - 0.5 * intrinsics.width()) * inv_f,
          (pixel.y() - 0.5 * intrinsics.height()) * inv_f, 1.0};
}

}  // namespace plenoptic
