#pragma once

#include <limits>
#include <optional>

#include <Eigen/Core>

namespace plenoptic {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Pinhole intrinsics. Focal length and pixel pitch share the image-plane
// length unit; everything downstream works in pixel units (pitch = 1) via
// focal_px(). The principal point is the image center, pixel (i, j) covers
// [i, i+1) x [j, j+1) and has its center at (i + 0.5, j + 0.5).
class CameraIntrinsics {
 public:
  CameraIntrinsics(double focal_length, double pixel_pitch, int width, int height);

  // f = (W * pitch / 2) / tan(fov / 2).
  static CameraIntrinsics from_horizontal_fov(double fov_degrees, int width, int height,
                                              double pixel_pitch = 1.0);

  double focal_length() const { return focal_length_; }
  double pixel_pitch() const { return pixel_pitch_; }
  int width() const { return width_; }
  int height() const { return height_; }

  double focal_px() const { return focal_length_ / pixel_pitch_; }
  double horizontal_fov_radians() const;
  double horizontal_fov_degrees() const;

  // Pixel-unit calibration matrix and its inverse.
  Mat3 matrix() const;
  Mat3 inverse_matrix() const;

  // Same focal length, image grown by `margin` pixels on every side. The
  // central width x height block of the result coincides with this camera.
  CameraIntrinsics padded(int margin) const;

  bool operator==(const CameraIntrinsics&) const = default;

 private:
  double focal_length_;
  double pixel_pitch_;
  int width_;
  int height_;
};

// Rigid camera-to-world transform. `rotation` maps camera axes (x right,
// y down, z forward) to world axes; `translation` is the camera center.
class CameraPose {
 public:
  CameraPose();  // identity
  CameraPose(const Mat3& rotation, const Vec3& translation);

  static CameraPose translated(const Vec3& center);

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }
  const Vec3& center() const { return translation_; }

  Vec3 world_to_camera(const Vec3& world) const;
  Vec3 camera_to_world(const Vec3& camera) const;
  // Camera-frame direction rotated into the world frame.
  Vec3 direction_to_world(const Vec3& camera_direction) const;

 private:
  Mat3 rotation_;
  Vec3 translation_;
};

struct Camera {
  CameraIntrinsics intrinsics;
  CameraPose pose;
};

// Depth range of scene content. z_max may be +infinity.
class SceneBounds {
 public:
  SceneBounds(double z_min, double z_max);
  static SceneBounds unbounded_far(double z_min) { return {z_min, kInfinity}; }

  double z_min() const { return z_min_; }
  double z_max() const { return z_max_; }
  bool far_is_infinite() const { return z_max_ == kInfinity; }

  // Inverse depths; 1/inf is exactly 0.
  double max_disparity() const { return 1.0 / z_min_; }
  double min_disparity() const { return far_is_infinite() ? 0.0 : 1.0 / z_max_; }
  bool contains(double z) const { return z >= z_min_ && z <= z_max_; }

 private:
  double z_min_;
  double z_max_;
};

// Continuous pixel coordinate of a world point, or nullopt when the point is
// not strictly in front of the camera.
std::optional<Vec2> project(const Vec3& world_point, const CameraIntrinsics& intrinsics,
                            const CameraPose& pose);

// Camera-frame direction through continuous pixel coordinate `pixel`, with z = 1.
Vec3 pixel_ray(const Vec2& pixel, const CameraIntrinsics& intrinsics);

}  // namespace plenoptic
