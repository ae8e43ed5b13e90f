#pragma once

#include <optional>
#include <string_view>

#include "plenoptic/core/camera.hpp"

namespace plenoptic {

// Highest spatial frequency of the continuous light field, in cycles per
// image-plane length unit, or unlimited.
class Bandwidth {
 public:
  static Bandwidth unlimited() { return Bandwidth(); }
  static Bandwidth limited(double cycles_per_unit);

  bool is_unlimited() const { return !value_; }
  double value() const;  // throws InvalidArgument when unlimited

 private:
  Bandwidth() = default;
  std::optional<double> value_;
};

struct SamplingInputs {
  CameraIntrinsics intrinsics;
  SceneBounds bounds;
  Bandwidth bandwidth = Bandwidth::unlimited();
  int planes = 1;
  // Selects the occlusion-aware spectrum (twice the non-occluded rate).
  bool occluded = true;

  void validate() const;
};

// A camera spacing in world length units. A zero-width disparity band needs
// only one view, which is modelled as an explicit unbounded state rather than
// +inf so callers have to handle it.
class CameraInterval {
 public:
  static CameraInterval bounded(double value);
  static CameraInterval unbounded() { return CameraInterval(); }

  bool is_unbounded() const { return !value_; }
  double value() const;  // throws InvalidArgument when unbounded

  bool operator==(const CameraInterval&) const = default;

 private:
  CameraInterval() = default;
  std::optional<double> value_;
};

enum class BindingConstraint { layered, field_of_view };
std::string_view to_string(BindingConstraint c);

struct CombinedInterval {
  double delta_u;
  BindingConstraint binding;
};

// K_x = min(B_x, 1 / (2 pitch)).
double max_spatial_frequency(const Bandwidth& bandwidth, double pixel_pitch);

// Single-plane interval; requires inputs.planes == 1.
CameraInterval nyquist_interval(const SamplingInputs& inputs);

// D-plane interval: D times the occluded single-plane interval.
CameraInterval layered_interval(const SamplingInputs& inputs);

// Largest spacing at which every point at z_min is seen by two neighbours.
double fov_interval(const CameraIntrinsics& intrinsics, double z_min);

// min(layered, field of view). The field-of-view bound is always finite.
CombinedInterval combined_interval(const SamplingInputs& inputs);

// Pixel disparity of a point at z_min between cameras delta_u apart.
double interval_to_disparity(double delta_u, const CameraIntrinsics& intrinsics, double z_min);
// Inverse of interval_to_disparity.
double disparity_to_interval(double disparity_px, const CameraIntrinsics& intrinsics,
                             double z_min);

// Images per square metre needed for single-plane sampling of content from
// z_min to infinity at the full pixel bandwidth.
double nyquist_density(const CameraIntrinsics& intrinsics, double z_min);

struct ImageCountGuideline {
  long long total;  // smallest N with W / sqrt(N) <= 80 z_min / S, at least 4
  int per_axis;     // ceil(sqrt(total)), at least 2
  double exact_per_axis;  // W S / (80 z_min) before rounding
};

// Closed-form count for a 64 degree camera with 64 planes.
ImageCountGuideline prescriptive_image_count(int width, double z_min, double side);

}  // namespace plenoptic
