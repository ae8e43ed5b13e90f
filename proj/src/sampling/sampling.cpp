#include "plenoptic/sampling/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "plenoptic/core/error.hpp"

namespace plenoptic {
namespace {

// 1 / (2 K_x f (1/z_min - 1/z_max)), unbounded for a zero disparity band.
CameraInterval occluded_base(const SamplingInputs& inputs) {
  inputs.validate();
  const auto& b = inputs.bounds;
  const double band = b.max_disparity() - b.min_disparity();
  if (!(band > 0.0)) return CameraInterval::unbounded();
  const double kx = max_spatial_frequency(inputs.bandwidth, inputs.intrinsics.pixel_pitch());
  return CameraInterval::bounded(1.0 / (2.0 * kx * inputs.intrinsics.focal_length() * band));
}

}  // namespace

Bandwidth Bandwidth::limited(double cycles_per_unit) {
  if (!(cycles_per_unit > 0.0) || !std::isfinite(cycles_per_unit)) {
    throw InvalidArgument("bandwidth must be positive and finite");
  }
  Bandwidth b;
  b.value_ = cycles_per_unit;
  return b;
}

double Bandwidth::value() const {
  if (!value_) throw InvalidArgument("bandwidth is unlimited");
  return *value_;
}

void SamplingInputs::validate() const {
  if (planes < 1) throw InvalidArgument("plane count must be at least 1");
}

CameraInterval CameraInterval::bounded(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument("camera interval must be positive and finite");
  }
  CameraInterval c;
  c.value_ = value;
  return c;
}

double CameraInterval::value() const {
  if (!value_) throw InvalidArgument("camera interval is unbounded");
  return *value_;
}

std::string_view to_string(BindingConstraint c) {
  return c == BindingConstraint::layered ? "layered" : "field_of_view";
}

double max_spatial_frequency(const Bandwidth& bandwidth, double pixel_pitch) {
  if (!(pixel_pitch > 0.0)) throw InvalidArgument("pixel pitch must be positive");
  const double nyquist = 1.0 / (2.0 * pixel_pitch);
  return bandwidth.is_unlimited() ? nyquist : std::min(bandwidth.value(), nyquist);
}

CameraInterval nyquist_interval(const SamplingInputs& inputs) {
  if (inputs.planes != 1) {
    throw InvalidArgument("single-plane interval requested with " +
                          std::to_string(inputs.planes) + " planes");
  }
  const auto base = occluded_base(inputs);
  if (base.is_unbounded() || inputs.occluded) return base;
  return CameraInterval::bounded(2.0 * base.value());
}

CameraInterval layered_interval(const SamplingInputs& inputs) {
  const auto base = occluded_base(inputs);
  if (base.is_unbounded()) return base;
  return CameraInterval::bounded(inputs.planes * base.value());
}

double fov_interval(const CameraIntrinsics& intrinsics, double z_min) {
  if (!(z_min > 0.0)) throw InvalidArgument("z_min must be positive");
  return intrinsics.width() * intrinsics.pixel_pitch() * z_min /
         (2.0 * intrinsics.focal_length());
}

CombinedInterval combined_interval(const SamplingInputs& inputs) {
  const auto layered = layered_interval(inputs);
  const double fov = fov_interval(inputs.intrinsics, inputs.bounds.z_min());
  if (layered.is_unbounded() || fov < layered.value()) {
    return {fov, BindingConstraint::field_of_view};
  }
  return {layered.value(), BindingConstraint::layered};
}

double interval_to_disparity(double delta_u, const CameraIntrinsics& intrinsics,
                             double z_min) {
  if (!(z_min > 0.0)) throw InvalidArgument("z_min must be positive");
  return delta_u * intrinsics.focal_px() / z_min;
}

double disparity_to_interval(double disparity_px, const CameraIntrinsics& intrinsics,
                             double z_min) {
  if (!(z_min > 0.0)) throw InvalidArgument("z_min must be positive");
  return disparity_px * z_min / intrinsics.focal_px();
}

double nyquist_density(const CameraIntrinsics& intrinsics, double z_min) {
  const SamplingInputs inputs{intrinsics, SceneBounds::unbounded_far(z_min),
                              Bandwidth::unlimited(), 1, true};
  const double du = combined_interval(inputs).delta_u;
  return 1.0 / (du * du);
}

ImageCountGuideline prescriptive_image_count(int width, double z_min, double side) {
  if (width < 2) throw InvalidArgument("width must be at least 2");
  if (!(z_min > 0.0)) throw InvalidArgument("z_min must be positive");
  if (!(side >= 0.0) || !std::isfinite(side)) throw InvalidArgument("side must be >= 0");
  const double root = width * side / (80.0 * z_min);
  // Relative slack keeps exact squares (625 = 25^2) from rounding up.
  const double n_real = root * root;
  auto total = static_cast<long long>(std::ceil(n_real * (1.0 - 1e-12)));
  total = std::max(total, 4LL);
  auto per_axis = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(total)) - 1e-9));
  per_axis = std::max(per_axis, 2);
  return {total, per_axis, root};
}

}  // namespace plenoptic
