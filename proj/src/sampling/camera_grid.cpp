#include "plenoptic/sampling/camera_grid.hpp"

#include <algorithm>
#include <cmath>

#include "plenoptic/core/error.hpp"

namespace plenoptic {

SamplingPlan plan_camera_grid(const SamplingInputs& inputs, double side) {
  if (!(side >= 0.0) || !std::isfinite(side)) {
    throw InvalidArgument("grid side must be non-negative and finite");
  }
  const auto combined = combined_interval(inputs);
  const auto& k = inputs.intrinsics;
  const double z_min = inputs.bounds.z_min();

  SamplingPlan plan;
  plan.side = side;
  plan.delta_u = combined.delta_u;
  plan.binding = combined.binding;
  // Both branches in closed form so f cancels exactly: the layered bound
  // gives D / c and the field-of-view bound W / 2, where
  // c = 2 K_x pitch z_min (1/z_min - 1/z_max) is 1 at Nyquist with z_max = inf.
  const double band = inputs.bounds.max_disparity() - inputs.bounds.min_disparity();
  const double kx = max_spatial_frequency(inputs.bandwidth, k.pixel_pitch());
  const double c = 2.0 * kx * k.pixel_pitch() * z_min * band;
  if (combined.binding == BindingConstraint::layered) {
    plan.d_max = inputs.planes / c;
    plan.effective_disparity = inputs.planes;
  } else {
    plan.d_max = 0.5 * k.width();
    plan.effective_disparity = 0.5 * k.width() * c;
  }

  // Relative slack so that side == m * delta_u gives exactly m intervals.
  const double intervals = std::ceil(side / combined.delta_u * (1.0 - 1e-12));
  plan.per_axis = std::max(2, static_cast<int>(intervals) + 1);
  plan.spacing = side / (plan.per_axis - 1);
  plan.total = static_cast<long long>(plan.per_axis) * plan.per_axis;
  plan.guideline_total = prescriptive_image_count(k.width(), z_min, side).total;

  plan.grid.reserve(static_cast<std::size_t>(plan.total));
  for (int j = 0; j < plan.per_axis; ++j) {
    for (int i = 0; i < plan.per_axis; ++i) {
      // Endpoints are pinned so the grid spans exactly [-side/2, side/2].
      const double x = i == plan.per_axis - 1 ? 0.5 * side : -0.5 * side + i * plan.spacing;
      const double y = j == plan.per_axis - 1 ? 0.5 * side : -0.5 * side + j * plan.spacing;
      plan.grid.push_back({i, j, CameraPose::translated({x, y, 0.0})});
    }
  }
  return plan;
}

}  // namespace plenoptic
