#pragma once

#include <vector>

#include "plenoptic/sampling/sampling.hpp"

namespace plenoptic {

struct GridCamera {
  int i;  // column, along world x
  int j;  // row, along world y
  CameraPose pose;
};

struct SamplingPlan {
  double side;
  double delta_u;           // combined bound on the spacing
  BindingConstraint binding;
  double d_max;             // interval_to_disparity(delta_u), in closed form
  // Disparity range spanned by the depth band at delta_u, normalised to the
  // light-field bandwidth; never exceeds min(D, W/2).
  double effective_disparity;
  int per_axis;
  double spacing;           // side / (per_axis - 1) <= delta_u
  long long total;          // per_axis^2
  long long guideline_total;  // closed-form count for the 64 degree / 64 plane case
  std::vector<GridCamera> grid;
};

// Square grid of identically oriented cameras on the z = 0 plane, centred on
// the origin and spanning [-side/2, side/2] on each axis. At least 2x2, so
// every point is covered by two neighbouring views, even when side is 0.
SamplingPlan plan_camera_grid(const SamplingInputs& inputs, double side);

}  // namespace plenoptic
