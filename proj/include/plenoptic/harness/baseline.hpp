#pragma once

#include <vector>

#include "plenoptic/core/camera.hpp"
#include "plenoptic/core/image.hpp"
#include "plenoptic/core/scene.hpp"

namespace plenoptic {

// Regular grid of identically oriented views on the z = 0 plane; view (i, j)
// sits at origin + (i * spacing, j * spacing, 0). Images are row-major by j.
struct ViewGrid {
  CameraIntrinsics intrinsics;
  Vec3 origin;
  double spacing;
  int columns;
  int rows;
  std::vector<ImageRGBA> images;

  Vec3 position(int i, int j) const;
  const ImageRGBA& image(int i, int j) const;
};

// Ground-truth views for a grid.
ViewGrid render_view_grid(const SyntheticScene& scene, const CameraIntrinsics& intrinsics,
                          const Vec3& origin, double spacing, int columns, int rows,
                          int workers = 1);

// Classical light-field interpolation without geometry: each output pixel is
// the bilinear blend (over the camera plane) of the same pixel in the four
// nearest views. Refuses grids whose adjacent-view disparity at z_min exceeds
// one pixel. Poses outside the grid are clamped to its border.
ImageRGBA nyquist_baseline(const ViewGrid& grid, const CameraPose& novel, double z_min);

}  // namespace plenoptic
