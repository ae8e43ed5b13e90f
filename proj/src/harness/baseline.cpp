#include "plenoptic/harness/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/raycast.hpp"
#include "plenoptic/sampling/sampling.hpp"

namespace plenoptic {

Vec3 ViewGrid::position(int i, int j) const {
  return origin + Vec3(i * spacing, j * spacing, 0.0);
}

const ImageRGBA& ViewGrid::image(int i, int j) const {
  if (i < 0 || j < 0 || i >= columns || j >= rows) throw InvalidArgument("grid index out of range");
  return images[static_cast<std::size_t>(j) * columns + i];
}

ViewGrid render_view_grid(const SyntheticScene& scene, const CameraIntrinsics& intrinsics,
                          const Vec3& origin, double spacing, int columns, int rows,
                          int workers) {
  if (columns < 1 || rows < 1) throw InvalidArgument("view grid needs at least one view");
  ViewGrid grid{intrinsics, origin, spacing, columns, rows, {}};
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < columns; ++i) {
      grid.images.push_back(raycast(scene, intrinsics,
                                    CameraPose::translated(grid.position(i, j)),
                                    {1, workers}));
    }
  }
  return grid;
}

ImageRGBA nyquist_baseline(const ViewGrid& grid, const CameraPose& novel, double z_min) {
  if (grid.images.size() != static_cast<std::size_t>(grid.columns) * grid.rows) {
    throw InvalidArgument("view grid image count does not match its size");
  }
  if (grid.columns > 1 || grid.rows > 1) {
    const double d = interval_to_disparity(grid.spacing, grid.intrinsics, z_min);
    if (d > 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "baseline grid too sparse: adjacent views differ by " << d
          << " px at z_min (at most 1 px allowed)";
      throw InvalidArgument(msg.str());
    }
  }
  const auto cell = [&](double coord, int count, int& lo, double& t) {
    if (count == 1) {
      lo = 0;
      t = 0.0;
      return;
    }
    const double g = std::clamp(coord / grid.spacing, 0.0, count - 1.0);
    lo = std::min(static_cast<int>(std::floor(g)), count - 2);
    t = g - lo;
  };
  const Vec3 rel = novel.center() - grid.origin;
  int i0, j0;
  double tx, ty;
  cell(rel.x(), grid.columns, i0, tx);
  cell(rel.y(), grid.rows, j0, ty);
  const int i1 = std::min(i0 + 1, grid.columns - 1), j1 = std::min(j0 + 1, grid.rows - 1);

  const auto& im00 = grid.image(i0, j0);
  ImageRGBA out(im00.width(), im00.height());
  const double w00 = (1 - tx) * (1 - ty), w10 = tx * (1 - ty), w01 = (1 - tx) * ty, w11 = tx * ty;
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      Rgba c = im00.at(x, y) * w00;
      if (w10 != 0.0) c += grid.image(i1, j0).at(x, y) * w10;
      if (w01 != 0.0) c += grid.image(i0, j1).at(x, y) * w01;
      if (w11 != 0.0) c += grid.image(i1, j1).at(x, y) * w11;
      out.set(x, y, c);
    }
  }
  return out;
}

}  // namespace plenoptic
