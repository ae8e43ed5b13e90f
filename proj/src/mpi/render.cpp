#include "plenoptic/mpi/render.hpp"

#include <numeric>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/homography.hpp"
#include "plenoptic/core/parallel.hpp"

namespace plenoptic {

ImageRGBA render_mpi_in_order(const MultiplaneImage& mpi, const Camera& novel,
                              const std::vector<int>& order, const MpiRenderOptions& options) {
  const auto& depths = mpi.depths();
  if (!camera_in_front_of_plane(depths.back(), mpi.reference(), novel.pose)) {
    throw InvalidArgument("novel camera is not in front of the nearest MPI plane");
  }
  std::vector<Mat3> warps;
  warps.reserve(order.size());
  for (int k : order) {
    if (k < 0 || k >= mpi.plane_count()) throw InvalidArgument("plane index out of range");
    warps.push_back(plane_homography(depths[k], mpi.reference(), novel));
  }
  const int w = novel.intrinsics.width(), h = novel.intrinsics.height();
  ImageRGBA out(w, h);
  parallel_for(0, h, options.workers, [&](int y) {
    for (int x = 0; x < w; ++x) {
      const Vec2 p(x + 0.5, y + 0.5);
      Rgba acc;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (const auto q = apply_homography(warps[i], p)) {
          acc = over(mpi.plane(order[i]).sample_bilinear(q->x(), q->y()), acc);
        }
      }
      out.set(x, y, acc);
    }
  });
  return out;
}

ImageRGBA render_mpi(const MultiplaneImage& mpi, const Camera& novel,
                     const MpiRenderOptions& options) {
  std::vector<int> order(mpi.plane_count());
  std::iota(order.begin(), order.end(), 0);
  return render_mpi_in_order(mpi, novel, order, options);
}

}  // namespace plenoptic
