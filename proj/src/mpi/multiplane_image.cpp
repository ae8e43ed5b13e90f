#include "plenoptic/mpi/multiplane_image.hpp"

#include <algorithm>
#include <cmath>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/parallel.hpp"

namespace plenoptic {

std::vector<double> plane_depths(int planes, const SceneBounds& bounds) {
  if (planes < 1) throw InvalidArgument("plane count must be at least 1");
  const double lo = bounds.min_disparity();
  const double hi = bounds.max_disparity();
  std::vector<double> depths(planes);
  if (planes == 1) {
    depths[0] = 1.0 / (0.5 * (lo + hi));
    return depths;
  }
  for (int k = 0; k < planes; ++k) {
    // Pin the endpoints so they are exact.
    const double rho = k == planes - 1 ? hi : lo + (hi - lo) * k / (planes - 1);
    depths[k] = rho > 0.0 ? 1.0 / rho : kInfinity;
  }
  return depths;
}

int nearest_plane(const std::vector<double>& depths, double z) {
  if (depths.empty()) throw InvalidArgument("no planes");
  const double rho = 1.0 / z;
  int best = 0;
  double best_gap = kInfinity;
  for (std::size_t k = 0; k < depths.size(); ++k) {
    const double gap = std::abs(1.0 / depths[k] - rho);
    // Ties go to the nearer plane (later index).
    if (gap <= best_gap) {
      best_gap = gap;
      best = static_cast<int>(k);
    }
  }
  return best;
}

MultiplaneImage::MultiplaneImage(Camera reference, std::vector<double> depths,
                                 std::vector<ImageRGBA> planes)
    : reference_(std::move(reference)), depths_(std::move(depths)), planes_(std::move(planes)) {
  if (planes_.empty() || planes_.size() != depths_.size()) {
    throw InvalidArgument("MPI needs one depth per plane and at least one plane");
  }
  for (std::size_t k = 0; k < depths_.size(); ++k) {
    if (!(depths_[k] > 0.0)) throw InvalidArgument("MPI plane depths must be positive");
    if (k > 0 && !(depths_[k] < depths_[k - 1])) {
      throw InvalidArgument("MPI planes must be ordered far to near");
    }
    const auto& p = planes_[k];
    if (p.width() != reference_.intrinsics.width() ||
        p.height() != reference_.intrinsics.height()) {
      throw DimensionMismatch("MPI plane size differs from the reference camera");
    }
    p.validate(kInfinity);
  }
}

ImageRGBA MultiplaneImage::flatten() const {
  ImageRGBA out = planes_.front();
  for (std::size_t k = 1; k < planes_.size(); ++k) out = over(planes_[k], out);
  return out;
}

MultiplaneImage build_mpi(const SyntheticScene& scene, const Camera& reference, int planes,
                          const SceneBounds& bounds, const MpiBuildOptions& options) {
  scene.validate(bounds);
  if (options.margin_px < 0) throw InvalidArgument("margin must be non-negative");
  const auto depths = plane_depths(planes, bounds);
  const Camera ref{reference.intrinsics.padded(options.margin_px), reference.pose};
  const int w = ref.intrinsics.width(), h = ref.intrinsics.height();

  // Per-plane rectangle lists, near to far.
  std::vector<std::vector<int>> members(planes);
  for (int idx : scene.depth_order()) {
    members[nearest_plane(depths, scene.rectangles[idx].depth)].push_back(idx);
  }

  std::vector<ImageRGBA> images(planes, ImageRGBA(w, h));
  const Vec3 origin = ref.pose.center();
  parallel_for(0, h, options.workers, [&](int y) {
    for (int x = 0; x < w; ++x) {
      const Vec3 dir =
          ref.pose.direction_to_world(pixel_ray({x + 0.5, y + 0.5}, ref.intrinsics));
      for (int k = 0; k < planes; ++k) {
        Rgba acc;
        for (int idx : members[k]) {
          if (acc.a >= 1.0) break;
          if (auto hit = scene.rectangles[idx].sample_along_ray(origin, dir)) {
            acc = over(acc, *hit);
          }
        }
        if (k == 0) acc = over(acc, scene.background);
        images[k].set(x, y, acc);
      }
    }
  });
  return MultiplaneImage(ref, depths, std::move(images));
}

}  // namespace plenoptic
