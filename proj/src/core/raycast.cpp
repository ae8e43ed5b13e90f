#include "plenoptic/core/raycast.hpp"

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/parallel.hpp"

namespace plenoptic {

Rgba raycast_pixel(const SyntheticScene& scene, const std::vector<int>& front_to_back,
                   const CameraIntrinsics& intrinsics, const CameraPose& pose,
                   const Vec2& pixel, bool include_background) {
  const Vec3 dir = pose.direction_to_world(pixel_ray(pixel, intrinsics));
  const Vec3& origin = pose.center();
  // Accumulate front to back: color += (1 - A) * c, A += (1 - A) * a.
  Rgba acc;
  const auto visit = [&](int idx) {
    if (const auto hit = scene.rectangles[idx].sample_along_ray(origin, dir)) {
      acc = over(acc, *hit);
    }
  };
  // Depth order is the visibility order for rays travelling towards +Z.
  if (dir.z() >= 0.0) {
    for (auto it = front_to_back.begin(); it != front_to_back.end() && acc.a < 1.0; ++it) {
      visit(*it);
    }
  } else {
    for (auto it = front_to_back.rbegin(); it != front_to_back.rend() && acc.a < 1.0; ++it) {
      visit(*it);
    }
  }
  if (include_background) acc = over(acc, scene.background);
  return acc;
}

ImageRGBA raycast(const SyntheticScene& scene, const CameraIntrinsics& intrinsics,
                  const CameraPose& pose, const RaycastOptions& options) {
  if (scene.rectangles.empty()) throw InvalidArgument("raycast: scene is empty");
  if (options.samples_per_axis < 1) throw InvalidArgument("samples_per_axis must be >= 1");
  const auto order = scene.depth_order();
  const int w = intrinsics.width();
  const int h = intrinsics.height();
  const int n = options.samples_per_axis;
  const double inv_count = 1.0 / (n * n);
  ImageRGBA out(w, h);
  parallel_for(0, h, options.workers, [&](int y) {
    for (int x = 0; x < w; ++x) {
      if (n == 1) {
        out.set(x, y, raycast_pixel(scene, order, intrinsics, pose, {x + 0.5, y + 0.5}));
        continue;
      }
      Rgba sum;
      for (int sy = 0; sy < n; ++sy) {
        for (int sx = 0; sx < n; ++sx) {
          const Vec2 p(x + (sx + 0.5) / n, y + (sy + 0.5) / n);
          sum += raycast_pixel(scene, order, intrinsics, pose, p);
        }
      }
      out.set(x, y, sum * inv_count);
    }
  });
  return out;
}

}  // namespace plenoptic
