#include "plenoptic/core/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "plenoptic/core/error.hpp"

namespace plenoptic {

bool Rectangle::covers(double world_x, double world_y) const {
  const double x0 = center_x - 0.5 * width;
  const double y0 = center_y - 0.5 * height;
  return world_x >= x0 && world_x < x0 + width && world_y >= y0 && world_y < y0 + height;
}

Rgba Rectangle::sample_at(double world_x, double world_y) const {
  const double u = (world_x - (center_x - 0.5 * width)) / width * texture.width();
  const double v = (world_y - (center_y - 0.5 * height)) / height * texture.height();
  return texture.sample_bilinear_clamped(u, v) * opacity;
}

std::optional<Rgba> Rectangle::sample_along_ray(const Vec3& origin,
                                                const Vec3& direction) const {
  if (direction.z() == 0.0) return std::nullopt;
  const double s = (depth - origin.z()) / direction.z();
  if (!(s > 0.0)) return std::nullopt;
  const double x = origin.x() + s * direction.x();
  const double y = origin.y() + s * direction.y();
  if (!covers(x, y)) return std::nullopt;
  return sample_at(x, y);
}

SceneBounds SyntheticScene::depth_range() const {
  if (rectangles.empty()) throw InvalidArgument("scene has no rectangles");
  double lo = kInfinity, hi = 0.0;
  for (const auto& r : rectangles) {
    lo = std::min(lo, r.depth);
    hi = std::max(hi, r.depth);
  }
  return {lo, hi};
}

void SyntheticScene::validate(const std::optional<SceneBounds>& bounds) const {
  if (rectangles.empty()) throw InvalidArgument("scene has no rectangles");
  std::vector<double> offending;
  for (const auto& r : rectangles) {
    if (!(r.depth > 0.0) || !std::isfinite(r.depth)) {
      throw InvalidArgument("rectangle depth must be positive and finite");
    }
    if (!(r.width > 0.0 && r.height > 0.0)) {
      throw InvalidArgument("rectangle extent must be positive");
    }
    if (!(r.opacity >= 0.0 && r.opacity <= 1.0)) {
      throw InvalidArgument("rectangle opacity must lie in [0, 1]");
    }
    if (r.texture.empty()) throw InvalidArgument("rectangle has an empty texture");
    // Textures may carry HDR color; only sign/NaN/alpha are checked here.
    r.texture.validate(kInfinity);
    if (bounds && !bounds->contains(r.depth)) offending.push_back(r.depth);
  }
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "scene content outside bounds [" << bounds->z_min() << ", " << bounds->z_max()
        << "] at depths:";
    for (double z : offending) msg << ' ' << z;
    throw OutOfBounds(msg.str());
  }
}

std::vector<int> SyntheticScene::depth_order() const {
  std::vector<int> order(rectangles.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rectangles[a].depth < rectangles[b].depth;
  });
  return order;
}

SyntheticScene SyntheticScene::translated(const Vec3& offset) const {
  SyntheticScene out = *this;
  for (auto& r : out.rectangles) {
    r.center_x += offset.x();
    r.center_y += offset.y();
    r.depth += offset.z();
  }
  return out;
}

SyntheticScene SyntheticScene::rotated_half_turn() const {
  SyntheticScene out = *this;
  for (auto& r : out.rectangles) {
    r.center_x = -r.center_x;
    r.center_y = -r.center_y;
    ImageRGBA flipped(r.texture.width(), r.texture.height());
    for (int y = 0; y < r.texture.height(); ++y) {
      for (int x = 0; x < r.texture.width(); ++x) {
        flipped.set(x, y, r.texture.at(r.texture.width() - 1 - x, r.texture.height() - 1 - y));
      }
    }
    r.texture = std::move(flipped);
  }
  return out;
}

}  // namespace plenoptic
