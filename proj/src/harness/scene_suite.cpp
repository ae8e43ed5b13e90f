#include "plenoptic/harness/scene_suite.hpp"

#include <algorithm>
#include <cmath>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/random.hpp"
#include "plenoptic/core/texture.hpp"

namespace plenoptic {
namespace {

Rectangle textured_rectangle(Rng& rng, double depth, double cx, double cy, double w_px,
                             double h_px, double focal_px, const SceneSuiteParams& p) {
  Rectangle r;
  r.depth = depth;
  r.center_x = cx;
  r.center_y = cy;
  r.width = w_px * depth / focal_px;
  r.height = h_px * depth / focal_px;
  NoiseTextureParams t;
  t.width = std::max(4, static_cast<int>(std::lround(w_px)));
  t.height = std::max(4, static_cast<int>(std::lround(h_px)));
  t.sigma_texels = p.texture_sigma;
  t.mean = {rng.uniform(0.25, 0.75), rng.uniform(0.25, 0.75), rng.uniform(0.25, 0.75)};
  t.contrast = p.contrast;
  t.seed = rng.next_u64();
  r.texture = smoothed_noise_texture(t);
  return r;
}

}  // namespace

CameraIntrinsics SceneSuiteParams::intrinsics() const {
  return CameraIntrinsics::from_horizontal_fov(fov_degrees, width, height);
}

std::vector<SuiteScene> make_scene_suite(const SceneSuiteParams& p) {
  if (p.count < 1 || p.rectangles < 1) throw InvalidArgument("suite needs scenes and rectangles");
  if (!(p.wall_factor > 1.0)) throw InvalidArgument("wall must lie behind z_min");
  const auto k = p.intrinsics();
  const double f = k.focal_px();
  const double half_w = 0.5 * p.width, half_h = 0.5 * p.height;
  std::vector<SuiteScene> out;
  for (int id = 0; id < p.count; ++id) {
    const std::uint64_t seed = mix_seed(p.seed, static_cast<std::uint64_t>(id));
    Rng rng(seed);
    SyntheticScene scene;
    scene.background = Rgba::opaque(0.5, 0.5, 0.5);

    // The wall spans 2.5x the view so translated and padded views stay covered.
    const double z_wall = p.wall_factor * p.z_min;
    scene.rectangles.push_back(textured_rectangle(rng, z_wall, 0.0, 0.0, 2.5 * p.width,
                                                  2.5 * p.height, f, p));

    const double rho_max = 1.0 / p.z_min;
    const double rho_wall = 1.0 / z_wall;
    for (int r = 0; r < p.rectangles; ++r) {
      // First rectangle pins the nearest depth; the rest cover the disparity
      // range in strata so every scene exercises near and far content.
      const double rel = r == 0 ? 1.0 : (r - 1 + rng.uniform()) / (p.rectangles - 1);
      const double rho = rho_wall + (rho_max - rho_wall) * (0.15 + 0.85 * rel);
      const double z = r == 0 ? p.z_min : 1.0 / std::min(rho, rho_max);
      const double w_px = rng.uniform(0.25, 0.5) * p.width;
      const double h_px = rng.uniform(0.25, 0.5) * p.height;
      const double cx_px = rng.uniform(-0.45, 0.45) * half_w;
      const double cy_px = rng.uniform(-0.45, 0.45) * half_h;
      scene.rectangles.push_back(
          textured_rectangle(rng, z, cx_px * z / f, cy_px * z / f, w_px, h_px, f, p));
    }
    const auto bounds = SceneBounds::unbounded_far(p.z_min);
    scene.validate(bounds);
    out.push_back({id, seed, std::move(scene), bounds});
  }
  return out;
}

}  // namespace plenoptic
