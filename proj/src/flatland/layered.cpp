#include "plenoptic/flatland/layered.hpp"

#include <algorithm>
#include <cmath>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/parallel.hpp"

namespace plenoptic::flatland {
namespace {

void check_planes(int planes) {
  if (planes < 1) throw InvalidArgument("plane count must be at least 1");
}

}  // namespace

SceneBounds disparity_bin(const SceneBounds& bounds, int planes, int k) {
  check_planes(planes);
  if (k < 0 || k >= planes) throw InvalidArgument("bin index out of range");
  const double lo = bounds.min_disparity();
  const double step = (bounds.max_disparity() - lo) / planes;
  const double near_rho = k == planes - 1 ? bounds.max_disparity() : lo + (k + 1) * step;
  const double far_rho = lo + k * step;
  return {1.0 / near_rho, far_rho > 0.0 ? 1.0 / far_rho : kInfinity};
}

int disparity_bin_index(const SceneBounds& bounds, int planes, double depth) {
  check_planes(planes);
  const double lo = bounds.min_disparity();
  const double band = bounds.max_disparity() - lo;
  if (!(band > 0.0)) return 0;
  const double rel = (1.0 / depth - lo) / band;
  return std::clamp(static_cast<int>(std::floor(rel * planes)), 0, planes - 1);
}

std::vector<double> layer_depths(const SceneBounds& bounds, int planes) {
  check_planes(planes);
  const double lo = bounds.min_disparity();
  const double step = (bounds.max_disparity() - lo) / planes;
  std::vector<double> z(planes);
  for (int k = 0; k < planes; ++k) z[k] = 1.0 / (lo + (k + 0.5) * step);
  return z;
}

LayeredEpi decompose_layers(const FlatScene& scene, const EpiSampling& sampling,
                            const SceneBounds& bounds, int planes,
                            const EpiRenderOptions& options) {
  scene.validate(bounds);
  const auto depths = layer_depths(bounds, planes);
  LayeredEpi out{bounds, {}, scene.background};
  EpiRenderOptions layer_opts = options;
  layer_opts.include_background = false;
  for (int k = 0; k < planes; ++k) {
    FlatScene part;
    for (const auto& s : scene.segments) {
      if (disparity_bin_index(bounds, planes, s.depth) == k) part.segments.push_back(s);
    }
    if (part.segments.empty()) {
      out.layers.push_back({depths[k], Epi(sampling), Epi(sampling)});
      continue;
    }
    auto rgba = render_epi_rgba(part, sampling, layer_opts);
    out.layers.push_back({depths[k], std::move(rgba.color), std::move(rgba.alpha)});
  }
  return out;
}

LayeredEpi layers_from_masks(const Epi& composite, const std::vector<Epi>& masks,
                             const SceneBounds& bounds, double background) {
  if (masks.empty()) throw InvalidArgument("need at least one layer mask");
  const auto& s = composite.sampling();
  for (const auto& m : masks) {
    if (!(m.sampling() == s)) throw DimensionMismatch("mask sampling differs from the EPI");
  }
  const int planes = static_cast<int>(masks.size());
  const auto depths = layer_depths(bounds, planes);
  LayeredEpi out{bounds, {}, background};
  for (int k = 0; k < planes; ++k) out.layers.push_back({depths[k], Epi(s), Epi(s)});
  for (int iu = 0; iu < s.nu; ++iu) {
    for (int ix = 0; ix < s.nx; ++ix) {
      double covered = 0.0;
      for (const auto& m : masks) {
        const double w = m.at(ix, iu);
        if (w < 0.0) throw InvalidArgument("layer masks must be non-negative");
        covered += w;
      }
      if (covered > 1.0 + 1e-9) throw InvalidArgument("layer masks sum to more than 1");
      // Non-background luminance, shared among layers by visible coverage.
      const double foreground =
          covered > 1e-12 ? (composite.at(ix, iu) - (1.0 - covered) * background) / covered : 0.0;
      double nearer = 0.0;
      for (int k = planes - 1; k >= 0; --k) {
        const double w = masks[k].at(ix, iu);
        const double remaining = 1.0 - nearer;
        const double scale = remaining > 1e-12 ? 1.0 / remaining : 0.0;
        out.layers[k].alpha.at(ix, iu) = std::min(1.0, w * scale);
        out.layers[k].color.at(ix, iu) = w * foreground * scale;
        nearer += w;
      }
    }
  }
  return out;
}

Epi layered_reconstruct(const LayeredEpi& sparse, const EpiSampling& target, int workers) {
  if (sparse.layers.empty()) throw InvalidArgument("layered light field has no layers");
  const auto& src = sparse.sampling();
  if (src.nu < 1) throw InvalidArgument("need at least one sparse view");
  if (std::abs(src.focal - target.focal) > 1e-12 * src.focal) {
    throw InvalidArgument("sparse and target focal lengths differ");
  }
  const double u_last = src.u(src.nu - 1);
  const double slack = 1e-9 * std::max(1.0, std::abs(u_last) + src.du);
  if (target.u(0) < src.u(0) - slack || target.u(target.nu - 1) > u_last + slack) {
    throw InvalidArgument("target camera positions lie outside the sparse range");
  }

  Epi out(target);
  parallel_for(0, target.nu, workers, [&](int iu) {
    const double u = target.u(iu);
    const double pos = std::clamp((u - src.u_origin) / src.du, 0.0, src.nu - 1.0);
    const int k0 = std::min(static_cast<int>(std::floor(pos)), std::max(src.nu - 2, 0));
    const int k1 = std::min(k0 + 1, src.nu - 1);
    const double t = pos - k0;
    for (int ix = 0; ix < target.nx; ++ix) {
      const double x = target.x(ix);
      double c = sparse.background;  // opaque background, composited first
      for (const auto& layer : sparse.layers) {
        // Ray (x, u) meets the plane at u + z x / f, seen by view k at
        // x + f (u - u_k) / z.
        const double shift = target.focal / layer.depth;
        double lc = 0.0, la = 0.0;
        for (auto [k, w] : {std::pair{k0, 1.0 - t}, std::pair{k1, t}}) {
          if (w == 0.0) continue;
          const double xk = x + shift * (u - src.u(k));
          const double col = (xk - src.x_origin) / src.dx;
          lc += w * layer.color.sample_row(k, col);
          la += w * layer.alpha.sample_row(k, col);
        }
        c = lc + (1.0 - la) * c;
      }
      out.at(ix, iu) = c;
    }
  });
  return out;
}

ReconstructionError reconstruction_error(const Epi& recon, const Epi& truth, int crop) {
  if (recon.nx() != truth.nx() || recon.nu() != truth.nu()) {
    throw DimensionMismatch("reconstruction and truth sizes differ");
  }
  if (crop < 0 || 2 * crop >= truth.nx() || 2 * crop >= truth.nu()) {
    throw InvalidArgument("border crop leaves no samples");
  }
  double sse = 0.0, peak = 0.0;
  long long n = 0;
  for (int iu = crop; iu < truth.nu() - crop; ++iu) {
    for (int ix = crop; ix < truth.nx() - crop; ++ix) {
      const double e = recon.at(ix, iu) - truth.at(ix, iu);
      sse += e * e;
      peak = std::max(peak, std::abs(truth.at(ix, iu)));
      ++n;
    }
  }
  const double mse = sse / static_cast<double>(n);
  const double psnr = mse == 0.0 ? kInfinity : 10.0 * std::log10(peak * peak / mse);
  return {mse, psnr};
}

}  // namespace plenoptic::flatland
