#include "plenoptic/flatland/epi.hpp"

#include <algorithm>
#include <cmath>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/parallel.hpp"

namespace plenoptic::flatland {

EpiSampling EpiSampling::centered(int nx, int nu, double dx, double du, double focal,
                                  double u_origin) {
  EpiSampling s{nx, nu, dx, du, (0.5 - 0.5 * nx) * dx, u_origin, focal};
  s.validate();
  return s;
}

void EpiSampling::validate(int min_size) const {
  if (nx < min_size || nu < min_size) {
    throw InvalidArgument("EPI needs at least " + std::to_string(min_size) +
                          " samples per axis, got " + std::to_string(nx) + "x" +
                          std::to_string(nu));
  }
  if (!(dx > 0.0) || !(du > 0.0) || !(focal > 0.0)) {
    throw InvalidArgument("EPI intervals and focal length must be positive");
  }
  if (!std::isfinite(x_origin) || !std::isfinite(u_origin)) {
    throw InvalidArgument("EPI origin must be finite");
  }
}

Epi::Epi(const EpiSampling& sampling, double fill) : sampling_(sampling) {
  sampling.validate();
  data_.assign(static_cast<std::size_t>(sampling.nx) * sampling.nu, fill);
}

double Epi::sample_row(int iu, double column) const {
  const double c = std::clamp(column, 0.0, static_cast<double>(nx() - 1));
  const int i0 = std::min(static_cast<int>(c), nx() - 2);
  const double t = c - i0;
  return (1.0 - t) * at(i0, iu) + t * at(i0 + 1, iu);
}

EpiRgba render_epi_rgba(const FlatScene& scene, const EpiSampling& sampling,
                        const EpiRenderOptions& options) {
  scene.validate();
  if (options.supersample < 1) throw InvalidArgument("supersample must be at least 1");
  EpiRgba out{Epi(sampling), Epi(sampling)};
  const auto order = scene.depth_order();
  const int ss = options.supersample;
  const double inv_ss = 1.0 / ss;
  parallel_for(0, sampling.nu, options.workers, [&](int iu) {
    const double u = sampling.u(iu);
    for (int ix = 0; ix < sampling.nx; ++ix) {
      double color = 0.0, alpha = 0.0;
      for (int s = 0; s < ss; ++s) {
        const double x = sampling.x(ix) + ((s + 0.5) * inv_ss - 0.5) * sampling.dx;
        double c = 0.0, a = 0.0;
        for (int idx : order) {
          const auto& seg = scene.segments[idx];
          const double world = u + seg.depth * x / sampling.focal;
          const double cov = seg.coverage(world);
          if (cov <= 0.0) continue;
          const double t = 1.0 - a;
          c += t * cov * seg.texture(world);
          a += t * cov;
          if (a >= 1.0) break;
        }
        if (options.include_background) {
          c += (1.0 - a) * scene.background;
          a = 1.0;
        }
        color += c;
        alpha += a;
      }
      out.color.at(ix, iu) = color * inv_ss;
      out.alpha.at(ix, iu) = alpha * inv_ss;
    }
  });
  return out;
}

Epi render_epi(const FlatScene& scene, const EpiSampling& sampling,
               const EpiRenderOptions& options) {
  return render_epi_rgba(scene, sampling, options).color;
}

}  // namespace plenoptic::flatland
