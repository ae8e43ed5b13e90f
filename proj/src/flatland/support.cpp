#include "plenoptic/flatland/support.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "plenoptic/core/error.hpp"

namespace plenoptic::flatland {
namespace {

struct Pt {
  double a, b;
};

// Half-plane n_a * a + n_b * b + c >= 0.
struct HalfPlane {
  double na, nb, c;
  double eval(const Pt& p) const { return na * p.a + nb * p.b + c; }
};

constexpr double kEps = 1e-9;

// Sutherland-Hodgman clip of a convex polygon against one half-plane, with a
// small tolerance so regions of zero area (a single line) still register.
std::vector<Pt> clip(const std::vector<Pt>& poly, const HalfPlane& h) {
  std::vector<Pt> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& p = poly[i];
    const Pt& q = poly[(i + 1) % n];
    const double fp = h.eval(p) + kEps;
    const double fq = h.eval(q) + kEps;
    if (fp >= 0.0) out.push_back(p);
    if ((fp >= 0.0) != (fq >= 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.a + t * (q.a - p.a), p.b + t * (q.b - p.b)});
    }
  }
  return out;
}

bool intersects(double a, double b, std::initializer_list<HalfPlane> planes) {
  std::vector<Pt> poly{{a - 0.5, b - 0.5}, {a + 0.5, b - 0.5}, {a + 0.5, b + 0.5},
                       {a - 0.5, b + 0.5}};
  for (const auto& h : planes) {
    poly = clip(poly, h);
    if (poly.empty()) return false;
  }
  return true;
}

int wrap(int k, int n) { return ((k % n) + n) % n; }

}  // namespace

std::string_view to_string(SupportKind k) {
  switch (k) {
    case SupportKind::double_wedge: return "double_wedge";
    case SupportKind::parallelogram: return "parallelogram";
    case SupportKind::layer_wedge: return "layer_wedge";
  }
  return "unknown";
}

SupportKind parse_support_kind(std::string_view name) {
  for (auto k : {SupportKind::double_wedge, SupportKind::parallelogram, SupportKind::layer_wedge}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown support kind '" + std::string(name) + "'");
}

std::vector<BinClass> support_mask(const EpiSpectrum& spectrum, const SupportSpec& spec) {
  if (!(spec.z_near > 0.0) || !(spec.z_far >= spec.z_near)) {
    throw InvalidArgument("support needs 0 < z_near <= z_far (slope f/z_near >= f/z_far)");
  }
  if (spec.guard < 0) throw InvalidArgument("guard width must be non-negative");
  const double s_hi = spectrum.index_slope(spec.z_near);
  const double s_lo = spectrum.index_slope(spec.z_far);

  const bool band = spec.kind == SupportKind::parallelogram;
  double s_o = 0.0, half_height = 0.0, kappa = 0.0;
  if (band) {
    if (!spec.occluder_depth || !(*spec.occluder_depth > 0.0)) {
      throw InvalidArgument("parallelogram support needs a positive occluder depth");
    }
    if (!(spec.dilation >= 0.0)) throw InvalidArgument("dilation must be non-negative");
    const auto& s = spectrum.sampling();
    const double kx = spec.spatial_bandwidth.value_or(0.5 / s.dx);
    if (!(kx > 0.0)) throw InvalidArgument("spatial bandwidth must be positive");
    kappa = kx * s.nx * s.dx;  // in bins
    s_o = spectrum.index_slope(*spec.occluder_depth);
    half_height = spec.dilation * kappa * std::max(std::abs(s_hi - s_o), std::abs(s_lo - s_o));
  }

  const int nx = spectrum.nx(), nu = spectrum.nu();
  std::vector<BinClass> mask(static_cast<std::size_t>(nx) * nu, BinClass::outside);
  for (int b = spectrum.min_b(); b <= spectrum.max_b(); ++b) {
    for (int a = spectrum.min_a(); a <= spectrum.max_a(); ++a) {
      bool in = (a == 0 && b == 0) ||
                intersects(a, b, {{-s_lo, 1.0, 0.0}, {s_hi, -1.0, 0.0}}) ||
                intersects(a, b, {{s_lo, -1.0, 0.0}, {-s_hi, 1.0, 0.0}});
      if (!in && band) {
        in = intersects(a, b, {{1.0, 0.0, kappa}, {-1.0, 0.0, kappa},
                               {-s_o, 1.0, half_height}, {s_o, -1.0, half_height}});
      }
      if (in) mask[static_cast<std::size_t>(wrap(b, nu)) * nx + wrap(a, nx)] = BinClass::inside;
    }
  }

  if (spec.guard > 0) {
    auto grown = mask;
    for (int v = 0; v < nu; ++v) {
      for (int x = 0; x < nx; ++x) {
        if (mask[static_cast<std::size_t>(v) * nx + x] != BinClass::inside) continue;
        for (int dv = -spec.guard; dv <= spec.guard; ++dv) {
          for (int dxi = -spec.guard; dxi <= spec.guard; ++dxi) {
            auto& g = grown[static_cast<std::size_t>(wrap(v + dv, nu)) * nx + wrap(x + dxi, nx)];
            if (g == BinClass::outside) g = BinClass::guard;
          }
        }
      }
    }
    mask = std::move(grown);
  }
  return mask;
}

SpectrumReport support_energy(const EpiSpectrum& spectrum, const SupportSpec& spec) {
  const auto mask = support_mask(spectrum, spec);
  const auto& bins = spectrum.bins();
  double e_in = 0.0, e_out = 0.0;
  int inside = 0, guard = 0;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double p = std::norm(bins[i]);
    switch (mask[i]) {
      case BinClass::inside: e_in += p; ++inside; break;
      case BinClass::outside: e_out += p; break;
      case BinClass::guard: ++guard; break;
    }
  }
  const double total = e_in + e_out;
  const auto& s = spectrum.sampling();
  return {total > 0.0 ? e_in / total : 1.0,
          spec.kind,
          s.focal / spec.z_near,
          std::isinf(spec.z_far) ? 0.0 : s.focal / spec.z_far,
          spectrum.window(),
          inside,
          guard};
}

}  // namespace plenoptic::flatland
