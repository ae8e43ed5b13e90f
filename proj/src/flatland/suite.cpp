#include "plenoptic/flatland/suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/parallel.hpp"
#include "plenoptic/core/random.hpp"
#include "plenoptic/sampling/sampling.hpp"

namespace plenoptic::flatland {
namespace {

// Image interval of a segment seen from camera u.
std::pair<double, double> image_extent(const FlatSegment& s, double focal, double u) {
  return {focal * (s.x_min - u) / s.depth, focal * (s.x_max - u) / s.depth};
}

FlatSegment segment_at(double depth, double center_px, double width_px, double u,
                       double focal, double feather_px, BandLimitedNoise texture) {
  const double scale = depth / focal;  // world units per pixel at this depth
  FlatSegment s;
  s.depth = depth;
  s.x_min = u + (center_px - 0.5 * width_px) * scale;
  s.x_max = u + (center_px + 0.5 * width_px) * scale;
  s.feather = std::min(feather_px * scale, 0.5 * (s.x_max - s.x_min));
  s.texture = std::move(texture);
  return s;
}

}  // namespace

bool segments_separated(const FlatScene& scene, double focal, double u0, double u1) {
  const auto& segs = scene.segments;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      bool i_left = true, j_left = true;
      for (double u : {u0, u1}) {
        const auto a = image_extent(segs[i], focal, u);
        const auto b = image_extent(segs[j], focal, u);
        i_left = i_left && a.second <= b.first;
        j_left = j_left && b.second <= a.first;
      }
      if (!i_left && !j_left) return false;
    }
  }
  return true;
}

std::vector<SpectrumScenePair> spectrum_suite(const SpectrumSuiteParams& p) {
  if (p.scenes < 1 || p.segments < 1) throw InvalidArgument("suite needs scenes and segments");
  const SceneBounds bounds(p.z_min, p.z_max);
  const double du = p.row_disparity * p.z_min / p.focal;
  const double span = du * (p.nu - 1);
  const auto sampling = EpiSampling::centered(p.nx, p.nu, 1.0, du, p.focal, -0.5 * span);
  const double u_mid = 0.0;
  const double rho_lo = bounds.min_disparity(), rho_hi = bounds.max_disparity();

  std::vector<SpectrumScenePair> out;
  for (int id = 0; id < p.scenes; ++id) {
    Rng rng(mix_seed(p.seed, static_cast<std::uint64_t>(id)));
    // One depth per disparity stratum, in shuffled lateral order. The nearest
    // stratum stops short of z_min, which is reserved for the occluder.
    std::vector<double> depths(p.segments);
    for (int k = 0; k < p.segments; ++k) {
      const double rel = (k + 0.15 + 0.6 * rng.uniform()) / p.segments;
      depths[k] = 1.0 / (rho_lo + rel * 0.9 * (rho_hi - rho_lo));
    }
    for (int k = p.segments - 1; k > 0; --k) std::swap(depths[k], depths[rng.uniform_int(0, k)]);

    FlatScene clear;
    double left_px = -0.5 * p.nx + 8.0;
    double prev_rho = 0.0;
    for (int k = 0; k < p.segments; ++k) {
      const double z = depths[k];
      const double rho = 1.0 / z;
      if (k > 0) left_px += std::abs(rho - prev_rho) * p.focal * 0.5 * span + 8.0;
      const double width = rng.uniform(40.0, 64.0);
      BandLimitedNoise tex(p.cutoff * p.focal / z, 0.0, 0.2, 48, rng.next_u64());
      clear.segments.push_back(
          segment_at(z, left_px + 0.5 * width, width, u_mid, p.focal, p.feather_px, tex));
      left_px += width;
      prev_rho = rho;
    }
    if (!segments_separated(clear, p.focal, sampling.u(0), sampling.u(p.nu - 1))) {
      throw Error("spectrum suite layout overlaps; widen the image or shrink the span");
    }

    const auto far_it = std::max_element(depths.begin(), depths.end());
    const auto& far = clear.segments[static_cast<std::size_t>(far_it - depths.begin())];
    const double far_center_px = p.focal * (0.5 * (far.x_min + far.x_max) - u_mid) / far.depth;
    FlatScene occluded = clear;
    BandLimitedNoise occ_tex(p.cutoff * p.focal / p.z_min, 0.0, 0.2, 48, rng.next_u64());
    occluded.segments.push_back(segment_at(p.z_min, far_center_px, p.occluder_width_px, u_mid,
                                           p.focal, p.feather_px, occ_tex));
    out.push_back({id, std::move(clear), std::move(occluded), p.z_min, bounds, sampling});
  }
  return out;
}

std::vector<SpectrumRow> run_spectrum_suite(const SpectrumSuiteParams& params,
                                            double parallelogram_dilation, int workers) {
  const auto suite = spectrum_suite(params);
  std::vector<std::array<SpectrumRow, 3>> rows(suite.size());
  parallel_for(0, static_cast<int>(suite.size()), workers, [&](int i) {
    const auto& pair = suite[i];
    SupportSpec wedge;
    wedge.z_near = pair.bounds.z_min();
    wedge.z_far = pair.bounds.z_max();
    SupportSpec para = wedge;
    para.kind = SupportKind::parallelogram;
    para.occluder_depth = pair.occluder_depth;
    para.dilation = parallelogram_dilation;
    const auto clear = epi_spectrum(render_epi(pair.clear, pair.sampling), Window::hann);
    const auto occ = epi_spectrum(render_epi(pair.occluded, pair.sampling), Window::hann);
    rows[i] = {SpectrumRow{pair.id, false, wedge.kind, support_energy(clear, wedge).energy_in_support},
               SpectrumRow{pair.id, true, wedge.kind, support_energy(occ, wedge).energy_in_support},
               SpectrumRow{pair.id, true, para.kind, support_energy(occ, para).energy_in_support}};
  });
  std::vector<SpectrumRow> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

double FlatlandSweepReport::psnr(int scene, int planes, double ratio) const {
  for (const auto& r : rows) {
    if (r.scene == scene && r.planes == planes && r.ratio == ratio) return r.psnr;
  }
  throw InvalidArgument("sweep cell not present");
}

FlatScene sweep_scene(const FlatlandSweepConfig& c, int k) {
  Rng rng(mix_seed(c.seed, static_cast<std::uint64_t>(k)));
  const double rho_max = 1.0 / c.z_min;
  const double du1 = 1.0 / (2.0 * c.cutoff * c.focal * rho_max);
  const double span = du1 * c.span_intervals;
  const double u_mid = 0.5 * span;
  const auto texture = [&](double z) {
    return BandLimitedNoise(c.cutoff * c.focal / z, rng.uniform(0.35, 0.65), 0.15, 48,
                            rng.next_u64());
  };

  FlatScene scene;
  scene.background = 0.0;
  for (int s = 0; s < c.strata; ++s) {
    // Full-width jitter keeps every bin's disparity offsets uniform for any D
    // dividing the strata count.
    const double rel = (s + (s == 0 ? 0.5 : rng.uniform())) / c.strata;
    const double z = 1.0 / (rel * rho_max);
    if (s == 0) {
      // Wall wide enough to fill every view, including reprojection margins.
      const double half_px = c.nx + 128.0;
      scene.segments.push_back(segment_at(z, 0.0, 2.0 * half_px, u_mid, c.focal, 0.0, texture(z)));
      continue;
    }
    const double width = rng.uniform(c.width_px_min, c.width_px_max);
    const double center = rng.uniform(-0.35 * c.nx, 0.35 * c.nx);
    scene.segments.push_back(segment_at(z, center, width, u_mid, c.focal, 3.0, texture(z)));
  }
  return scene;
}

FlatlandSweepReport run_flatland_sweep(const FlatlandSweepConfig& c) {
  if (c.scenes < 1 || c.planes.empty() || c.ratios.empty()) {
    throw InvalidArgument("flatland sweep needs scenes, plane counts and ratios");
  }
  if (!(c.cutoff > 0.0 && c.cutoff <= 0.5)) {
    throw InvalidArgument("texture cutoff must lie in (0, 0.5] cycles per pixel");
  }
  const SceneBounds bounds = SceneBounds::unbounded_far(c.z_min);
  const SamplingInputs inputs{CameraIntrinsics(c.focal, 1.0, c.nx, 1), bounds,
                              Bandwidth::limited(c.cutoff), 1, true};
  const double du1 = nyquist_interval(inputs).value();
  const int dense_nu = c.span_intervals * c.dense_per_interval + 1;
  const auto target =
      EpiSampling::centered(c.nx, dense_nu, 1.0, du1 / c.dense_per_interval, c.focal, 0.0);

  struct Cell {
    int scene, planes;
    double ratio;
    int views;
  };
  std::vector<Cell> cells;
  for (int s = 0; s < c.scenes; ++s) {
    for (int d : c.planes) {
      if (d < 1) throw InvalidArgument("plane counts must be positive");
      for (double r : c.ratios) {
        const double intervals = c.span_intervals / (r * d);
        const double rounded = std::round(intervals);
        if (!(r > 0.0) || rounded < 1.0 || std::abs(intervals - rounded) > 1e-9) {
          throw InvalidArgument("ratio * planes must divide the u-span of " +
                                std::to_string(c.span_intervals) + " intervals");
        }
        cells.push_back({s, d, r, static_cast<int>(rounded) + 1});
      }
    }
  }

  std::vector<FlatScene> scenes;
  for (int s = 0; s < c.scenes; ++s) scenes.push_back(sweep_scene(c, s));
  std::vector<Epi> truths(c.scenes);
  parallel_for(0, c.scenes, c.workers, [&](int s) { truths[s] = render_epi(scenes[s], target); });

  std::vector<FlatlandSweepRow> rows(cells.size());
  parallel_for(0, static_cast<int>(cells.size()), c.workers, [&](int i) {
    const Cell& cell = cells[i];
    const double du = cell.ratio * cell.planes * du1;
    // Margin columns keep reprojection inside the sparse views.
    const double max_shift = c.focal * du / layer_depths(bounds, cell.planes).back();
    const int margin = static_cast<int>(std::ceil(max_shift)) + 2;
    auto sparse = EpiSampling::centered(c.nx + 2 * margin, cell.views, 1.0, du, c.focal, 0.0);
    const auto layers = decompose_layers(scenes[cell.scene], sparse, bounds, cell.planes);
    const auto recon = layered_reconstruct(layers, target);
    const auto err = reconstruction_error(recon, truths[cell.scene]);
    rows[i] = {cell.scene, cell.planes, cell.ratio, du, err.mse, err.psnr};
  });
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.scene, a.planes, a.ratio) < std::tie(b.scene, b.planes, b.ratio);
  });
  return {du1, std::move(rows)};
}

}  // namespace plenoptic::flatland
