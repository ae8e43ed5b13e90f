#include "plenoptic/harness/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/parallel.hpp"
#include "plenoptic/core/random.hpp"
#include "plenoptic/core/raycast.hpp"
#include "plenoptic/harness/baseline.hpp"
#include "plenoptic/harness/quality.hpp"
#include "plenoptic/mpi/fusion.hpp"
#include "plenoptic/sampling/sampling.hpp"

namespace plenoptic {
namespace {

double pick(Metric m, const CellScore& s) { return m == Metric::ssim ? s.ssim : s.psnr; }

}  // namespace

std::string_view to_string(Metric m) { return m == Metric::ssim ? "ssim" : "psnr"; }

Metric parse_metric(std::string_view name) {
  if (name == "ssim") return Metric::ssim;
  if (name == "psnr") return Metric::psnr;
  throw InvalidArgument("unknown metric '" + std::string(name) + "' (expected ssim or psnr)");
}

void SweepConfig::validate() const {
  if (scenes.size() < 3) throw InvalidArgument("sweep needs at least 3 scenes");
  if (planes.empty() || disparities.empty()) {
    throw InvalidArgument("sweep needs plane counts and disparities");
  }
  for (int d : planes) {
    if (d < 1) throw InvalidArgument("plane counts must be positive");
  }
  for (double d : disparities) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("disparities must be positive");
  }
  if (poses_per_cell < 1) throw InvalidArgument("need at least one held-out pose per cell");
  if (!(margin >= 0.0)) throw InvalidArgument("tolerance margin must be non-negative");
  if (!(pad_fraction >= 0.0) || pad_max_px < 0) throw InvalidArgument("invalid plane padding");
}

SweepConfig default_sweep_config(const SceneSuiteParams& suite) {
  SweepConfig c{make_scene_suite(suite), suite.intrinsics()};
  return c;
}

int SweepReport::failed_cells() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.failed; }));
}

std::vector<Vec2> held_out_offsets(std::uint64_t seed, int scene, int planes, double disparity,
                                   int count) {
  Rng rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(scene)),
                   mix_seed(static_cast<std::uint64_t>(planes),
                            static_cast<std::uint64_t>(std::llround(disparity * 1024.0)))));
  std::vector<Vec2> out{{0.5, 0.5}};
  while (static_cast<int>(out.size()) < count) {
    out.emplace_back(rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85));
  }
  return out;
}

FusionNeighborhood cell_neighborhood(const SuiteScene& scene, const SweepConfig& config,
                                     int planes, double disparity) {
  const auto& k = config.intrinsics;
  const double du = disparity_to_interval(disparity, k, scene.bounds.z_min());
  const int pad = std::min(config.pad_max_px,
                           static_cast<int>(std::ceil(config.pad_fraction * disparity)));
  std::vector<FusionMember> members;
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      const Camera ref{k, CameraPose::translated({i * du, j * du, 0.0})};
      members.push_back({build_mpi(scene.scene, ref, planes, scene.bounds, {pad, 1}), i, j});
    }
  }
  return FusionNeighborhood(std::move(members), du);
}

CellScore score_cell(const SuiteScene& scene, const SweepConfig& config, int planes,
                     double disparity) {
  const auto& k = config.intrinsics;
  const FusionNeighborhood hood = cell_neighborhood(scene, config, planes, disparity);
  const double du = hood.spacing();
  CellScore sum{0.0, 0.0};
  const auto offsets = held_out_offsets(config.seed, scene.id, planes, disparity,
                                        config.poses_per_cell);
  for (const auto& o : offsets) {
    const Camera novel{k, CameraPose::translated({o.x() * du, o.y() * du, 0.0})};
    const auto truth = raycast(scene.scene, k, novel.pose);
    const auto fused = render_fused(hood, novel).image;
    const auto q = image_quality(fused, truth);
    sum.ssim += q.ssim;
    sum.psnr += q.psnr;
  }
  const double n = static_cast<double>(offsets.size());
  return {sum.ssim / n, sum.psnr / n};
}

CellScore score_baseline(const SuiteScene& scene, const SweepConfig& config) {
  const auto& k = config.intrinsics;
  const double z_min = scene.bounds.z_min();
  const double du = disparity_to_interval(1.0, k, z_min);
  const auto grid = render_view_grid(scene.scene, k, Vec3::Zero(), du, 2, 2);
  CellScore sum{0.0, 0.0};
  const auto offsets = held_out_offsets(config.seed, scene.id, 0, 0.0, config.poses_per_cell);
  for (const auto& o : offsets) {
    const auto pose = CameraPose::translated({o.x() * du, o.y() * du, 0.0});
    const auto q = image_quality(nyquist_baseline(grid, pose, z_min), raycast(scene.scene, k, pose));
    sum.ssim += q.ssim;
    sum.psnr += q.psnr;
  }
  const double n = static_cast<double>(offsets.size());
  return {sum.ssim / n, sum.psnr / n};
}

double knee_of(const std::vector<SweepRow>& rows) {
  double knee = 0.0;
  for (const auto& r : rows) {
    if (r.failed || !r.within_band) break;
    knee = r.disparity;
  }
  return knee;
}

bool knee_near(double knee, int planes, const std::vector<double>& disparities) {
  std::vector<double> d = disparities;
  std::sort(d.begin(), d.end());
  // Position of D among the tested values (nearest), then one step either side.
  std::size_t centre = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (std::abs(std::log2(d[i] / planes)) < std::abs(std::log2(d[centre] / planes))) centre = i;
  }
  const std::size_t lo = centre == 0 ? 0 : centre - 1;
  const std::size_t hi = std::min(centre + 1, d.size() - 1);
  return knee >= d[lo] && knee <= d[hi];
}

SweepReport run_disparity_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<double> disparities = config.disparities;
  std::sort(disparities.begin(), disparities.end());
  std::vector<int> planes = config.planes;
  std::sort(planes.begin(), planes.end());
  const int n_scenes = static_cast<int>(config.scenes.size());

  SweepReport report{config.metric, config.margin, std::vector<double>(n_scenes), {}, {}};
  std::vector<CellScore> base(n_scenes);
  parallel_for(0, n_scenes, config.workers,
               [&](int s) { base[s] = score_baseline(config.scenes[s], config); });
  for (int s = 0; s < n_scenes; ++s) report.baselines[s] = pick(config.metric, base[s]);

  struct Cell {
    int scene, planes;
    double d;
  };
  std::vector<Cell> cells;
  for (int s = 0; s < n_scenes; ++s) {
    for (int p : planes) {
      for (double d : disparities) cells.push_back({s, p, d});
    }
  }
  std::vector<SweepRow> rows(cells.size());
  parallel_for(0, static_cast<int>(cells.size()), config.workers, [&](int i) {
    const Cell& c = cells[i];
    SweepRow row{c.scene, c.planes, c.d, NAN, NAN, NAN, report.baselines[c.scene], false, false, false, {}};
    try {
      const auto q = score_cell(config.scenes[c.scene], config, c.planes, c.d);
      row.ssim = q.ssim;
      row.psnr = q.psnr;
      row.metric = pick(config.metric, q);
      row.within_band = row.metric >= row.baseline - config.margin;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows[i] = std::move(row);
  });

  // Rows are already in (scene, planes, d) order; mark knees per run.
  for (int p : planes) {
    KneeSummary summary{p, {}, 0.0};
    int near = 0;
    for (int s = 0; s < n_scenes; ++s) {
      std::vector<SweepRow> run;
      std::size_t first = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].scene == s && rows[i].planes == p) {
          if (run.empty()) first = i;
          run.push_back(rows[i]);
        }
      }
      const double knee = knee_of(run);
      for (std::size_t i = 0; i < run.size(); ++i) {
        if (knee > 0.0 && run[i].disparity == knee) rows[first + i].knee = true;
      }
      summary.knees.push_back(knee);
      if (knee_near(knee, p, disparities)) ++near;
    }
    summary.fraction_near_planes = static_cast<double>(near) / n_scenes;
    report.knees.push_back(std::move(summary));
  }
  report.rows = std::move(rows);
  return report;
}

}  // namespace plenoptic
