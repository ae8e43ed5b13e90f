#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plenoptic/harness/scene_suite.hpp"
#include "plenoptic/mpi/fusion.hpp"

namespace plenoptic {

enum class Metric { ssim, psnr };
std::string_view to_string(Metric m);
Metric parse_metric(std::string_view name);

// Tolerance below the baseline for SSIM, calibrated once on the D = 1, d = 1
// cells of the default suite (largest gap 0.0073, rounded up to the next
// 0.005) and then frozen.
inline constexpr double kSsimMargin = 0.01;
// PSNR counterpart, dB.
inline constexpr double kPsnrMargin = 1.0;

struct SweepConfig {
  std::vector<SuiteScene> scenes;
  CameraIntrinsics intrinsics;
  std::vector<int> planes{1, 4, 16, 64};
  std::vector<double> disparities{1, 2, 4, 8, 16, 32, 64, 128};
  // Held-out poses per cell: the cell centre plus random interior points.
  int poses_per_cell = 4;
  Metric metric = Metric::ssim;
  double margin = kSsimMargin;
  // MPI planes are padded by min(max, ceil(fraction * d)) pixels per side.
  double pad_fraction = 0.5;
  int pad_max_px = 48;
  std::uint64_t seed = 99;
  int workers = 1;

  void validate() const;
};

SweepConfig default_sweep_config(const SceneSuiteParams& suite = {});

struct SweepRow {
  int scene;
  int planes;
  double disparity;
  double ssim;
  double psnr;
  double metric;     // the configured metric
  double baseline;   // same metric for the scene's dense-grid baseline
  bool within_band;  // metric >= baseline - margin
  bool knee;         // last d of an unbroken within-band run from the smallest d
  bool failed;
  std::string error;
};

struct KneeSummary {
  int planes;
  std::vector<double> knees;  // per scene; 0 when even the smallest d misses the band
  // Fraction of scenes whose knee lies within one tested doubling of d = D.
  double fraction_near_planes;
};

struct SweepReport {
  Metric metric;
  double margin;
  std::vector<double> baselines;  // per scene
  std::vector<SweepRow> rows;     // sorted by (scene, planes, disparity)
  std::vector<KneeSummary> knees;

  int failed_cells() const;
};

// Held-out pose offsets inside a cell, as fractions of the cell side; first
// is the centre. Deterministic in (seed, scene, planes, disparity).
std::vector<Vec2> held_out_offsets(std::uint64_t seed, int scene, int planes, double disparity,
                                   int count);

// Metric of one held-out pose set for a 2x2 local light field grid with
// adjacent-view disparity d at z_min.
struct CellScore {
  double ssim;
  double psnr;
};
// The 2x2 grid of MPIs a cell is scored on, members at (i, j) * du.
FusionNeighborhood cell_neighborhood(const SuiteScene& scene, const SweepConfig& config,
                                     int planes, double disparity);
CellScore score_cell(const SuiteScene& scene, const SweepConfig& config, int planes,
                     double disparity);

// Dense-grid (1 px) baseline scores of one scene.
CellScore score_baseline(const SuiteScene& scene, const SweepConfig& config);

// Largest tested d such that every tested d' <= d is within band, given rows
// of one (scene, D) sorted by d; 0 if the first misses.
double knee_of(const std::vector<SweepRow>& rows);

// True when `knee` is within one tested doubling of `planes`.
bool knee_near(double knee, int planes, const std::vector<double>& disparities);

SweepReport run_disparity_sweep(const SweepConfig& config);

}  // namespace plenoptic
