#pragma once

#include <cstdint>
#include <vector>

#include "plenoptic/flatland/epi.hpp"
#include "plenoptic/flatland/layered.hpp"
#include "plenoptic/flatland/support.hpp"

namespace plenoptic::flatland {

// True when no two segments' images overlap for any camera in [u0, u1].
// Segment image edges move linearly in u, so checking the ends suffices.
bool segments_separated(const FlatScene& scene, double focal, double u0, double u1);

struct SpectrumSuiteParams {
  int scenes = 6;
  int nx = 256;
  int nu = 256;
  double focal = 256.0;  // pixels (dx = 1)
  double z_min = 1.0;
  double z_max = 4.0;
  int segments = 3;
  // Texture bandwidth on the sensor, cycles per pixel.
  double cutoff = 0.3;
  // Disparity of z_min between adjacent EPI rows, pixels.
  double row_disparity = 0.25;
  double feather_px = 4.0;
  double occluder_width_px = 32.0;
  std::uint64_t seed = 20241;
};

// A laterally separated (occlusion-free) scene and the same scene with an
// opaque occluder at z_min in front of its farthest segment.
struct SpectrumScenePair {
  int id;
  FlatScene clear;
  FlatScene occluded;
  double occluder_depth;
  SceneBounds bounds;
  EpiSampling sampling;
};

std::vector<SpectrumScenePair> spectrum_suite(const SpectrumSuiteParams& params);

struct SpectrumRow {
  int scene;
  bool occluded;
  SupportKind kind;
  double energy;
};

// Hann-windowed wedge fractions for both variants and the parallelogram
// fraction of the occluded one.
std::vector<SpectrumRow> run_spectrum_suite(const SpectrumSuiteParams& params,
                                            double parallelogram_dilation, int workers = 1);

struct FlatlandSweepConfig {
  int scenes = 8;
  std::vector<int> planes{1, 2, 4, 8};
  // Sparse spacing as a multiple of D times the single-plane bound.
  std::vector<double> ratios{0.5, 1.0, 2.0};
  int nx = 256;
  double focal = 256.0;
  double z_min = 1.0;
  // Texture bandwidth, cycles per pixel; sets K_x and hence the bound.
  double cutoff = 0.25;
  int strata = 64;
  // Image-space widths of the stratified segments at the span centre.
  double width_px_min = 6.0;
  double width_px_max = 16.0;
  // Dense rows per single-plane interval and the u-span in intervals.
  int dense_per_interval = 8;
  int span_intervals = 32;
  std::uint64_t seed = 7;
  int workers = 1;
};

struct FlatlandSweepRow {
  int scene;
  int planes;
  double ratio;
  double delta_u;
  double mse;
  double psnr;
};

struct FlatlandSweepReport {
  double nyquist_interval;  // single-plane occluded bound for the suite
  std::vector<FlatlandSweepRow> rows;  // sorted by (scene, planes, ratio)

  // PSNR of the given cell; throws InvalidArgument if absent.
  double psnr(int scene, int planes, double ratio) const;
};

// Scene k of the sweep suite: a full-width far wall plus segments stratified
// in disparity over (0, 1/z_min], all visible somewhere in the span.
FlatScene sweep_scene(const FlatlandSweepConfig& config, int k);

FlatlandSweepReport run_flatland_sweep(const FlatlandSweepConfig& config);

}  // namespace plenoptic::flatland
