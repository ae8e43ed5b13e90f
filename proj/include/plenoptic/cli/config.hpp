#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace plenoptic::cli {

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "PLENOPTIC_OUTPUT_DIR";

struct PlanOptions {
  int width = 1000;
  int height = 0;  // 0 = same as width
  std::optional<double> fov;    // horizontal, degrees
  std::optional<double> focal;  // image-plane units (pixels at pitch 1)
  double pitch = 1.0;
  double z_min = 0.5;
  double z_max = std::numeric_limits<double>::infinity();
  int planes = 1;
  double side = 1.0;
  std::optional<double> bandwidth;  // B_x, cycles per image-plane unit
  bool occluded = true;
};

struct SpectrumOptions {
  std::optional<std::filesystem::path> scene;
  bool suite = false;
  int scenes = 6;
  int nx = 256;
  int nu = 256;
  double focal = 256.0;
  double row_disparity = 0.25;  // px between adjacent EPI rows at z_min
  std::string window = "hann";
  double dilation = 1.0;
  std::optional<double> occluder_depth;
  bool heatmaps = true;
};

struct FlatlandSweepOptions {
  int scenes = 8;
  std::vector<int> planes{1, 2, 4, 8};
  std::vector<double> ratios{0.5, 1.0, 2.0};
};

struct RenderOptions {
  std::optional<std::filesystem::path> scene;
  std::vector<std::filesystem::path> mpis;
  std::vector<std::vector<double>> poses;  // camera centres [x, y, z]
  std::optional<std::filesystem::path> poses_csv;
  int width = 256;
  int height = 0;  // 0 = same as width
  double fov = 64.0;
  int planes = 32;
  std::optional<double> z_min;  // default: the scene's bounds or nearest content
  int margin = 0;
  std::string format = "png";   // png or pfm
  bool save_mpi = false;
  bool export_planes = false;
};

struct ValidateOptions {
  int scenes = 8;
  std::vector<int> planes{1, 4, 16, 64};
  std::vector<double> disparities{1, 2, 4, 8, 16, 32, 64, 128};
  std::string metric = "ssim";
  std::optional<double> margin;  // default: the metric's frozen margin
  int poses_per_cell = 4;
  bool debug_png = false;
  bool assert_knees = false;
  double knee_fraction = 0.8;  // required share of scenes per D under --assert
};

struct RunConfig {
  std::string subcommand;
  std::filesystem::path output_dir = ".";
  // Unset: every workflow uses its own fixed default seed (see --help).
  std::optional<std::uint64_t> seed;
  int verbosity = 1;
  int workers = 1;
  PlanOptions plan;
  SpectrumOptions spectrum;
  FlatlandSweepOptions flatland_sweep;
  RenderOptions render;
  ValidateOptions validate;
};

// YAML run file; every key optional, unknown keys rejected:
//   output_dir, seed, verbosity, workers
//   plan:           width height fov focal pitch zmin zmax planes side bandwidth occluded
//   spectrum:       scene suite scenes nx nu focal row_disparity window dilation
//                   occluder_depth heatmaps
//   flatland_sweep: scenes planes ratios
//   render:         scene mpi poses poses_csv width height fov planes zmin margin
//                   format save_mpi export_planes
//   validate:       scenes planes disparities metric margin poses_per_cell debug_png
//                   assert knee_fraction
// Relative paths resolve against the file's directory. `base` supplies the
// values of absent keys. An empty file yields `base` unchanged.
RunConfig load_config(const std::filesystem::path& path, const RunConfig& base = {});

}  // namespace plenoptic::cli
