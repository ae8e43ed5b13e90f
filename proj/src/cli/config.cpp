#include "plenoptic/cli/config.hpp"

#include <type_traits>

#include "core/yaml_util.hpp"

namespace plenoptic::cli {
namespace {

namespace fs = std::filesystem;
using plenoptic::yaml::as;
using plenoptic::yaml::as_double;
using plenoptic::yaml::line_of;
using plenoptic::yaml::require_keys;

template <typename T>
void read(const YAML::Node& map, const char* key, T& out) {
  if (const auto n = map[key]) out = as<T>(n, key);
}
void read(const YAML::Node& map, const char* key, double& out) {
  if (const auto n = map[key]) out = as_double(n, key);
}
void read(const YAML::Node& map, const char* key, std::optional<double>& out) {
  if (const auto n = map[key]) out = as_double(n, key);
}
void read_path(const YAML::Node& map, const char* key, const fs::path& dir,
               std::optional<fs::path>& out) {
  if (const auto n = map[key]) out = dir / as<std::string>(n, key);
}

template <typename T>
void read_list(const YAML::Node& map, const char* key, std::vector<T>& out) {
  const auto n = map[key];
  if (!n) return;
  if (!n.IsSequence()) throw ParseError(std::string(key) + " must be a list", line_of(n));
  out.clear();
  for (const auto& v : n) {
    if constexpr (std::is_same_v<T, double>) {
      out.push_back(as_double(v, key));
    } else {
      out.push_back(as<T>(v, key));
    }
  }
}

void read_plan(const YAML::Node& n, PlanOptions& o) {
  require_keys(n, {"width", "height", "fov", "focal", "pitch", "zmin", "zmax", "planes", "side",
                   "bandwidth", "occluded"},
               "plan");
  read(n, "width", o.width);
  read(n, "height", o.height);
  read(n, "fov", o.fov);
  read(n, "focal", o.focal);
  if (n["fov"] && n["focal"]) {
    throw ParseError("plan: give either fov or focal, not both", line_of(n["focal"]));
  }
  if (n["fov"]) o.focal.reset();
  if (n["focal"]) o.fov.reset();
  read(n, "pitch", o.pitch);
  read(n, "zmin", o.z_min);
  read(n, "zmax", o.z_max);
  read(n, "planes", o.planes);
  read(n, "side", o.side);
  read(n, "bandwidth", o.bandwidth);
  read(n, "occluded", o.occluded);
}

void read_spectrum(const YAML::Node& n, const fs::path& dir, SpectrumOptions& o) {
  require_keys(n, {"scene", "suite", "scenes", "nx", "nu", "focal", "row_disparity", "window",
                   "dilation", "occluder_depth", "heatmaps"},
               "spectrum");
  read_path(n, "scene", dir, o.scene);
  read(n, "suite", o.suite);
  read(n, "scenes", o.scenes);
  read(n, "nx", o.nx);
  read(n, "nu", o.nu);
  read(n, "focal", o.focal);
  read(n, "row_disparity", o.row_disparity);
  read(n, "window", o.window);
  read(n, "dilation", o.dilation);
  read(n, "occluder_depth", o.occluder_depth);
  read(n, "heatmaps", o.heatmaps);
}

void read_flatland(const YAML::Node& n, FlatlandSweepOptions& o) {
  require_keys(n, {"scenes", "planes", "ratios"}, "flatland_sweep");
  read(n, "scenes", o.scenes);
  read_list(n, "planes", o.planes);
  read_list(n, "ratios", o.ratios);
}

void read_render(const YAML::Node& n, const fs::path& dir, RenderOptions& o) {
  require_keys(n, {"scene", "mpi", "poses", "poses_csv", "width", "height", "fov", "planes",
                   "zmin", "margin", "format", "save_mpi", "export_planes"},
               "render");
  read_path(n, "scene", dir, o.scene);
  if (const auto m = n["mpi"]) {
    std::vector<std::string> names;
    read_list(n, "mpi", names);
    o.mpis.clear();
    for (const auto& s : names) o.mpis.push_back(dir / s);
  }
  if (const auto p = n["poses"]) {
    if (!p.IsSequence()) throw ParseError("poses must be a list of [x, y, z]", line_of(p));
    o.poses.clear();
    for (const auto& v : p) {
      const auto a = plenoptic::yaml::as_array<3>(v, "poses");
      o.poses.push_back({a[0], a[1], a[2]});
    }
  }
  read_path(n, "poses_csv", dir, o.poses_csv);
  read(n, "width", o.width);
  read(n, "height", o.height);
  read(n, "fov", o.fov);
  read(n, "planes", o.planes);
  read(n, "zmin", o.z_min);
  read(n, "margin", o.margin);
  read(n, "format", o.format);
  read(n, "save_mpi", o.save_mpi);
  read(n, "export_planes", o.export_planes);
}

void read_validate(const YAML::Node& n, ValidateOptions& o) {
  require_keys(n, {"scenes", "planes", "disparities", "metric", "margin", "poses_per_cell",
                   "debug_png", "assert", "knee_fraction"},
               "validate");
  read(n, "scenes", o.scenes);
  read_list(n, "planes", o.planes);
  read_list(n, "disparities", o.disparities);
  read(n, "metric", o.metric);
  read(n, "margin", o.margin);
  read(n, "poses_per_cell", o.poses_per_cell);
  read(n, "debug_png", o.debug_png);
  read(n, "assert", o.assert_knees);
  read(n, "knee_fraction", o.knee_fraction);
}

}  // namespace

RunConfig load_config(const fs::path& path, const RunConfig& base) {
  if (!fs::exists(path)) throw IoError("config file not found: " + path.string());
  const YAML::Node root = plenoptic::yaml::load_file(path.string());
  RunConfig cfg = base;
  if (root.IsNull()) return cfg;
  const fs::path dir = path.parent_path();
  require_keys(root, {"output_dir", "seed", "verbosity", "workers", "plan", "spectrum",
                      "flatland_sweep", "render", "validate"},
               "config");
  if (const auto n = root["output_dir"]) cfg.output_dir = dir / as<std::string>(n, "output_dir");
  if (const auto n = root["seed"]) cfg.seed = as<std::uint64_t>(n, "seed");
  read(root, "verbosity", cfg.verbosity);
  read(root, "workers", cfg.workers);
  if (const auto n = root["plan"]) read_plan(n, cfg.plan);
  if (const auto n = root["spectrum"]) read_spectrum(n, dir, cfg.spectrum);
  if (const auto n = root["flatland_sweep"]) read_flatland(n, cfg.flatland_sweep);
  if (const auto n = root["render"]) read_render(n, dir, cfg.render);
  if (const auto n = root["validate"]) read_validate(n, cfg.validate);
  return cfg;
}

}  // namespace plenoptic::cli
