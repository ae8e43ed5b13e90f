#include "plenoptic/flatland/flat_scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "../core/yaml_util.hpp"
#include "plenoptic/core/error.hpp"

namespace plenoptic::flatland {

double FlatSegment::coverage(double x) const {
  if (!covers(x)) return 0.0;
  if (feather <= 0.0) return opacity;
  const double edge = std::min(x - x_min, x_max - x);
  if (edge >= feather) return opacity;
  return opacity * 0.5 * (1.0 - std::cos(std::numbers::pi * edge / feather));
}

SceneBounds FlatScene::depth_range() const {
  if (segments.empty()) throw InvalidArgument("flat scene has no segments");
  double lo = kInfinity, hi = 0.0;
  for (const auto& s : segments) {
    lo = std::min(lo, s.depth);
    hi = std::max(hi, s.depth);
  }
  return {lo, hi};
}

void FlatScene::validate(const std::optional<SceneBounds>& bounds) const {
  if (segments.empty()) throw InvalidArgument("flat scene has no segments");
  if (!std::isfinite(background)) throw InvalidArgument("background must be finite");
  std::vector<double> offending;
  for (const auto& s : segments) {
    if (!(s.depth > 0.0) || !std::isfinite(s.depth)) {
      throw InvalidArgument("segment depth must be positive and finite");
    }
    if (!(s.x_max > s.x_min)) throw InvalidArgument("segment extent must be positive");
    if (!(s.opacity >= 0.0 && s.opacity <= 1.0)) {
      throw InvalidArgument("segment opacity must lie in [0, 1]");
    }
    if (!(s.feather >= 0.0) || 2.0 * s.feather > s.x_max - s.x_min) {
      throw InvalidArgument("segment feather must be in [0, extent / 2]");
    }
    if (bounds && !bounds->contains(s.depth)) offending.push_back(s.depth);
  }
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "flat scene content outside bounds [" << bounds->z_min() << ", " << bounds->z_max()
        << "] at depths:";
    for (double z : offending) msg << ' ' << z;
    throw OutOfBounds(msg.str());
  }
}

std::vector<int> FlatScene::depth_order() const {
  std::vector<int> order(segments.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return segments[a].depth < segments[b].depth; });
  return order;
}

namespace {

BandLimitedNoise parse_texture(const YAML::Node& node) {
  yaml::require_keys(node, {"constant", "cosine", "noise"}, "texture");
  if (node.size() != 1) {
    throw ParseError("texture needs exactly one of constant/cosine/noise", yaml::line_of(node));
  }
  if (node["constant"]) return BandLimitedNoise::constant(yaml::as_double(node["constant"], "constant"));
  if (node["cosine"]) {
    const auto c = node["cosine"];
    yaml::require_keys(c, {"frequency", "mean", "amplitude", "phase"}, "texture.cosine");
    const auto get = [&](const char* k, double def) {
      return c[k] ? yaml::as_double(c[k], k) : def;
    };
    return BandLimitedNoise::cosine(get("frequency", 1.0), get("mean", 0.5),
                                    get("amplitude", 0.2), get("phase", 0.0));
  }
  const auto n = node["noise"];
  yaml::require_keys(n, {"cutoff", "mean", "rms", "components", "seed"}, "texture.noise");
  const auto get = [&](const char* k, double def) {
    return n[k] ? yaml::as_double(n[k], k) : def;
  };
  try {
    return BandLimitedNoise(get("cutoff", 8.0), get("mean", 0.5), get("rms", 0.15),
                            n["components"] ? yaml::as<int>(n["components"], "components") : 32,
                            n["seed"] ? yaml::as<std::uint64_t>(n["seed"], "seed") : 1);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), yaml::line_of(n));
  }
}

}  // namespace

FlatSceneFile load_flat_scene(const std::filesystem::path& path) {
  const YAML::Node root = yaml::load_file(path.string());
  if (!root || root.IsNull()) throw ParseError(path.string() + ": scene file is empty");
  yaml::require_keys(root, {"background", "bounds", "segments"}, "flat scene");
  FlatSceneFile out;
  if (root["background"]) out.scene.background = yaml::as_double(root["background"], "background");
  if (root["bounds"]) {
    const auto b = yaml::as_array<2>(root["bounds"], "bounds");
    try {
      out.bounds = SceneBounds(b[0], b[1]);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), yaml::line_of(root["bounds"]));
    }
  }
  const auto segs = root["segments"];
  if (!segs || !segs.IsSequence() || segs.size() == 0) {
    throw ParseError("flat scene needs a non-empty 'segments' list", yaml::line_of(root));
  }
  for (const auto& node : segs) {
    yaml::require_keys(node, {"depth", "extent", "opacity", "feather", "texture"}, "segment");
    for (const char* key : {"depth", "extent", "texture"}) {
      if (!node[key]) {
        throw ParseError(std::string("segment is missing '") + key + "'", yaml::line_of(node));
      }
    }
    FlatSegment s;
    s.depth = yaml::as_double(node["depth"], "depth");
    const auto e = yaml::as_array<2>(node["extent"], "extent");
    s.x_min = e[0];
    s.x_max = e[1];
    if (node["opacity"]) s.opacity = yaml::as_double(node["opacity"], "opacity");
    if (node["feather"]) s.feather = yaml::as_double(node["feather"], "feather");
    s.texture = parse_texture(node["texture"]);
    out.scene.segments.push_back(std::move(s));
  }
  try {
    out.scene.validate(out.bounds);
  } catch (const OutOfBounds&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace plenoptic::flatland
