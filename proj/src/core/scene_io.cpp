#include "plenoptic/core/scene_io.hpp"

#include "plenoptic/core/image_io.hpp"
#include "plenoptic/core/texture.hpp"
#include "yaml_util.hpp"

namespace plenoptic {
namespace {

ImageRGBA parse_texture(const YAML::Node& node, const std::filesystem::path& base) {
  yaml::require_keys(node, {"color", "png", "noise"}, "texture");
  if (node.size() != 1) {
    throw ParseError("texture needs exactly one of color/png/noise", yaml::line_of(node));
  }
  if (node["color"]) {
    const auto c = yaml::as_array<3>(node["color"], "texture.color");
    return ImageRGBA(1, 1, Rgba::opaque(c[0], c[1], c[2]));
  }
  if (node["png"]) {
    std::filesystem::path p = yaml::as<std::string>(node["png"], "texture.png");
    if (p.is_relative()) p = base / p;
    return read_png(p);
  }
  const YAML::Node n = node["noise"];
  yaml::require_keys(n, {"resolution", "sigma", "mean", "contrast", "seed", "alpha"},
                     "texture.noise");
  NoiseTextureParams params;
  if (n["resolution"]) {
    const auto r = yaml::as_array<2>(n["resolution"], "noise.resolution");
    params.width = static_cast<int>(r[0]);
    params.height = static_cast<int>(r[1]);
  }
  if (n["sigma"]) params.sigma_texels = yaml::as_double(n["sigma"], "noise.sigma");
  if (n["mean"]) params.mean = yaml::as_array<3>(n["mean"], "noise.mean");
  if (n["contrast"]) params.contrast = yaml::as_double(n["contrast"], "noise.contrast");
  if (n["seed"]) params.seed = yaml::as<std::uint64_t>(n["seed"], "noise.seed");
  if (n["alpha"]) params.alpha = yaml::as_double(n["alpha"], "noise.alpha");
  try {
    return smoothed_noise_texture(params);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), yaml::line_of(n));
  }
}

}  // namespace

SceneFile load_scene(const std::filesystem::path& path) {
  const YAML::Node root = yaml::load_file(path.string());
  if (!root || root.IsNull()) throw ParseError(path.string() + ": scene file is empty");
  yaml::require_keys(root, {"background", "bounds", "rectangles"}, "scene");
  SceneFile out;
  if (root["background"]) {
    const auto c = yaml::as_array<3>(root["background"], "background");
    out.scene.background = Rgba::opaque(c[0], c[1], c[2]);
  }
  if (root["bounds"]) {
    const auto b = yaml::as_array<2>(root["bounds"], "bounds");
    try {
      out.bounds = SceneBounds(b[0], b[1]);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), yaml::line_of(root["bounds"]));
    }
  }
  const YAML::Node rects = root["rectangles"];
  if (!rects || !rects.IsSequence() || rects.size() == 0) {
    throw ParseError("scene needs a non-empty 'rectangles' list", yaml::line_of(root));
  }
  const auto base = path.parent_path();
  for (const auto& node : rects) {
    yaml::require_keys(node, {"depth", "center", "size", "opacity", "texture"}, "rectangle");
    for (const char* key : {"depth", "center", "size", "texture"}) {
      if (!node[key]) {
        throw ParseError(std::string("rectangle is missing '") + key + "'", yaml::line_of(node));
      }
    }
    Rectangle r;
    r.depth = yaml::as_double(node["depth"], "depth");
    const auto c = yaml::as_array<2>(node["center"], "center");
    r.center_x = c[0];
    r.center_y = c[1];
    const auto s = yaml::as_array<2>(node["size"], "size");
    r.width = s[0];
    r.height = s[1];
    if (node["opacity"]) r.opacity = yaml::as_double(node["opacity"], "opacity");
    r.texture = parse_texture(node["texture"], base);
    out.scene.rectangles.push_back(std::move(r));
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

}  // namespace plenoptic
