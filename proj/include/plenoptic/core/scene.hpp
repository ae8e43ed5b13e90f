#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plenoptic/core/camera.hpp"
#include "plenoptic/core/image.hpp"

namespace plenoptic {

// Textured rectangle parallel to the world XY plane at world depth Z = depth.
// Texture row 0 lies at Y = center_y - height/2 (world Y points down, like
// image rows); the texture alpha times `opacity` is the coverage.
struct Rectangle {
  double depth = 1.0;
  double center_x = 0.0;
  double center_y = 0.0;
  double width = 1.0;
  double height = 1.0;
  ImageRGBA texture;
  double opacity = 1.0;

  // Premultiplied sample where the ray origin + s*dir (s > 0) crosses the
  // rectangle, or nullopt on a miss.
  std::optional<Rgba> sample_along_ray(const Vec3& origin, const Vec3& direction) const;
  // Texture lookup at a world point on the rectangle's plane (no bounds test).
  Rgba sample_at(double world_x, double world_y) const;
  bool covers(double world_x, double world_y) const;
};

struct SyntheticScene {
  std::vector<Rectangle> rectangles;
  Rgba background = Rgba::opaque(0.0, 0.0, 0.0);

  // Tightest bounds containing every rectangle.
  SceneBounds depth_range() const;
  // Throws InvalidArgument for empty scenes or bad textures and OutOfBounds
  // (listing offending depths) when content leaves `bounds`.
  void validate(const std::optional<SceneBounds>& bounds = std::nullopt) const;

  // Indices of rectangles sorted front to back (depth, then declaration order).
  std::vector<int> depth_order() const;

  // Rigid motions that keep rectangles fronto-parallel.
  SyntheticScene translated(const Vec3& offset) const;
  // Half turn about the world Z axis through the origin.
  SyntheticScene rotated_half_turn() const;
};

}  // namespace plenoptic
