#pragma once

#include <vector>

#include "plenoptic/core/camera.hpp"
#include "plenoptic/core/image.hpp"
#include "plenoptic/core/scene.hpp"

namespace plenoptic {

// D depths evenly spaced in disparity, far to near: 1/z runs from 1/z_max
// (0 for an infinite far bound, giving depth +inf) to 1/z_min inclusive.
// A single plane sits at the middle disparity (harmonic-mean depth).
std::vector<double> plane_depths(int planes, const SceneBounds& bounds);

// Reference camera plus premultiplied RGBA planes ordered far to near.
class MultiplaneImage {
 public:
  MultiplaneImage(Camera reference, std::vector<double> depths, std::vector<ImageRGBA> planes);

  const Camera& reference() const { return reference_; }
  int plane_count() const { return static_cast<int>(planes_.size()); }
  const std::vector<double>& depths() const { return depths_; }
  const std::vector<ImageRGBA>& planes() const { return planes_; }
  const ImageRGBA& plane(int k) const { return planes_.at(static_cast<std::size_t>(k)); }

  // Back-to-front over of all planes at the reference view.
  ImageRGBA flatten() const;

 private:
  Camera reference_;
  std::vector<double> depths_;
  std::vector<ImageRGBA> planes_;
};

struct MpiBuildOptions {
  // Extra pixels on each side of every plane, so warped views still find
  // content near the reference frustum's edge. 0 keeps frustum-sized planes.
  int margin_px = 0;
  int workers = 1;
};

// Ground-truth construction: each rectangle goes to its nearest plane in
// disparity; within a plane its rectangles are over-composited near to far
// along reference rays, keeping content hidden by nearer planes. The
// background fills the farthest plane. Throws OutOfBounds when the scene
// leaves `bounds`.
MultiplaneImage build_mpi(const SyntheticScene& scene, const Camera& reference, int planes,
                          const SceneBounds& bounds, const MpiBuildOptions& options = {});

// Plane index that build_mpi assigns to depth z.
int nearest_plane(const std::vector<double>& depths, double z);

}  // namespace plenoptic
