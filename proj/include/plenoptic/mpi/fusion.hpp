#pragma once

#include <vector>

#include "plenoptic/mpi/render.hpp"

namespace plenoptic {

struct FusionMember {
  MultiplaneImage mpi;
  int i;  // grid column
  int j;  // grid row
};

// MPIs at grid cameras spaced `spacing` apart. Blending uses the reference
// camera centres, so the grid indices only have to be distinct.
class FusionNeighborhood {
 public:
  FusionNeighborhood(std::vector<FusionMember> members, double spacing);

  const std::vector<FusionMember>& members() const { return members_; }
  double spacing() const { return spacing_; }

 private:
  std::vector<FusionMember> members_;
  double spacing_;
};

struct BlendWeights {
  std::vector<double> weights;  // one per member, sum 1
  // True when the pose is outside every member's tent support, in which case
  // the nearest member takes all the weight.
  bool extrapolated;
};

// Separable tent weights max(0, 1 - |dx|/spacing) * max(0, 1 - |dy|/spacing)
// on the camera-plane offset from each member, normalised.
BlendWeights blend_weights(const CameraPose& novel, const FusionNeighborhood& neighborhood);

struct FusedRender {
  ImageRGBA image;
  bool extrapolated;
};

// Renders every member with non-zero weight and blends per pixel with the
// weights scaled by each render's alpha, so a member that sees nothing at a
// pixel contributes nothing there. Where no member has alpha the plain
// weights are used.
FusedRender render_fused(const FusionNeighborhood& neighborhood, const Camera& novel,
                         const MpiRenderOptions& options = {});

}  // namespace plenoptic
