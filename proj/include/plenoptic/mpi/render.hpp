#pragma once

#include "plenoptic/mpi/multiplane_image.hpp"

namespace plenoptic {

struct MpiRenderOptions {
  int workers = 1;
};

// Warps every plane into the novel view through its plane homography
// (bilinear, transparent outside the plane) and composites far to near.
// Throws InvalidArgument when the novel camera is not in front of the
// nearest plane; DegenerateHomography propagates.
ImageRGBA render_mpi(const MultiplaneImage& mpi, const Camera& novel,
                     const MpiRenderOptions& options = {});

// Same, compositing planes in the given order (indices, first = back-most).
// Exists to check that ordering matters.
ImageRGBA render_mpi_in_order(const MultiplaneImage& mpi, const Camera& novel,
                              const std::vector<int>& order, const MpiRenderOptions& options = {});

}  // namespace plenoptic
