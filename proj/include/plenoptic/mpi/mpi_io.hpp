#pragma once

#include <filesystem>

#include "plenoptic/mpi/multiplane_image.hpp"

namespace plenoptic {

// MPI container, all fields little-endian:
//   offset 0   8 bytes   magic "PLNPMPI\0"
//          8   u32       version (1)
//         12   u32       width W
//         16   u32       height H
//         20   u32       plane count D
//         24   f64       focal length
//         32   f64       pixel pitch
//         40   f64 x 9   pose rotation, row-major (camera to world)
//        112   f64 x 3   pose translation (camera centre)
//        136   f64 x D   plane depths, far to near (+inf allowed)
//   then D planes of W*H*4 f32, premultiplied RGBA, row-major from the top row.
void write_mpi(const std::filesystem::path& path, const MultiplaneImage& mpi);
MultiplaneImage read_mpi(const std::filesystem::path& path);

// One 8-bit PNG per plane, named plane_000.png (farthest) upwards.
void export_mpi_planes_png(const std::filesystem::path& directory, const MultiplaneImage& mpi);

}  // namespace plenoptic
