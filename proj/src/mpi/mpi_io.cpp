#include "plenoptic/mpi/mpi_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/image_io.hpp"

namespace plenoptic {
namespace {

constexpr char kMagic[8] = {'P', 'L', 'N', 'P', 'M', 'P', 'I', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& is, const std::string& path) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw ParseError(path + ": truncated MPI container");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_mpi(const std::filesystem::path& path, const MultiplaneImage& mpi) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  const auto& cam = mpi.reference();
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(cam.intrinsics.width()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(cam.intrinsics.height()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(mpi.plane_count()));
  put<double>(os, cam.intrinsics.focal_length());
  put<double>(os, cam.intrinsics.pixel_pitch());
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) put<double>(os, cam.pose.rotation()(r, c));
  }
  for (int i = 0; i < 3; ++i) put<double>(os, cam.pose.translation()(i));
  for (double z : mpi.depths()) put<double>(os, z);
  for (const auto& plane : mpi.planes()) {
    for (float v : plane.data()) put<float>(os, v);
  }
  if (!os) throw IoError("failed writing " + path.string());
}

MultiplaneImage read_mpi(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  const std::string name = path.string();
  char magic[8];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ParseError(name + ": not an MPI container");
  }
  const auto version = get<std::uint32_t>(is, name);
  if (version != kVersion) {
    throw ParseError(name + ": unsupported MPI container version " + std::to_string(version));
  }
  const auto w = get<std::uint32_t>(is, name);
  const auto h = get<std::uint32_t>(is, name);
  const auto d = get<std::uint32_t>(is, name);
  if (w < 2 || h < 1 || d < 1 || w > 1u << 15 || h > 1u << 15 || d > 4096) {
    throw ParseError(name + ": implausible MPI dimensions");
  }
  const double focal = get<double>(is, name);
  const double pitch = get<double>(is, name);
  Mat3 rot;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rot(r, c) = get<double>(is, name);
  }
  Vec3 t;
  for (int i = 0; i < 3; ++i) t(i) = get<double>(is, name);
  std::vector<double> depths(d);
  for (auto& z : depths) z = get<double>(is, name);
  std::vector<ImageRGBA> planes;
  planes.reserve(d);
  for (std::uint32_t k = 0; k < d; ++k) {
    ImageRGBA img(static_cast<int>(w), static_cast<int>(h));
    for (float& v : img.data()) v = get<float>(is, name);
    planes.push_back(std::move(img));
  }
  try {
    Camera cam{CameraIntrinsics(focal, pitch, static_cast<int>(w), static_cast<int>(h)),
               CameraPose(rot, t)};
    return MultiplaneImage(cam, std::move(depths), std::move(planes));
  } catch (const InvalidArgument& e) {
    throw ParseError(name + ": " + e.what());
  }
}

void export_mpi_planes_png(const std::filesystem::path& directory, const MultiplaneImage& mpi) {
  std::filesystem::create_directories(directory);
  for (int k = 0; k < mpi.plane_count(); ++k) {
    std::ostringstream name;
    name << "plane_" << std::setw(3) << std::setfill('0') << k << ".png";
    write_png(directory / name.str(), mpi.plane(k));
  }
}

}  // namespace plenoptic
