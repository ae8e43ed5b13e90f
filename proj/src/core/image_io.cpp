#include "plenoptic/core/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <png.h>

#include "plenoptic/core/error.hpp"

namespace plenoptic {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_file(const std::filesystem::path& path, const char* mode) {
  File f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path.string());
  return f;
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void write_png_rows(const std::filesystem::path& path, int width, int height, int color_type,
                    const std::vector<std::uint8_t>& bytes, int channels) {
  File f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("failed writing PNG " + path.string());
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(&bytes[static_cast<std::size_t>(y) * width *
                                                      channels]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void write_pfm_impl(const std::filesystem::path& path, const ImageRGBA& image, bool color) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  out << (color ? "PF" : "Pf") << '\n' << image.width() << ' ' << image.height() << '\n'
      << "-1.0\n";
  const int channels = color ? 3 : 1;
  std::vector<float> row(static_cast<std::size_t>(image.width()) * channels);
  // PFM stores rows bottom to top.
  for (int y = image.height() - 1; y >= 0; --y) {
    for (int x = 0; x < image.width(); ++x) {
      const Rgba p = image.at(x, y);
      if (color) {
        row[3 * x + 0] = static_cast<float>(p.r);
        row[3 * x + 1] = static_cast<float>(p.g);
        row[3 * x + 2] = static_cast<float>(p.b);
      } else {
        row[x] = static_cast<float>(p.a);
      }
    }
    if constexpr (std::endian::native == std::endian::big) {
      for (float& v : row) {
        auto bits = std::bit_cast<std::uint32_t>(v);
        bits = __builtin_bswap32(bits);
        v = std::bit_cast<float>(bits);
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_png(const std::filesystem::path& path, const ImageRGBA& image) {
  std::vector<std::uint8_t> bytes(image.pixel_count() * 4);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const Rgba p = image.at(x, y);
      const double inv = p.a > 0.0 ? 1.0 / p.a : 0.0;
      std::uint8_t* q = &bytes[4 * (static_cast<std::size_t>(y) * image.width() + x)];
      q[0] = to_byte(p.r * inv);
      q[1] = to_byte(p.g * inv);
      q[2] = to_byte(p.b * inv);
      q[3] = to_byte(p.a);
    }
  }
  write_png_rows(path, image.width(), image.height(), PNG_COLOR_TYPE_RGBA, bytes, 4);
}

void write_png_gray(const std::filesystem::path& path, const std::vector<double>& values,
                    int width, int height, double lo, double hi) {
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionMismatch("write_png_gray: value count does not match dimensions");
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::vector<std::uint8_t> bytes(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) bytes[i] = to_byte((values[i] - lo) / span);
  write_png_rows(path, width, height, PNG_COLOR_TYPE_GRAY, bytes, 1);
}

ImageRGBA read_png(const std::filesystem::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    throw IoError("cannot read PNG " + path.string() + ": " + img.message);
  }
  img.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
    png_image_free(&img);
    throw IoError("cannot decode PNG " + path.string() + ": " + img.message);
  }
  ImageRGBA out(static_cast<int>(img.width), static_cast<int>(img.height));
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const std::uint8_t* q = &buf[4 * (static_cast<std::size_t>(y) * out.width() + x)];
      out.set(x, y, Rgba::from_straight(q[0] / 255.0, q[1] / 255.0, q[2] / 255.0, q[3] / 255.0));
    }
  }
  return out;
}

void write_pfm(const std::filesystem::path& path, const ImageRGBA& image) {
  write_pfm_impl(path, image, true);
}

void write_pfm_alpha(const std::filesystem::path& path, const ImageRGBA& image) {
  write_pfm_impl(path, image, false);
}

ImageRGBA read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string magic;
  int width = 0, height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (magic != "PF" && magic != "Pf") throw ParseError(path.string() + ": not a PFM file");
  if (width <= 0 || height <= 0 || scale == 0.0) {
    throw ParseError(path.string() + ": bad PFM header");
  }
  in.get();  // single whitespace after the scale
  const bool color = magic == "PF";
  const int channels = color ? 3 : 1;
  const bool file_little = scale < 0.0;
  const bool swap = file_little != (std::endian::native == std::endian::little);
  std::vector<float> row(static_cast<std::size_t>(width) * channels);
  ImageRGBA out(width, height);
  for (int y = height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in) throw ParseError(path.string() + ": truncated PFM data");
    if (swap) {
      for (float& v : row) {
        v = std::bit_cast<float>(__builtin_bswap32(std::bit_cast<std::uint32_t>(v)));
      }
    }
    for (int x = 0; x < width; ++x) {
      if (color) {
        out.set(x, y, {row[3 * x], row[3 * x + 1], row[3 * x + 2], 1.0});
      } else {
        out.set(x, y, {row[x], row[x], row[x], 1.0});
      }
    }
  }
  return out;
}

}  // namespace plenoptic
