#pragma once

#include <filesystem>
#include <vector>

#include "plenoptic/core/image.hpp"

namespace plenoptic {

// 8-bit RGBA PNG with straight (un-premultiplied) color, channels clamped to [0, 1].
void write_png(const std::filesystem::path& path, const ImageRGBA& image);
// Loads any PNG libpng understands into premultiplied float RGBA.
ImageRGBA read_png(const std::filesystem::path& path);

// 8-bit grayscale PNG of a row-major scalar field mapped linearly from
// [lo, hi] to [0, 255].
void write_png_gray(const std::filesystem::path& path, const std::vector<double>& values,
                    int width, int height, double lo, double hi);

// Little-endian "PF" float map of the premultiplied RGB channels.
void write_pfm(const std::filesystem::path& path, const ImageRGBA& image);
// Little-endian "Pf" float map of the alpha channel.
void write_pfm_alpha(const std::filesystem::path& path, const ImageRGBA& image);
// Reads "PF" (alpha = 1) or "Pf" (gray replicated, alpha = 1), either endianness.
ImageRGBA read_pfm(const std::filesystem::path& path);

}  // namespace plenoptic
