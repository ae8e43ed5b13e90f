#include "plenoptic/core/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plenoptic/core/error.hpp"

namespace plenoptic {

ImageRGBA::ImageRGBA(int width, int height) : ImageRGBA(width, height, Rgba{}) {}

ImageRGBA::ImageRGBA(int width, int height, const Rgba& fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidArgument("image dimensions must be non-negative");
  data_.resize(4 * static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < pixel_count(); ++i) {
    data_[4 * i + 0] = static_cast<float>(fill.r);
    data_[4 * i + 1] = static_cast<float>(fill.g);
    data_[4 * i + 2] = static_cast<float>(fill.b);
    data_[4 * i + 3] = static_cast<float>(fill.a);
  }
}

Rgba ImageRGBA::sample_bilinear(double x, double y) const {
  const double fx = x - 0.5;
  const double fy = y - 0.5;
  const double x0f = std::floor(fx);
  const double y0f = std::floor(fy);
  // Far outside: skip the integer conversion entirely.
  if (x0f < -1.0 || y0f < -1.0 || x0f >= width_ || y0f >= height_) return {};
  const int x0 = static_cast<int>(x0f);
  const int y0 = static_cast<int>(y0f);
  const double tx = fx - x0f;
  const double ty = fy - y0f;

  Rgba out;
  const auto tap = [&](int xi, int yi, double w) {
    if (w == 0.0 || xi < 0 || yi < 0 || xi >= width_ || yi >= height_) return;
    out += at(xi, yi) * w;
  };
  tap(x0, y0, (1.0 - tx) * (1.0 - ty));
  tap(x0 + 1, y0, tx * (1.0 - ty));
  tap(x0, y0 + 1, (1.0 - tx) * ty);
  tap(x0 + 1, y0 + 1, tx * ty);
  return out;
}

Rgba ImageRGBA::sample_bilinear_clamped(double x, double y) const {
  const double fx = std::clamp(x - 0.5, 0.0, static_cast<double>(width_ - 1));
  const double fy = std::clamp(y - 0.5, 0.0, static_cast<double>(height_ - 1));
  const int x0 = std::min(static_cast<int>(fx), width_ - 1);
  const int y0 = std::min(static_cast<int>(fy), height_ - 1);
  const int x1 = std::min(x0 + 1, width_ - 1);
  const int y1 = std::min(y0 + 1, height_ - 1);
  const double tx = fx - x0;
  const double ty = fy - y0;
  return at(x0, y0) * ((1.0 - tx) * (1.0 - ty)) + at(x1, y0) * (tx * (1.0 - ty)) +
         at(x0, y1) * ((1.0 - tx) * ty) + at(x1, y1) * (tx * ty);
}

void ImageRGBA::validate(double max_color) const {
  constexpr double kSlack = 1e-6;
  for (std::size_t i = 0; i < pixel_count(); ++i) {
    const float* p = &data_[4 * i];
    const float a = p[3];
    if (!std::isfinite(a) || a < 0.0f || a > 1.0 + kSlack) {
      throw InvalidArgument("alpha outside [0, 1] at pixel " + std::to_string(i));
    }
    for (int c = 0; c < 3; ++c) {
      if (!std::isfinite(p[c]) || p[c] < -kSlack) {
        throw InvalidArgument("negative or non-finite color at pixel " + std::to_string(i));
      }
      if (p[c] > a * max_color + kSlack) {
        throw InvalidArgument("premultiplied color exceeds alpha at pixel " +
                              std::to_string(i));
      }
    }
  }
}

ImageRGBA over(const ImageRGBA& front, const ImageRGBA& back) {
  if (front.width() != back.width() || front.height() != back.height()) {
    throw DimensionMismatch("over: image sizes differ");
  }
  ImageRGBA out(front.width(), front.height());
  for (int y = 0; y < front.height(); ++y) {
    for (int x = 0; x < front.width(); ++x) out.set(x, y, over(front.at(x, y), back.at(x, y)));
  }
  return out;
}

double max_abs_difference(const ImageRGBA& a, const ImageRGBA& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionMismatch("image sizes differ");
  }
  double worst = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(da[i]) - db[i]));
  }
  return worst;
}

}  // namespace plenoptic
