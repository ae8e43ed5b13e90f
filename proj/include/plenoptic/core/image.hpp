#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace plenoptic {

// Premultiplied RGBA sample. Arithmetic is done in double; images store float.
struct Rgba {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  double a = 0.0;

  static Rgba opaque(double r, double g, double b) { return {r, g, b, 1.0}; }
  // Straight color with coverage `a`, premultiplied on construction.
  static Rgba from_straight(double r, double g, double b, double a) {
    return {r * a, g * a, b * a, a};
  }

  Rgba operator+(const Rgba& o) const { return {r + o.r, g + o.g, b + o.b, a + o.a}; }
  Rgba operator*(double s) const { return {r * s, g * s, b * s, a * s}; }
  Rgba& operator+=(const Rgba& o) {
    r += o.r;
    g += o.g;
    b += o.b;
    a += o.a;
    return *this;
  }
  bool operator==(const Rgba&) const = default;

  double luminance() const { return 0.2126 * r + 0.7152 * g + 0.0722 * b; }
};

// Premultiplied over: front + (1 - front.a) * back.
inline Rgba over(const Rgba& front, const Rgba& back) {
  const double t = 1.0 - front.a;
  return {front.r + t * back.r, front.g + t * back.g, front.b + t * back.b,
          front.a + t * back.a};
}

// Row-major premultiplied RGBA float image, origin top-left.
class ImageRGBA {
 public:
  ImageRGBA() = default;
  ImageRGBA(int width, int height);
  ImageRGBA(int width, int height, const Rgba& fill);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  Rgba at(int x, int y) const {
    const float* p = &data_[index(x, y)];
    return {p[0], p[1], p[2], p[3]};
  }
  void set(int x, int y, const Rgba& v) {
    float* p = &data_[index(x, y)];
    p[0] = static_cast<float>(v.r);
    p[1] = static_cast<float>(v.g);
    p[2] = static_cast<float>(v.b);
    p[3] = static_cast<float>(v.a);
  }

  // Bilinear lookup at a continuous coordinate (pixel centers at i + 0.5).
  // Taps that fall outside the image read as transparent black.
  Rgba sample_bilinear(double x, double y) const;
  // Same, clamping taps to the nearest edge pixel instead.
  Rgba sample_bilinear_clamped(double x, double y) const;

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  // Throws InvalidArgument if any channel is NaN/negative, alpha exceeds 1,
  // or color exceeds alpha * max_color (plus a small float slack).
  void validate(double max_color = 1.0) const;

  bool operator==(const ImageRGBA&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return 4 * (static_cast<std::size_t>(y) * width_ + x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

// Per-pixel premultiplied over of two equally-sized images.
ImageRGBA over(const ImageRGBA& front, const ImageRGBA& back);

// Largest per-channel absolute difference. Throws DimensionMismatch.
double max_abs_difference(const ImageRGBA& a, const ImageRGBA& b);

}  // namespace plenoptic
