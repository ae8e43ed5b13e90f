#include "plenoptic/harness/quality.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "plenoptic/core/camera.hpp"
#include "plenoptic/core/error.hpp"

namespace plenoptic {
namespace {

constexpr int kTaps = 11;

struct Plane {
  int w = 0, h = 0;
  std::vector<double> v;
  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * w + x]; }
};

Plane cropped_luminance(const ImageRGBA& img, int crop) {
  Plane p{img.width() - 2 * crop, img.height() - 2 * crop, {}};
  p.v.reserve(static_cast<std::size_t>(p.w) * p.h);
  for (int y = 0; y < p.h; ++y) {
    for (int x = 0; x < p.w; ++x) p.v.push_back(img.at(x + crop, y + crop).luminance());
  }
  return p;
}

void check(const ImageRGBA& a, const ImageRGBA& b, const QualityOptions& o) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionMismatch("quality: image sizes differ");
  }
  if (o.crop < 0 || a.width() - 2 * o.crop < kTaps || a.height() - 2 * o.crop < kTaps) {
    throw InvalidArgument("quality: image too small for the crop and SSIM window");
  }
  if (!(o.peak > 0.0)) throw InvalidArgument("quality: peak must be positive");
}

std::array<double, kTaps> gaussian_window() {
  std::array<double, kTaps> k{};
  double sum = 0.0;
  for (int i = 0; i < kTaps; ++i) {
    const double d = i - kTaps / 2;
    k[i] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable 'valid' filtering: output is (w - 10) x (h - 10).
Plane filter_valid(const Plane& in, const std::array<double, kTaps>& k) {
  Plane tmp{in.w - (kTaps - 1), in.h, std::vector<double>(static_cast<std::size_t>(in.w - kTaps + 1) * in.h)};
  for (int y = 0; y < in.h; ++y) {
    for (int x = 0; x < tmp.w; ++x) {
      double s = 0.0;
      for (int i = 0; i < kTaps; ++i) s += k[i] * in.at(x + i, y);
      tmp.v[static_cast<std::size_t>(y) * tmp.w + x] = s;
    }
  }
  Plane out{tmp.w, in.h - (kTaps - 1), std::vector<double>(static_cast<std::size_t>(tmp.w) * (in.h - kTaps + 1))};
  for (int y = 0; y < out.h; ++y) {
    for (int x = 0; x < out.w; ++x) {
      double s = 0.0;
      for (int i = 0; i < kTaps; ++i) s += k[i] * tmp.at(x, y + i);
      out.v[static_cast<std::size_t>(y) * out.w + x] = s;
    }
  }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane p{a.w, a.h, std::vector<double>(a.v.size())};
  for (std::size_t i = 0; i < a.v.size(); ++i) p.v[i] = a.v[i] * b.v[i];
  return p;
}

}  // namespace

double psnr(const ImageRGBA& image, const ImageRGBA& reference, const QualityOptions& o) {
  check(image, reference, o);
  const Plane a = cropped_luminance(image, o.crop);
  const Plane b = cropped_luminance(reference, o.crop);
  double sse = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) sse += (a.v[i] - b.v[i]) * (a.v[i] - b.v[i]);
  const double mse = sse / static_cast<double>(a.v.size());
  return mse == 0.0 ? kInfinity : 10.0 * std::log10(o.peak * o.peak / mse);
}

double ssim(const ImageRGBA& image, const ImageRGBA& reference, const QualityOptions& o) {
  check(image, reference, o);
  const Plane a = cropped_luminance(image, o.crop);
  const Plane b = cropped_luminance(reference, o.crop);
  const auto k = gaussian_window();
  const Plane mu_a = filter_valid(a, k), mu_b = filter_valid(b, k);
  const Plane aa = filter_valid(product(a, a), k), bb = filter_valid(product(b, b), k);
  const Plane ab = filter_valid(product(a, b), k);
  const double c1 = std::pow(0.01 * o.peak, 2), c2 = std::pow(0.03 * o.peak, 2);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.v.size(); ++i) {
    const double ma = mu_a.v[i], mb = mu_b.v[i];
    const double va = aa.v[i] - ma * ma, vb = bb.v[i] - mb * mb, cov = ab.v[i] - ma * mb;
    sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
           ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return sum / static_cast<double>(mu_a.v.size());
}

QualityScores image_quality(const ImageRGBA& image, const ImageRGBA& reference,
                            const QualityOptions& options) {
  return {psnr(image, reference, options), ssim(image, reference, options)};
}

}  // namespace plenoptic
