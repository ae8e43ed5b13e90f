#include "plenoptic/core/texture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/random.hpp"

namespace plenoptic {
namespace {

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Periodic separable blur of a width x height field.
std::vector<double> blur_periodic(const std::vector<double>& field, int width, int height,
                                  double sigma) {
  if (sigma <= 0.0) return field;
  const auto k = gaussian_kernel(sigma);
  const int r = static_cast<int>(k.size() / 2);
  std::vector<double> tmp(field.size()), out(field.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double s = 0.0;
      for (int i = -r; i <= r; ++i) {
        const int xi = ((x + i) % width + width) % width;
        s += k[i + r] * field[static_cast<std::size_t>(y) * width + xi];
      }
      tmp[static_cast<std::size_t>(y) * width + x] = s;
    }
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double s = 0.0;
      for (int i = -r; i <= r; ++i) {
        const int yi = ((y + i) % height + height) % height;
        s += k[i + r] * tmp[static_cast<std::size_t>(yi) * width + x];
      }
      out[static_cast<std::size_t>(y) * width + x] = s;
    }
  }
  return out;
}

}  // namespace

ImageRGBA smoothed_noise_texture(const NoiseTextureParams& params) {
  if (params.width < 1 || params.height < 1) {
    throw InvalidArgument("texture dimensions must be positive");
  }
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
    throw InvalidArgument("texture alpha must lie in [0, 1]");
  }
  const std::size_t n = static_cast<std::size_t>(params.width) * params.height;
  Rng rng(params.seed);
  std::array<std::vector<double>, 3> channels;
  for (auto& ch : channels) {
    std::vector<double> white(n);
    for (double& v : white) v = rng.uniform() - 0.5;
    ch = blur_periodic(white, params.width, params.height, params.sigma_texels);
    double mean = 0.0;
    for (double v : ch) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : ch) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (double& v : ch) v = sd > 0.0 ? (v - mean) / sd : 0.0;
  }

  ImageRGBA tex(params.width, params.height);
  for (int y = 0; y < params.height; ++y) {
    for (int x = 0; x < params.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * params.width + x;
      double rgb[3];
      for (int c = 0; c < 3; ++c) {
        rgb[c] = std::clamp(params.mean[c] + params.contrast * channels[c][i], 0.0, 1.0);
      }
      tex.set(x, y, Rgba::from_straight(rgb[0], rgb[1], rgb[2], params.alpha));
    }
  }
  return tex;
}

BandLimitedNoise::BandLimitedNoise(double cutoff, double mean, double rms, int components,
                                   std::uint64_t seed)
    : cutoff_(cutoff), mean_(mean), rms_(rms) {
  if (!(cutoff > 0.0)) throw InvalidArgument("noise cutoff must be positive");
  if (components < 1) throw InvalidArgument("noise needs at least one component");
  Rng rng(seed);
  double power = 0.0;
  for (int k = 0; k < components; ++k) {
    const double nu = cutoff * (k + rng.uniform()) / components;
    // Smooth roll-off towards the cutoff keeps the spectrum free of a hard edge.
    const double rel = nu / cutoff;
    const double amp = (1.0 - rel * rel) * (0.5 + rng.uniform());
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    components_.push_back({nu, amp, phase});
    power += 0.5 * amp * amp;
  }
  const double scale = power > 0.0 ? rms / std::sqrt(power) : 0.0;
  for (auto& c : components_) c.amplitude *= scale;
}

BandLimitedNoise BandLimitedNoise::constant(double value) {
  BandLimitedNoise n;
  n.mean_ = value;
  return n;
}

BandLimitedNoise BandLimitedNoise::cosine(double frequency, double mean, double amplitude,
                                          double phase) {
  BandLimitedNoise n;
  n.cutoff_ = frequency;
  n.mean_ = mean;
  n.rms_ = amplitude / std::sqrt(2.0);
  n.components_.push_back({frequency, amplitude, phase});
  return n;
}

double BandLimitedNoise::operator()(double position) const {
  double v = mean_;
  for (const auto& c : components_) {
    v += c.amplitude * std::cos(2.0 * std::numbers::pi * c.frequency * position + c.phase);
  }
  return v;
}

}  // namespace plenoptic
