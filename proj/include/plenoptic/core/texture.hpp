#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "plenoptic/core/image.hpp"

namespace plenoptic {

struct NoiseTextureParams {
  int width = 64;
  int height = 64;
  // Gaussian smoothing radius in texels; larger means lower bandwidth.
  double sigma_texels = 1.5;
  std::array<double, 3> mean{0.5, 0.5, 0.5};
  // Per-channel standard deviation after smoothing, before clamping.
  double contrast = 0.15;
  double alpha = 1.0;
  std::uint64_t seed = 1;
};

// Seeded smoothed-noise RGBA texture (premultiplied), channels clamped to [0, 1].
// Smoothing wraps around the texture borders.
ImageRGBA smoothed_noise_texture(const NoiseTextureParams& params);

// One-dimensional band-limited noise: a sum of cosines whose frequencies are
// stratified over (0, cutoff], so no energy lies above `cutoff` (cycles per
// unit of the argument).
class BandLimitedNoise {
 public:
  BandLimitedNoise() = default;
  BandLimitedNoise(double cutoff, double mean, double rms, int components, std::uint64_t seed);

  double operator()(double position) const;

  double cutoff() const { return cutoff_; }
  double mean() const { return mean_; }
  double rms() const { return rms_; }

  // Constant texture.
  static BandLimitedNoise constant(double value);
  // Single cosine: mean + amplitude * cos(2 pi frequency x + phase).
  static BandLimitedNoise cosine(double frequency, double mean, double amplitude, double phase);

 private:
  struct Component {
    double frequency;
    double amplitude;
    double phase;
  };
  double cutoff_ = 0.0;
  double mean_ = 0.0;
  double rms_ = 0.0;
  std::vector<Component> components_;
};

}  // namespace plenoptic
