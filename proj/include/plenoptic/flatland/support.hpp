#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "plenoptic/flatland/spectrum.hpp"

namespace plenoptic::flatland {

enum class SupportKind { double_wedge, parallelogram, layer_wedge };
std::string_view to_string(SupportKind k);
SupportKind parse_support_kind(std::string_view name);

// Region of the (Omega_x, Omega_u) plane expected to hold the light field's
// energy.
//  double_wedge:  Omega_u / Omega_x in [f / z_far, f / z_near], plus DC.
//  layer_wedge:   the same wedge for one disparity bin (pass the bin's depths).
//  parallelogram: the wedge united with the band swept by convolving it with
//                 the occluder's line (slope f / occluder_depth), clipped to
//                 |Omega_x| <= spatial_bandwidth. Its half-height about that
//                 line is dilation * K_x * (largest slope difference to the
//                 occluder line); dilation = 1 is the straight convolution
//                 extent and is a tunable, not a derived constant.
struct SupportSpec {
  SupportKind kind = SupportKind::double_wedge;
  double z_near = 1.0;
  double z_far = kInfinity;
  std::optional<double> occluder_depth;
  // K_x in cycles per image-plane unit; defaults to the EPI's Nyquist limit.
  std::optional<double> spatial_bandwidth;
  double dilation = 1.0;
  // Bins within this Chebyshev distance of the support but outside it are
  // excluded from both numerator and denominator.
  int guard = 1;
};

struct SpectrumReport {
  double energy_in_support;
  SupportKind support_kind;
  double slope_near;  // f / z_near
  double slope_far;   // f / z_far (0 for infinity)
  Window window;
  int inside_bins;
  int guard_bins;
};

enum class BinClass : std::uint8_t { outside = 0, inside = 1, guard = 2 };

// Per-bin classification in FFT order (same layout as EpiSpectrum::bins()).
// Throws InvalidArgument for z_near > z_far or a missing occluder depth.
std::vector<BinClass> support_mask(const EpiSpectrum& spectrum, const SupportSpec& spec);

// Fraction of non-guard energy that lies inside the support; 1 for an
// all-zero spectrum.
SpectrumReport support_energy(const EpiSpectrum& spectrum, const SupportSpec& spec);

}  // namespace plenoptic::flatland
