#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "plenoptic/flatland/epi.hpp"

namespace plenoptic::flatland {

enum class Window { none, hann };
std::string_view to_string(Window w);
Window parse_window(std::string_view name);  // throws InvalidArgument

// 2-D DFT of an EPI. Frequencies are in cycles per unit on both axes: bin
// (a, b) sits at Omega_x = a / (nx dx), Omega_u = b / (nu du), with signed
// indices a in [-nx/2, nx - nx/2) and b likewise. A plane at depth z puts its
// energy on the line Omega_u = (f / z) Omega_x.
class EpiSpectrum {
 public:
  EpiSpectrum(const EpiSampling& sampling, Window window, std::vector<std::complex<double>> bins);

  const EpiSampling& sampling() const { return sampling_; }
  Window window() const { return window_; }
  int nx() const { return sampling_.nx; }
  int nu() const { return sampling_.nu; }

  int min_a() const { return -(nx() / 2); }
  int max_a() const { return nx() - nx() / 2 - 1; }
  int min_b() const { return -(nu() / 2); }
  int max_b() const { return nu() - nu() / 2 - 1; }

  std::complex<double> at(int a, int b) const;
  double power(int a, int b) const { return std::norm(at(a, b)); }
  double total_power() const;

  // Index-space slope db/da of the spectral line of depth z.
  double index_slope(double depth) const;

  // Raw bins in FFT order, row-major by u frequency.
  const std::vector<std::complex<double>>& bins() const { return bins_; }

 private:
  EpiSampling sampling_;
  Window window_;
  std::vector<std::complex<double>> bins_;
};

// Windowed (periodic Hann on both axes when requested) forward DFT.
// Requires at least 8x8 samples.
EpiSpectrum epi_spectrum(const Epi& epi, Window window);

// The samples actually transformed: the EPI times the window.
Epi windowed(const Epi& epi, Window window);

}  // namespace plenoptic::flatland
