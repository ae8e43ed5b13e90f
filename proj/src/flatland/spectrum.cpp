#include "plenoptic/flatland/spectrum.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "plenoptic/core/error.hpp"

namespace plenoptic::flatland {
namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> hann(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  return w;
}

int wrap(int k, int n) { return k < 0 ? k + n : k; }

}  // namespace

std::string_view to_string(Window w) { return w == Window::hann ? "hann" : "none"; }

Window parse_window(std::string_view name) {
  if (name == "hann") return Window::hann;
  if (name == "none") return Window::none;
  throw InvalidArgument("unknown window '" + std::string(name) + "' (expected none or hann)");
}

EpiSpectrum::EpiSpectrum(const EpiSampling& sampling, Window window,
                         std::vector<std::complex<double>> bins)
    : sampling_(sampling), window_(window), bins_(std::move(bins)) {
  if (bins_.size() != static_cast<std::size_t>(sampling.nx) * sampling.nu) {
    throw DimensionMismatch("spectrum bin count does not match sampling");
  }
}

std::complex<double> EpiSpectrum::at(int a, int b) const {
  if (a < min_a() || a > max_a() || b < min_b() || b > max_b()) {
    throw InvalidArgument("spectrum index out of range");
  }
  return bins_[static_cast<std::size_t>(wrap(b, nu())) * nx() + wrap(a, nx())];
}

double EpiSpectrum::total_power() const {
  double s = 0.0;
  for (const auto& c : bins_) s += std::norm(c);
  return s;
}

double EpiSpectrum::index_slope(double depth) const {
  if (!(depth > 0.0)) throw InvalidArgument("depth must be positive");
  if (std::isinf(depth)) return 0.0;
  const auto& s = sampling_;
  return (s.focal / depth) * (s.nu * s.du) / (s.nx * s.dx);
}

Epi windowed(const Epi& epi, Window window) {
  Epi out = epi;
  if (window == Window::none) return out;
  const auto wx = hann(epi.nx());
  const auto wu = hann(epi.nu());
  for (int iu = 0; iu < epi.nu(); ++iu) {
    for (int ix = 0; ix < epi.nx(); ++ix) out.at(ix, iu) *= wx[ix] * wu[iu];
  }
  return out;
}

EpiSpectrum epi_spectrum(const Epi& epi, Window window) {
  epi.sampling().validate(8);
  const int nx = epi.nx(), nu = epi.nu();
  const auto n = static_cast<std::size_t>(nx) * nu;
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!buf) throw Error("FFT allocation failed");
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    // ESTIMATE planning is deterministic, so results do not depend on timing.
    plan = fftw_plan_dft_2d(nu, nx, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  const Epi w = windowed(epi, window);
  const auto src = w.data();
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = src[i];
    buf[i][1] = 0.0;
  }
  fftw_execute(plan);
  std::vector<std::complex<double>> bins(n);
  for (std::size_t i = 0; i < n; ++i) bins[i] = {buf[i][0], buf[i][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return EpiSpectrum(epi.sampling(), window, std::move(bins));
}

}  // namespace plenoptic::flatland
