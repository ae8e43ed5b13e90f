#pragma once

#include <span>
#include <vector>

#include "plenoptic/flatland/flat_scene.hpp"

namespace plenoptic::flatland {

// Sample positions of a flatland light field. Image coordinate of column i is
// x_origin + i * dx (image-plane units, 0 on the optical axis); camera
// position of row k is u_origin + k * du (world units).
struct EpiSampling {
  int nx = 8;
  int nu = 8;
  double dx = 1.0;
  double du = 1.0;
  double x_origin = 0.0;
  double u_origin = 0.0;
  double focal = 1.0;

  // Columns at pixel centres of an nx-pixel sensor with pitch dx.
  static EpiSampling centered(int nx, int nu, double dx, double du, double focal,
                              double u_origin = 0.0);

  double x(int i) const { return x_origin + i * dx; }
  double u(int k) const { return u_origin + k * du; }
  // Disparity (in columns) of depth z between adjacent rows.
  double disparity(double z) const { return du * focal / (z * dx); }

  void validate(int min_size = 1) const;
  bool operator==(const EpiSampling&) const = default;
};

// Luminance light field L[x, u], stored row-major by u.
class Epi {
 public:
  Epi() = default;
  explicit Epi(const EpiSampling& sampling, double fill = 0.0);

  const EpiSampling& sampling() const { return sampling_; }
  int nx() const { return sampling_.nx; }
  int nu() const { return sampling_.nu; }

  double at(int ix, int iu) const { return data_[index(ix, iu)]; }
  double& at(int ix, int iu) { return data_[index(ix, iu)]; }
  // Linear interpolation along x within row iu (continuous column index,
  // clamped to the row's ends).
  double sample_row(int iu, double column) const;

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

 private:
  std::size_t index(int ix, int iu) const {
    return static_cast<std::size_t>(iu) * sampling_.nx + ix;
  }
  EpiSampling sampling_;
  std::vector<double> data_;
};

struct EpiRenderOptions {
  // Box-filter supersampling along x; the sensor integrates over its pixel.
  int supersample = 8;
  bool include_background = true;
  int workers = 1;
};

// Premultiplied luminance and coverage of a render.
struct EpiRgba {
  Epi color;
  Epi alpha;
};

// Each ray (x, u) meets depth z at world position u + z x / f; hits are
// composited front to back with the over operator, background last.
Epi render_epi(const FlatScene& scene, const EpiSampling& sampling,
               const EpiRenderOptions& options = {});
EpiRgba render_epi_rgba(const FlatScene& scene, const EpiSampling& sampling,
                        const EpiRenderOptions& options = {});

}  // namespace plenoptic::flatland
