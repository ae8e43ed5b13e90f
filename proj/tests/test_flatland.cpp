#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/random.hpp"
#include "plenoptic/flatland/report.hpp"
#include "plenoptic/flatland/suite.hpp"

namespace fs = std::filesystem;
using namespace plenoptic;
using namespace plenoptic::flatland;

namespace {

FlatSegment segment(double depth, double x0, double x1, BandLimitedNoise tex) {
  FlatSegment s;
  s.depth = depth;
  s.x_min = x0;
  s.x_max = x1;
  s.texture = std::move(tex);
  return s;
}

// Direct O(N^2) DFT, same sign and layout as the library (row = u frequency).
std::complex<double> naive_dft(const Epi& e, int a, int b) {
  std::complex<double> s = 0.0;
  for (int iu = 0; iu < e.nu(); ++iu) {
    for (int ix = 0; ix < e.nx(); ++ix) {
      const double ph = -2.0 * std::numbers::pi *
                        (static_cast<double>(a) * ix / e.nx() + static_cast<double>(b) * iu / e.nu());
      s += e.at(ix, iu) * std::complex<double>(std::cos(ph), std::sin(ph));
    }
  }
  return s;
}

}  // namespace

TEST(FlatScene, FeatheredCoverage) {
  auto s = segment(2.0, 0.0, 1.0, BandLimitedNoise::constant(1.0));
  s.feather = 0.2;
  s.opacity = 0.8;
  EXPECT_NEAR(s.coverage(0.0), 0.0, 1e-12);
  EXPECT_NEAR(s.coverage(0.1), 0.4, 1e-12);
  EXPECT_NEAR(s.coverage(0.5), 0.8, 1e-12);
  EXPECT_EQ(s.coverage(1.0), 0.0);
  EXPECT_EQ(s.coverage(-0.1), 0.0);
}

TEST(FlatScene, ValidateAndOrder) {
  FlatScene scene;
  scene.segments = {segment(3.0, 0, 1, BandLimitedNoise::constant(1)),
                    segment(1.5, 0, 1, BandLimitedNoise::constant(1))};
  EXPECT_EQ(scene.depth_order(), (std::vector<int>{1, 0}));
  EXPECT_EQ(scene.depth_range().z_min(), 1.5);
  EXPECT_THROW(scene.validate(SceneBounds(2.0, 4.0)), OutOfBounds);
  scene.segments[0].x_max = -1.0;
  EXPECT_THROW(scene.validate(), InvalidArgument);
}

TEST(FlatScene, LoadsYamlAndRejectsTypos) {
  const auto file = load_flat_scene(fs::path(PLENOPTIC_TEST_DATA) / "flat.yaml");
  ASSERT_EQ(file.scene.segments.size(), 2u);
  EXPECT_DOUBLE_EQ(file.scene.background, 0.2);
  EXPECT_EQ(file.bounds->z_max(), 4.0);
  EXPECT_NEAR(file.scene.segments[1].texture(0.0), 0.8, 1e-12);

  const auto dir = fs::temp_directory_path() / "plenoptic_flat_yaml";
  fs::create_directories(dir);
  std::ofstream(dir / "bad.yaml") << "segments:\n  - depth: 1\n    extnt: [0, 1]\n";
  try {
    load_flat_scene(dir / "bad.yaml");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("extnt"), std::string::npos);
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Epi, ShearLaw) {
  // A plane at depth z shifts by f du / (z dx) columns per row.
  FlatScene scene;
  scene.segments = {segment(2.0, -100, 100, BandLimitedNoise(0.3, 0.5, 0.2, 16, 4))};
  const double f = 40.0, z = 2.0;
  const auto s = EpiSampling::centered(64, 6, 1.0, 3.0 * z / f, f);
  ASSERT_NEAR(s.disparity(z), 3.0, 1e-12);
  const auto epi = render_epi(scene, s);
  for (int iu = 0; iu + 1 < epi.nu(); ++iu) {
    for (int ix = 0; ix + 3 < epi.nx(); ++ix) {
      EXPECT_NEAR(epi.at(ix, iu + 1), epi.at(ix + 3, iu), 1e-9);
    }
  }
}

TEST(Epi, OcclusionAndBackground) {
  FlatScene scene;
  scene.background = 0.1;
  scene.segments = {segment(4.0, -10, 10, BandLimitedNoise::constant(0.5)),
                    segment(1.0, -0.05, 0.05, BandLimitedNoise::constant(1.0))};
  const auto s = EpiSampling::centered(32, 1, 1.0, 0.01, 32.0);
  const auto rgba = render_epi_rgba(scene, s, {8, false, 1});
  // Centre column: the near segment hides the far one.
  EXPECT_NEAR(rgba.color.at(16, 0), 1.0, 1e-12);
  EXPECT_NEAR(rgba.alpha.at(16, 0), 1.0, 1e-12);
  const auto epi = render_epi(scene, s);
  EXPECT_NEAR(epi.at(0, 0), 0.5, 1e-12);
  // Sum of per-segment renders is not the composite: layers do not add.
  FlatScene near_only{{scene.segments[1]}, 0.0}, far_only{{scene.segments[0]}, 0.0};
  const auto a = render_epi(near_only, s, {8, false, 1});
  const auto b = render_epi(far_only, s, {8, false, 1});
  EXPECT_GT(a.at(16, 0) + b.at(16, 0) - rgba.color.at(16, 0), 0.4);
}

TEST(Epi, WorkerCountInvariant) {
  FlatScene scene;
  scene.segments = {segment(1.3, -1, 1, BandLimitedNoise(0.3, 0.5, 0.2, 16, 4))};
  const auto s = EpiSampling::centered(48, 20, 1.0, 0.01, 48.0);
  const auto a = render_epi(scene, s, {8, true, 1}), b = render_epi(scene, s, {8, true, 3});
  EXPECT_TRUE(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
}

TEST(Spectrum, MatchesNaiveDft) {
  Rng rng(12);
  Epi e(EpiSampling::centered(8, 10, 1.0, 0.1, 8.0));
  for (double& v : e.data()) v = rng.uniform();
  for (const Window w : {Window::none, Window::hann}) {
    const auto spec = epi_spectrum(e, w);
    const auto win = windowed(e, w);
    for (int b = spec.min_b(); b <= spec.max_b(); ++b) {
      for (int a = spec.min_a(); a <= spec.max_a(); ++a) {
        EXPECT_NEAR(std::abs(spec.at(a, b) - naive_dft(win, a, b)), 0.0, 1e-10);
      }
    }
  }
  // Parseval with the unnormalised transform.
  double sum = 0.0;
  for (double v : e.data()) sum += v * v;
  EXPECT_NEAR(epi_spectrum(e, Window::none).total_power(), 80.0 * sum, 1e-9 * sum);
  EXPECT_THROW(epi_spectrum(Epi(EpiSampling::centered(4, 8, 1, 1, 1)), Window::none),
               InvalidArgument);
}

TEST(Spectrum, PlaneLiesOnItsLine) {
  // f / z = 32, du = 1/32 gives index slope 1; a cosine of 4 cycles per world
  // unit then sits exactly on bins (8, 8) and (-8, -8).
  const double f = 64.0, z = 2.0;
  FlatScene scene;
  scene.segments = {segment(z, -100, 100, BandLimitedNoise::cosine(4.0, 0.5, 0.2, 0.3))};
  const auto s = EpiSampling::centered(64, 64, 1.0, 1.0 / 32.0, f);
  const auto spec = epi_spectrum(render_epi(scene, s), Window::none);
  EXPECT_NEAR(spec.index_slope(z), 1.0, 1e-12);
  const double on = spec.power(8, 8) + spec.power(-8, -8) + spec.power(0, 0);
  EXPECT_GT(spec.power(8, 8), 1.0);
  EXPECT_NEAR(on / spec.total_power(), 1.0, 1e-12);
  EXPECT_LT(spec.power(8, -8), 1e-12 * spec.power(8, 8));
  EXPECT_EQ(spec.index_slope(kInfinity), 0.0);
}

TEST(Support, MaskClassesAndEnergy) {
  const double f = 64.0;
  FlatScene scene;
  scene.segments = {segment(2.0, -100, 100, BandLimitedNoise::cosine(4.0, 0.5, 0.2, 0.3))};
  const auto s = EpiSampling::centered(64, 64, 1.0, 1.0 / 32.0, f);
  const auto spec = epi_spectrum(render_epi(scene, s), Window::hann);
  SupportSpec wedge;
  wedge.z_near = 1.0;
  wedge.z_far = 4.0;
  const auto mask = support_mask(spec, wedge);
  EXPECT_EQ(mask[0], BinClass::inside);  // DC
  const auto report = support_energy(spec, wedge);
  EXPECT_GT(report.energy_in_support, 0.999);
  EXPECT_EQ(report.slope_near, 64.0);
  EXPECT_EQ(report.slope_far, 16.0);
  EXPECT_GT(report.guard_bins, 0);

  // A wedge that excludes the plane's line keeps the DC term but loses the cosine.
  SupportSpec wrong = wedge;
  wrong.z_near = 8.0;
  wrong.z_far = 16.0;
  wrong.guard = 0;
  EXPECT_LT(support_energy(spec, wrong).energy_in_support, report.energy_in_support - 0.05);

  SupportSpec bad = wedge;
  bad.z_near = 5.0;
  EXPECT_THROW(support_mask(spec, bad), InvalidArgument);
  SupportSpec para = wedge;
  para.kind = SupportKind::parallelogram;
  EXPECT_THROW(support_mask(spec, para), InvalidArgument);
  para.occluder_depth = 1.0;
  // The parallelogram contains the wedge.
  EXPECT_GE(support_energy(spec, para).inside_bins, report.inside_bins);

  const EpiSpectrum zero(s, Window::none, std::vector<std::complex<double>>(64 * 64));
  EXPECT_EQ(support_energy(zero, wedge).energy_in_support, 1.0);
}

TEST(Support, KindNamesRoundTrip) {
  for (auto k : {SupportKind::double_wedge, SupportKind::parallelogram, SupportKind::layer_wedge}) {
    EXPECT_EQ(parse_support_kind(to_string(k)), k);
  }
  EXPECT_EQ(parse_window("hann"), Window::hann);
  EXPECT_THROW(parse_window("hamming"), InvalidArgument);
}

TEST(Layered, BinsPartitionDisparity) {
  const SceneBounds b = SceneBounds::unbounded_far(1.0);
  EXPECT_TRUE(disparity_bin(b, 4, 0).far_is_infinite());
  EXPECT_NEAR(disparity_bin(b, 4, 0).z_min(), 4.0, 1e-12);
  EXPECT_NEAR(disparity_bin(b, 4, 3).z_max(), 4.0 / 3.0, 1e-12);
  EXPECT_EQ(disparity_bin_index(b, 4, 1.0), 3);
  EXPECT_EQ(disparity_bin_index(b, 4, kInfinity), 0);
  EXPECT_EQ(disparity_bin_index(b, 4, 8.0), 0);
  const auto depths = layer_depths(b, 4);
  EXPECT_NEAR(depths[0], 8.0, 1e-12);
  EXPECT_NEAR(depths[3], 1.0 / 0.875, 1e-12);
}

TEST(Layered, MaskLayersReproduceTheirViews) {
  Rng rng(21);
  const auto s = EpiSampling::centered(40, 5, 1.0, 0.05, 40.0);
  Epi composite(s);
  std::vector<Epi> masks(3, Epi(s));
  for (int iu = 0; iu < s.nu; ++iu) {
    for (int ix = 0; ix < s.nx; ++ix) {
      double left = 1.0;
      for (auto& m : masks) {
        m.at(ix, iu) = left * rng.uniform(0.0, 0.6);
        left -= m.at(ix, iu);
      }
      composite.at(ix, iu) = rng.uniform();
    }
  }
  const auto layered = layers_from_masks(composite, masks, SceneBounds(1.0, 5.0), 0.3);
  const auto recon = layered_reconstruct(layered, s);
  for (int iu = 0; iu < s.nu; ++iu) {
    for (int ix = 0; ix < s.nx; ++ix) EXPECT_NEAR(recon.at(ix, iu), composite.at(ix, iu), 1e-9);
  }
}

TEST(Layered, PlaneAtLayerDepthReconstructsWell) {
  const double f = 128.0;
  const SceneBounds bounds(1.0, 3.0);
  const double z = layer_depths(bounds, 1)[0];
  FlatScene scene;
  scene.segments = {segment(z, -100, 100, BandLimitedNoise(0.1, 0.5, 0.15, 24, 6))};
  const auto dense = EpiSampling::centered(128, 33, 1.0, 0.002, f, 0.0);
  auto sparse = dense;
  sparse.nu = 5;
  sparse.du = dense.du * 8;
  const auto truth = render_epi(scene, dense);
  const auto layered = decompose_layers(scene, sparse, bounds, 1);
  const auto err = reconstruction_error(layered_reconstruct(layered, dense), truth);
  EXPECT_GT(err.psnr, 35.0);
}

TEST(Layered, ReconstructionErrorMatchesDoubleLoop) {
  Rng rng(2);
  const auto s = EpiSampling::centered(20, 16, 1.0, 0.1, 10.0);
  Epi a(s), b(s);
  for (double& v : a.data()) v = rng.uniform();
  for (double& v : b.data()) v = rng.uniform();
  double sse = 0.0, peak = 0.0;
  int n = 0;
  for (int iu = 4; iu < 12; ++iu) {
    for (int ix = 4; ix < 16; ++ix) {
      sse += std::pow(a.at(ix, iu) - b.at(ix, iu), 2);
      peak = std::max(peak, std::abs(b.at(ix, iu)));
      ++n;
    }
  }
  const auto e = reconstruction_error(a, b);
  EXPECT_NEAR(e.mse, sse / n, 1e-15);
  EXPECT_NEAR(e.psnr, 10 * std::log10(peak * peak / (sse / n)), 1e-9);
  EXPECT_EQ(reconstruction_error(a, a).psnr, kInfinity);
  EXPECT_THROW(reconstruction_error(a, Epi(EpiSampling::centered(20, 15, 1, 1, 1))),
               DimensionMismatch);
}

TEST(Suite, PairsAreSeparatedAndOccluded) {
  SpectrumSuiteParams p;
  p.scenes = 3;
  const auto pairs = spectrum_suite(p);
  ASSERT_EQ(pairs.size(), 3u);
  for (const auto& pair : pairs) {
    const double u0 = pair.sampling.u(0), u1 = pair.sampling.u(pair.sampling.nu - 1);
    EXPECT_TRUE(segments_separated(pair.clear, pair.sampling.focal, u0, u1));
    EXPECT_FALSE(segments_separated(pair.occluded, pair.sampling.focal, u0, u1));
    EXPECT_EQ(pair.occluded.segments.size(), pair.clear.segments.size() + 1);
    EXPECT_EQ(pair.occluder_depth, p.z_min);
  }
  const auto again = spectrum_suite(p);
  EXPECT_EQ(again[1].clear.segments[0].x_min, pairs[1].clear.segments[0].x_min);
}

TEST(Suite, FlatlandSweepCsvRoundTrip) {
  FlatlandSweepReport r{0.01, {{0, 1, 1.0, 0.01, 1e-4, 40.123456789}, {0, 2, 0.5, 0.01, 2e-4, 37.0}}};
  std::stringstream ss;
  write_flatland_sweep_csv(ss, r);
  const auto back = read_flatland_sweep_csv(ss);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.rows[0].psnr, 40.123456789);
  EXPECT_EQ(back.rows[1].ratio, 0.5);
  EXPECT_EQ(back.psnr(0, 2, 0.5), 37.0);
  EXPECT_THROW(back.psnr(3, 2, 0.5), InvalidArgument);
}
