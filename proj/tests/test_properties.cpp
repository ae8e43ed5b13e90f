#include <gtest/gtest.h>

#include <cmath>

#include "plenoptic/core/random.hpp"
#include "plenoptic/core/raycast.hpp"
#include "plenoptic/flatland/suite.hpp"
#include "plenoptic/harness/scene_suite.hpp"
#include "plenoptic/mpi/render.hpp"
#include "plenoptic/sampling/camera_grid.hpp"

using namespace plenoptic;
using namespace plenoptic::flatland;

namespace {

constexpr int kTrials = 200;

SamplingInputs random_inputs(Rng& rng) {
  const int w = 64 + static_cast<int>(rng.uniform(0.0, 4000.0));
  const auto k = CameraIntrinsics::from_horizontal_fov(rng.uniform(10.0, 120.0), w, w,
                                                       rng.uniform(0.5, 2.0));
  const double z_min = rng.uniform(0.05, 10.0);
  const bool far = rng.uniform() < 0.5;
  const SceneBounds b = far ? SceneBounds::unbounded_far(z_min)
                            : SceneBounds(z_min, z_min * rng.uniform(1.5, 50.0));
  const int planes = 1 + static_cast<int>(rng.uniform(0.0, 256.0));
  return {k, b, Bandwidth::unlimited(), planes, rng.uniform() < 0.8};
}

}  // namespace

TEST(Properties, IntervalMonotonicity) {
  Rng rng(101);
  for (int t = 0; t < kTrials; ++t) {
    const auto in = random_inputs(rng);
    const double base = combined_interval(in).delta_u;
    // Nearer content never allows a wider spacing.
    auto nearer = in;
    nearer.bounds = SceneBounds(0.5 * in.bounds.z_min(), in.bounds.z_max());
    EXPECT_LE(combined_interval(nearer).delta_u, base);
    // More planes never force a narrower spacing.
    auto more = in;
    more.planes = 2 * in.planes;
    EXPECT_GE(combined_interval(more).delta_u, base);
    // A longer focal length never allows a wider spacing.
    auto longer = in;
    longer.intrinsics = CameraIntrinsics(2.0 * in.intrinsics.focal_length(),
                                         in.intrinsics.pixel_pitch(), in.intrinsics.width(),
                                         in.intrinsics.height());
    EXPECT_LE(combined_interval(longer).delta_u, base);
    // Lower bandwidth never narrows the spacing.
    auto soft = in;
    soft.bandwidth = Bandwidth::limited(0.2 / in.intrinsics.pixel_pitch());
    EXPECT_GE(combined_interval(soft).delta_u, base);
  }
}

TEST(Properties, MaxDisparityBoundedByPlanesAndHalfWidth) {
  Rng rng(102);
  for (int t = 0; t < kTrials; ++t) {
    const auto in = random_inputs(rng);
    if (!in.occluded || !in.bounds.far_is_infinite()) continue;  // the D-pixel regime
    const auto plan = plan_camera_grid(in, 0.0);
    const double cap = std::min<double>(in.planes, 0.5 * in.intrinsics.width());
    EXPECT_LE(plan.d_max, cap * (1 + 1e-12)) << t;
    EXPECT_NEAR(plan.d_max, cap, 1e-9 * cap) << t;
  }
}

TEST(Properties, UnitInvariance) {
  Rng rng(103);
  for (int t = 0; t < kTrials; ++t) {
    const auto in = random_inputs(rng);
    const double base = combined_interval(in).delta_u;
    // Same sensor in another length unit for focal length and pitch.
    const double s = rng.uniform(0.001, 1000.0);
    auto units = in;
    units.intrinsics = CameraIntrinsics(in.intrinsics.focal_length() * s,
                                        in.intrinsics.pixel_pitch() * s, in.intrinsics.width(),
                                        in.intrinsics.height());
    EXPECT_NEAR(combined_interval(units).delta_u, base, 1e-10 * base);
    // Scene lengths in another unit scale the spacing with them.
    const double m = rng.uniform(0.01, 100.0);
    auto scaled = in;
    scaled.bounds = SceneBounds(in.bounds.z_min() * m, in.bounds.z_max() * m);
    EXPECT_NEAR(combined_interval(scaled).delta_u, m * base, 1e-10 * m * base);
  }
}

TEST(Properties, PlanGridSpacingWithinInterval) {
  Rng rng(104);
  for (int t = 0; t < 50; ++t) {
    const auto in = random_inputs(rng);
    const double du = combined_interval(in).delta_u;
    const double side = du * rng.uniform(0.0, 40.0);
    const auto plan = plan_camera_grid(in, side);
    EXPECT_LE(plan.spacing, du * (1 + 1e-12));
    EXPECT_EQ(plan.total, static_cast<std::size_t>(plan.per_axis) * plan.per_axis);
    // One fewer camera per axis would break the bound.
    if (plan.per_axis > 2) EXPECT_GT(side / (plan.per_axis - 2), du);
  }
}

TEST(Properties, LayersDoNotAdd) {
  // Overlapping opaque layers: the composite is never the sum of the parts.
  Rng rng(105);
  const auto s = EpiSampling::centered(32, 4, 1.0, 0.02, 32.0);
  for (int t = 0; t < 20; ++t) {
    FlatSegment near, far;
    near.depth = rng.uniform(1.0, 2.0);
    far.depth = rng.uniform(3.0, 6.0);
    near.x_min = -0.2;
    near.x_max = 0.2;
    far.x_min = -10.0;
    far.x_max = 10.0;
    near.texture = BandLimitedNoise::constant(rng.uniform(0.2, 0.8));
    far.texture = BandLimitedNoise::constant(rng.uniform(0.2, 0.8));
    const FlatScene both{{near, far}, 0.0}, a{{near}, 0.0}, b{{far}, 0.0};
    const auto c = render_epi(both, s), ea = render_epi(a, s), eb = render_epi(b, s);
    EXPECT_NEAR(c.at(16, 0), ea.at(16, 0), 1e-9);
    EXPECT_GT(std::abs(ea.at(16, 0) + eb.at(16, 0) - c.at(16, 0)), 0.1);
  }
}

TEST(Properties, ShearLawUnderRandomDepths) {
  Rng rng(106);
  for (int t = 0; t < 20; ++t) {
    const int disp = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
    const double z = rng.uniform(0.5, 5.0), f = 50.0;
    FlatScene scene;
    FlatSegment seg;
    seg.depth = z;
    seg.x_min = -1e3;
    seg.x_max = 1e3;
    seg.texture = BandLimitedNoise(0.2, 0.5, 0.2, 8, static_cast<std::uint64_t>(t));
    scene.segments = {seg};
    const auto s = EpiSampling::centered(40, 3, 1.0, disp * z / f, f);
    const auto e = render_epi(scene, s);
    for (int ix = 0; ix + disp < 40; ++ix) EXPECT_NEAR(e.at(ix, 1), e.at(ix + disp, 0), 1e-9);
  }
}

TEST(Properties, DeterministicAcrossWorkers) {
  FlatlandSweepConfig cfg;
  cfg.scenes = 2;
  cfg.planes = {1, 4};
  cfg.ratios = {1.0};
  cfg.nx = 96;
  cfg.span_intervals = 8;
  const auto a = run_flatland_sweep(cfg);
  cfg.workers = 3;
  const auto b = run_flatland_sweep(cfg);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].psnr, b.rows[i].psnr);

  SpectrumSuiteParams sp;
  sp.scenes = 2;
  sp.nx = 64;
  sp.nu = 32;
  const auto s1 = run_spectrum_suite(sp, 1.0, 1), s3 = run_spectrum_suite(sp, 1.0, 3);
  ASSERT_EQ(s1.size(), s3.size());
  for (std::size_t i = 0; i < s1.size(); ++i) EXPECT_EQ(s1[i].energy, s3[i].energy);
}

TEST(Properties, MpiReferenceViewIsExactOnSuiteScenes) {
  SceneSuiteParams p;
  p.count = 3;
  p.width = 40;
  p.height = 40;
  const auto k = p.intrinsics();
  for (const auto& s : make_scene_suite(p)) {
    const auto truth = raycast(s.scene, k, CameraPose());
    for (int planes : {1, 5, 17}) {
      const auto img = render_mpi(build_mpi(s.scene, {k, CameraPose()}, planes, s.bounds), {k, {}});
      for (std::size_t i = 0; i < img.data().size(); ++i) {
        ASSERT_NEAR(img.data()[i], truth.data()[i], 1e-6) << s.id << " " << planes;
      }
    }
  }
}
