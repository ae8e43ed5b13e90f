#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "plenoptic/core/error.hpp"
#include "plenoptic/sampling/camera_grid.hpp"

using namespace plenoptic;

namespace {

// The phone setup: 1 MP, 64 degree horizontal field of view.
CameraIntrinsics phone() { return CameraIntrinsics::from_horizontal_fov(64.0, 1000, 1000); }

SamplingInputs phone_inputs(int planes, double z_min = 0.5) {
  return {phone(), SceneBounds::unbounded_far(z_min), Bandwidth::unlimited(), planes, true};
}

}  // namespace

TEST(Interval, NyquistMatchesOnePixelDisparity) {
  // Independent route: one pixel of disparity at z_min means du = z_min / f.
  const double f = 500.0 / std::tan(32.0 * std::numbers::pi / 180.0);
  const double du = nyquist_interval(phone_inputs(1)).value();
  EXPECT_NEAR(du, 0.5 / f, 1e-15);
  EXPECT_NEAR(du, 6.2487e-4, 1e-7);
  EXPECT_NEAR(interval_to_disparity(6.249e-4, phone(), 0.5), 1.0, 1e-3);
}

TEST(Interval, OcclusionHalvesAndReductionIdentity) {
  auto in = phone_inputs(1);
  in.occluded = false;
  const double open = nyquist_interval(in).value();
  in.occluded = true;
  EXPECT_EQ(nyquist_interval(in).value(), 0.5 * open);
  EXPECT_EQ(layered_interval(in).value(), nyquist_interval(in).value());
  EXPECT_THROW(nyquist_interval(phone_inputs(2)), InvalidArgument);
}

TEST(Interval, SixtyFourPlanesGiveSixtyFourPixels) {
  const auto plan = plan_camera_grid(phone_inputs(64), 1.0);
  EXPECT_EQ(plan.binding, BindingConstraint::layered);
  EXPECT_EQ(plan.d_max, 64.0);
  EXPECT_NEAR(interval_to_disparity(plan.delta_u, phone(), 0.5), 64.0, 1e-9);
}

TEST(Interval, FieldOfViewBindsPastHalfWidth) {
  const auto c = combined_interval(phone_inputs(1000));
  EXPECT_EQ(c.binding, BindingConstraint::field_of_view);
  EXPECT_NEAR(interval_to_disparity(c.delta_u, phone(), 0.5), 500.0, 1e-9);
  const auto plan = plan_camera_grid(phone_inputs(1000), 1.0);
  EXPECT_EQ(plan.d_max, 500.0);
}

TEST(Interval, CombinedIsTheSmaller) {
  for (int d : {1, 16, 64, 400, 600, 5000}) {
    const auto in = phone_inputs(d);
    const auto c = combined_interval(in);
    EXPECT_LE(c.delta_u, layered_interval(in).value());
    EXPECT_LE(c.delta_u, fov_interval(in.intrinsics, 0.5));
  }
}

TEST(Interval, ZeroDisparityBandIsUnbounded) {
  SamplingInputs in{phone(), SceneBounds(2.0, 2.0), Bandwidth::unlimited(), 1, true};
  EXPECT_TRUE(nyquist_interval(in).is_unbounded());
  EXPECT_THROW(nyquist_interval(in).value(), InvalidArgument);
  const auto c = combined_interval(in);
  EXPECT_EQ(c.binding, BindingConstraint::field_of_view);
  EXPECT_TRUE(std::isfinite(c.delta_u));
}

TEST(Interval, BandwidthCapsAtPixelNyquist) {
  EXPECT_EQ(max_spatial_frequency(Bandwidth::unlimited(), 1.0), 0.5);
  EXPECT_EQ(max_spatial_frequency(Bandwidth::limited(0.25), 1.0), 0.25);
  EXPECT_EQ(max_spatial_frequency(Bandwidth::limited(3.0), 1.0), 0.5);
  EXPECT_THROW(Bandwidth::limited(0.0), InvalidArgument);
  auto in = phone_inputs(1);
  in.bandwidth = Bandwidth::limited(0.25);
  EXPECT_NEAR(nyquist_interval(in).value(), 2.0 * nyquist_interval(phone_inputs(1)).value(),
              1e-18);
}

TEST(Density, PhoneAtHalfMetre) {
  // Quoted figure: 2.5 million images per square metre, +-10% for its rounding.
  const double n = nyquist_density(phone(), 0.5);
  EXPECT_NEAR(n, 2.5e6, 0.25e6);
  EXPECT_NEAR(n, 2.5611e6, 1e3);
  EXPECT_NEAR(nyquist_density(phone(), 0.25) / n, 4.0, 1e-12);
}

TEST(Density, SixtyFourPlanesReduceBy4096) {
  const double d1 = combined_interval(phone_inputs(1)).delta_u;
  const double d64 = combined_interval(phone_inputs(64)).delta_u;
  EXPECT_EQ((1.0 / (d1 * d1)) / (1.0 / (d64 * d64)), 4096.0);
}

TEST(Guideline, ClosedFormCount) {
  // W / sqrt(N) <= 80 * 0.5 / 1 = 40  =>  sqrt(N) >= 25.
  const auto g = prescriptive_image_count(1000, 0.5, 1.0);
  EXPECT_EQ(g.total, 625);
  EXPECT_EQ(g.per_axis, 25);
  EXPECT_DOUBLE_EQ(g.exact_per_axis, 25.0);
  const auto tiny = prescriptive_image_count(1000, 0.5, 0.0);
  EXPECT_EQ(tiny.total, 4);
  EXPECT_EQ(tiny.per_axis, 2);
  EXPECT_EQ(prescriptive_image_count(1000, 0.5, 1.0 + 1e-9).total, 626);
  EXPECT_THROW(prescriptive_image_count(1, 0.5, 1.0), InvalidArgument);
}

TEST(Guideline, AgreesWithGeneralPipelineWithinRounding) {
  const auto plan = plan_camera_grid(phone_inputs(64), 1.0);
  const auto g = prescriptive_image_count(1000, 0.5, 1.0);
  // Intervals per axis from the general bound versus the closed form.
  const double general = plan.side / plan.delta_u;
  EXPECT_LT(std::abs(general - g.exact_per_axis), 1.0);
  EXPECT_EQ(plan.guideline_total, 625);
  // The constant 80 rounds 64 * 2 tan(32 deg) = 79.97, so the closed-form
  // spacing S / sqrt(N) sits 0.02% above the general bound.
  EXPECT_NEAR(plan.side / std::sqrt(double(g.total)), plan.delta_u, 1e-3 * plan.delta_u);
  EXPECT_EQ(std::ceil(general), g.per_axis + 1);
}

TEST(Grid, SpansSideWithSpacingWithinBound) {
  const auto plan = plan_camera_grid(phone_inputs(64), 1.0);
  EXPECT_EQ(plan.per_axis, 27);
  EXPECT_EQ(plan.total, 729);
  EXPECT_LE(plan.spacing, plan.delta_u);
  ASSERT_EQ(plan.grid.size(), 729u);
  EXPECT_EQ(plan.grid.front().pose.center(), Vec3(-0.5, -0.5, 0.0));
  EXPECT_EQ(plan.grid.back().pose.center(), Vec3(0.5, 0.5, 0.0));
  for (const auto& c : plan.grid) EXPECT_EQ(c.pose.rotation(), Mat3::Identity());
}

TEST(Grid, DegenerateSides) {
  const auto in = phone_inputs(64);
  const auto zero = plan_camera_grid(in, 0.0);
  EXPECT_EQ(zero.per_axis, 2);
  EXPECT_EQ(zero.grid.size(), 4u);
  const double du = combined_interval(in).delta_u;
  EXPECT_EQ(plan_camera_grid(in, du).per_axis, 2);
  EXPECT_EQ(plan_camera_grid(in, 3.0 * du).per_axis, 4);
  EXPECT_THROW(plan_camera_grid(in, -1.0), InvalidArgument);
}

TEST(Grid, PlaneCountValidated) {
  EXPECT_THROW(plan_camera_grid(phone_inputs(0), 1.0), InvalidArgument);
}
