#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/raycast.hpp"
#include "plenoptic/core/texture.hpp"
#include "plenoptic/mpi/fusion.hpp"
#include "plenoptic/mpi/mpi_io.hpp"

namespace fs = std::filesystem;
using namespace plenoptic;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("plenoptic_mpi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Rectangle textured(double depth, double cx, double cy, double w, double h, std::uint64_t seed,
                   double alpha = 1.0) {
  Rectangle r;
  r.depth = depth;
  r.center_x = cx;
  r.center_y = cy;
  r.width = w;
  r.height = h;
  NoiseTextureParams p;
  p.width = 48;
  p.height = 48;
  p.sigma_texels = 2.0;
  p.alpha = alpha;
  p.seed = seed;
  r.texture = smoothed_noise_texture(p);
  return r;
}

// Wall at 8, a half-transparent card at 3 and an opaque card at 1.5.
SyntheticScene layered_scene() {
  SyntheticScene s;
  s.rectangles = {textured(8.0, 0, 0, 20, 20, 1), textured(3.0, -0.3, 0.1, 1.0, 0.8, 2, 0.5),
                  textured(1.5, 0.2, -0.1, 0.4, 0.4, 3)};
  s.background = Rgba::opaque(0.1, 0.2, 0.3);
  return s;
}

Camera camera(int size = 48, Vec3 center = Vec3::Zero()) {
  return {CameraIntrinsics::from_horizontal_fov(60.0, size, size), CameraPose::translated(center)};
}

double max_abs_diff(const ImageRGBA& a, const ImageRGBA& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(double(a.data()[i]) - double(b.data()[i])));
  }
  return m;
}

// Colour PSNR over the interior, peak 1.
double interior_psnr(const ImageRGBA& a, const ImageRGBA& b, int crop) {
  double sse = 0.0;
  int n = 0;
  for (int y = crop; y < a.height() - crop; ++y) {
    for (int x = crop; x < a.width() - crop; ++x) {
      const Rgba p = a.at(x, y), q = b.at(x, y);
      sse += (p.r - q.r) * (p.r - q.r) + (p.g - q.g) * (p.g - q.g) + (p.b - q.b) * (p.b - q.b);
      n += 3;
    }
  }
  return 10.0 * std::log10(n / sse);
}

}  // namespace

TEST(PlaneDepths, EvenInDisparity) {
  const auto one = plane_depths(1, SceneBounds(1.0, 3.0));
  EXPECT_NEAR(one[0], 1.5, 1e-12);  // 1 / mean(1, 1/3)
  const auto d = plane_depths(5, SceneBounds::unbounded_far(2.0));
  EXPECT_EQ(d.front(), kInfinity);
  EXPECT_EQ(d.back(), 2.0);
  for (int k = 1; k < 4; ++k) {
    EXPECT_NEAR(1.0 / d[k] - 1.0 / d[k - 1], 0.125, 1e-12);
    EXPECT_GT(d[k - 1], d[k]);
  }
  EXPECT_THROW(plane_depths(0, SceneBounds(1, 2)), InvalidArgument);
}

TEST(PlaneDepths, NearestPlaneTiesGoNear) {
  const std::vector<double> depths{kInfinity, 2.0, 1.0};
  EXPECT_EQ(nearest_plane(depths, 1e9), 0);
  EXPECT_EQ(nearest_plane(depths, kInfinity), 0);
  EXPECT_EQ(nearest_plane(depths, 4.0), 1);  // disparity 0.25: equidistant from 0 and 0.5
  EXPECT_EQ(nearest_plane(depths, 1.1), 2);
}

TEST(Mpi, ReferenceViewMatchesRaycast) {
  const auto scene = layered_scene();
  const auto cam = camera();
  const auto truth = raycast(scene, cam.intrinsics, cam.pose);
  for (int planes : {1, 3, 8, 32}) {
    const auto mpi = build_mpi(scene, cam, planes, SceneBounds::unbounded_far(1.0));
    EXPECT_LT(max_abs_diff(mpi.flatten(), truth), 1e-6) << planes;
    EXPECT_LT(max_abs_diff(render_mpi(mpi, cam), truth), 1e-6) << planes;
  }
}

TEST(Mpi, MarginKeepsCentralBlock) {
  const auto scene = layered_scene();
  const auto cam = camera();
  MpiBuildOptions opt;
  opt.margin_px = 6;
  const auto mpi = build_mpi(scene, cam, 4, SceneBounds::unbounded_far(1.0), opt);
  EXPECT_EQ(mpi.plane(0).width(), 60);
  EXPECT_EQ(mpi.reference().intrinsics, cam.intrinsics.padded(6));
  const auto truth = raycast(scene, cam.intrinsics, cam.pose);
  EXPECT_LT(max_abs_diff(render_mpi(mpi, cam), truth), 1e-6);
}

TEST(Mpi, RejectsOutOfBoundsScene) {
  EXPECT_THROW(build_mpi(layered_scene(), camera(), 4, SceneBounds(2.0, 10.0)), OutOfBounds);
}

TEST(Mpi, WorkerCountInvariant) {
  const auto scene = layered_scene();
  const auto cam = camera();
  const auto a = build_mpi(scene, cam, 8, SceneBounds::unbounded_far(1.0), {4, 1});
  const auto b = build_mpi(scene, cam, 8, SceneBounds::unbounded_far(1.0), {4, 3});
  const Camera novel = camera(48, {0.05, -0.02, 0.0});
  EXPECT_EQ(render_mpi(a, novel, {1}), render_mpi(b, novel, {3}));
}

TEST(Mpi, CompositingOrderMatters) {
  const auto scene = layered_scene();
  const auto cam = camera();
  const auto mpi = build_mpi(scene, cam, 4, SceneBounds::unbounded_far(1.0));
  const auto forward = render_mpi_in_order(mpi, cam, {0, 1, 2, 3});
  EXPECT_EQ(forward, render_mpi(mpi, cam));
  const auto reversed = render_mpi_in_order(mpi, cam, {3, 2, 1, 0});
  EXPECT_GT(max_abs_diff(forward, reversed), 0.05);
  EXPECT_THROW(render_mpi_in_order(mpi, cam, {0, 4}), InvalidArgument);
}

TEST(Mpi, SinglePlaneSceneIsExactInNovelViews) {
  // All content on one plane: the homography warp is the true motion, so
  // novel views differ from ray casting only by resampling.
  SyntheticScene scene;
  scene.rectangles = {textured(2.0, 0, 0, 6, 6, 5)};
  const auto cam = camera(64);
  const auto mpi = build_mpi(scene, cam, 1, SceneBounds(2.0, 2.0));
  ASSERT_EQ(mpi.depths()[0], 2.0);
  for (const Vec3 c : {Vec3(0.1, 0.0, 0.0), Vec3(-0.05, 0.08, 0.0), Vec3(0.0, 0.0, 0.3)}) {
    const Camera novel{cam.intrinsics, CameraPose::translated(c)};
    const auto truth = raycast(scene, novel.intrinsics, novel.pose);
    EXPECT_GT(interior_psnr(render_mpi(mpi, novel), truth, 4), 30.0);
  }
}

TEST(Mpi, CameraPastNearestPlaneThrows) {
  const auto cam = camera();
  const auto mpi = build_mpi(layered_scene(), cam, 4, SceneBounds::unbounded_far(1.0));
  EXPECT_THROW(render_mpi(mpi, camera(48, {0, 0, 1.5})), InvalidArgument);
}

TEST(Fusion, TentWeights) {
  const auto cam = camera(16);
  const auto mpi = build_mpi(layered_scene(), cam, 2, SceneBounds::unbounded_far(1.0));
  std::vector<FusionMember> members;
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      const Camera ref{cam.intrinsics, CameraPose::translated({0.1 * i, 0.1 * j, 0.0})};
      members.push_back({MultiplaneImage(ref, mpi.depths(), mpi.planes()), i, j});
    }
  }
  const FusionNeighborhood hood(members, 0.1);
  const auto w = blend_weights(CameraPose::translated({0.025, 0.05, 0.0}), hood);
  EXPECT_FALSE(w.extrapolated);
  EXPECT_NEAR(w.weights[0], 0.75 * 0.5, 1e-12);
  EXPECT_NEAR(w.weights[1], 0.25 * 0.5, 1e-12);
  double sum = 0.0;
  for (double x : w.weights) sum += x;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  const auto corner = blend_weights(CameraPose::translated({0.1, 0.0, 0.0}), hood);
  EXPECT_NEAR(corner.weights[1], 1.0, 1e-12);
  const auto outside = blend_weights(CameraPose::translated({0.5, 0.5, 0.0}), hood);
  EXPECT_TRUE(outside.extrapolated);
  EXPECT_EQ(outside.weights[3], 1.0);

  members.push_back(members[0]);
  EXPECT_THROW(FusionNeighborhood(members, 0.1), InvalidArgument);
  EXPECT_THROW(FusionNeighborhood({}, 0.1), InvalidArgument);
}

TEST(Fusion, MemberPoseReproducesMember) {
  const auto scene = layered_scene();
  const auto intr = camera(32).intrinsics;
  std::vector<FusionMember> members;
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      const Camera ref{intr, CameraPose::translated({0.04 * i, 0.04 * j, 0.0})};
      members.push_back({build_mpi(scene, ref, 4, SceneBounds::unbounded_far(1.0)), i, j});
    }
  }
  const FusionNeighborhood hood(members, 0.04);
  const Camera at{intr, CameraPose::translated({0.04, 0.0, 0.0})};
  const auto fused = render_fused(hood, at);
  EXPECT_FALSE(fused.extrapolated);
  EXPECT_LT(max_abs_diff(fused.image, render_mpi(members[1].mpi, at)), 1e-6);
}

TEST(MpiIo, RoundTripIsBitExact) {
  const auto dir = scratch("io");
  const auto cam = camera(20);
  const auto mpi = build_mpi(layered_scene(), cam, 3, SceneBounds::unbounded_far(1.0), {2, 1});
  write_mpi(dir / "a.plnp", mpi);
  EXPECT_EQ(fs::file_size(dir / "a.plnp"), 136u + 8u * 3 + 16u * 24 * 24 * 3);
  const auto back = read_mpi(dir / "a.plnp");
  EXPECT_EQ(back.depths(), mpi.depths());
  EXPECT_EQ(back.depths()[0], kInfinity);
  EXPECT_EQ(back.reference().intrinsics, mpi.reference().intrinsics);
  EXPECT_EQ(back.reference().pose.rotation(), mpi.reference().pose.rotation());
  EXPECT_EQ(back.planes(), mpi.planes());

  std::ofstream(dir / "bad.plnp", std::ios::binary) << "NOTANMPI and some more bytes";
  EXPECT_THROW(read_mpi(dir / "bad.plnp"), ParseError);
  fs::resize_file(dir / "a.plnp", 200);
  EXPECT_THROW(read_mpi(dir / "a.plnp"), ParseError);
  EXPECT_THROW(read_mpi(dir / "missing.plnp"), IoError);
}

TEST(MpiIo, ExportsOnePngPerPlane) {
  const auto dir = scratch("png");
  const auto mpi = build_mpi(layered_scene(), camera(16), 5, SceneBounds::unbounded_far(1.0));
  export_mpi_planes_png(dir, mpi);
  int count = 0;
  for (const auto& e : fs::directory_iterator(dir)) count += e.path().extension() == ".png";
  EXPECT_EQ(count, 5);
  EXPECT_TRUE(fs::exists(dir / "plane_000.png"));
  EXPECT_TRUE(fs::exists(dir / "plane_004.png"));
}
