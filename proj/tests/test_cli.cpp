#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "plenoptic/cli/dispatch.hpp"
#include "plenoptic/cli/io_util.hpp"
#include "plenoptic/core/error.hpp"
#include "plenoptic/mpi/mpi_io.hpp"

namespace fs = std::filesystem;
using namespace plenoptic;
using namespace plenoptic::cli;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("plenoptic_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

std::vector<std::string> listing(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    names.push_back(fs::relative(e.path(), dir).string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

TEST(Cli, PlanPhoneExample) {
  const auto dir = scratch("plan");
  const auto r = call({"plan", "--width", "1000", "--fov", "64", "--zmin", "0.5", "--planes", "64",
                       "--side", "1", "-o", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "plan.json"));
  EXPECT_EQ(j["N"], 625);
  EXPECT_EQ(j["d_max"].get<double>(), 64.0);
  EXPECT_EQ(j["binding_constraint"], "layered");
  EXPECT_EQ(j["grid_n"], 729);
  EXPECT_EQ(j["area_n"], 626);
  EXPECT_EQ(j["inputs"]["z_max"], "inf");
  EXPECT_NE(r.out.find("625"), std::string::npos);

  std::ifstream js(dir / "plan.json");
  const auto summary = read_plan_json(js);
  EXPECT_EQ(summary.n, 625);
  EXPECT_EQ(summary.z_max, kInfinity);
  std::ostringstream again;
  write_plan_json(again, summary);
  EXPECT_EQ(again.str(), slurp(dir / "plan.json"));

  std::ifstream csv(dir / "plan.csv");
  const auto grid = read_plan_csv(csv);
  ASSERT_EQ(grid.size(), 729u);
  EXPECT_EQ(grid.back().pose.center(), Vec3(0.5, 0.5, 0.0));
  std::ostringstream csv_again;
  write_plan_csv(csv_again, grid);
  EXPECT_EQ(csv_again.str(), slurp(dir / "plan.csv"));
}

TEST(Cli, HelpOnEverySubcommand) {
  for (const std::string sub : {"plan", "spectrum", "flatland-sweep", "render", "validate"}) {
    const auto r = call({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
  }
  const auto top = call({"--help"});
  EXPECT_EQ(top.code, 0);
  EXPECT_NE(top.out.find("Default seeds"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"bogus"}).code, kExitUsage);
  EXPECT_EQ(call({"plan", "--zmin", "0.5"}).code, kExitUsage);  // no fov or focal
  EXPECT_EQ(call({"plan", "--fov", "64", "--focal", "800"}).code, kExitUsage);
  EXPECT_EQ(call({"plan", "--fov", "64", "--zmax", "far"}).code, kExitUsage);
  EXPECT_EQ(call({"render"}).code, kExitUsage);
  EXPECT_EQ(call({"plan", "--fov", "64", "--width", "abc"}).code, kExitUsage);
}

TEST(Cli, InputErrorsExitThree) {
  const auto dir = scratch("input");
  EXPECT_EQ(call({"plan", "--fov", "64", "--zmin", "-1", "-o", dir.string()}).code, kExitInput);
  EXPECT_EQ(call({"-c", (dir / "missing.yaml").string(), "plan", "--fov", "64"}).code, kExitInput);
  std::ofstream(dir / "typo.yaml") << "plan:\n  fov: 64\n  zmni: 0.5\n";
  const auto r = call({"-c", (dir / "typo.yaml").string(), "plan", "-o", dir.string()});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("zmni"), std::string::npos);
  EXPECT_NE(r.err.find("3"), std::string::npos);
  EXPECT_EQ(call({"spectrum", (dir / "nothing.yaml").string(), "-o", dir.string()}).code,
            kExitInput);
  EXPECT_FALSE(fs::exists(dir / "plan.json"));
}

TEST(Cli, ConfigPrecedence) {
  const auto dir = scratch("precedence");
  std::ofstream(dir / "run.yaml") << "output_dir: out\nseed: 5\nplan:\n  fov: 64\n  zmin: 0.5\n";
  auto cfg = load_config(dir / "run.yaml");
  EXPECT_EQ(cfg.output_dir, dir / "out");
  EXPECT_EQ(cfg.seed, 5u);
  EXPECT_EQ(cfg.plan.z_min, 0.5);

  std::ostringstream sink;
  const auto flagged = parse_command_line(
      {"-c", (dir / "run.yaml").string(), "plan", "--zmin", "0.25"}, sink);
  ASSERT_TRUE(flagged);
  EXPECT_EQ(flagged->plan.z_min, 0.25);
  EXPECT_EQ(*flagged->plan.fov, 64.0);
  EXPECT_EQ(flagged->output_dir, dir / "out");

  // Environment sits below the file but above the defaults.
  ::setenv(kOutputDirEnv, (dir / "env").c_str(), 1);
  const auto env_only = parse_command_line({"plan", "--fov", "64"}, sink);
  const auto file_wins = parse_command_line({"-c", (dir / "run.yaml").string(), "plan"}, sink);
  const auto flag_wins = parse_command_line({"-o", "flag", "plan", "--fov", "64"}, sink);
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(env_only->output_dir, dir / "env");
  EXPECT_EQ(file_wins->output_dir, dir / "out");
  EXPECT_EQ(flag_wins->output_dir, "flag");
  EXPECT_EQ(parse_command_line({"plan", "--fov", "64"}, sink)->output_dir, ".");

  std::ofstream(dir / "empty.yaml") << "";
  const auto empty = load_config(dir / "empty.yaml");
  EXPECT_EQ(empty.output_dir, ".");
  EXPECT_FALSE(empty.seed);

  std::ofstream(dir / "both.yaml") << "plan:\n  fov: 64\n  focal: 800\n";
  EXPECT_THROW(load_config(dir / "both.yaml"), ParseError);
  std::ofstream(dir / "top.yaml") << "outptu_dir: x\n";
  EXPECT_THROW(load_config(dir / "top.yaml"), ParseError);
}

TEST(Cli, RerunsAreByteIdentical) {
  const auto a = scratch("rerun_a"), b = scratch("rerun_b");
  for (const auto& dir : {a, b}) {
    ASSERT_EQ(call({"spectrum", "--suite", "--scenes", "2", "--nx", "64", "--nu", "32", "-o",
                    dir.string()}).code, 0);
    ASSERT_EQ(call({"flatland-sweep", "--scenes", "2", "--planes", "1", "2", "-o",
                    dir.string()}).code, 0);
  }
  EXPECT_EQ(listing(a), listing(b));
  for (const auto& name : listing(a)) {
    if (fs::is_regular_file(a / name)) EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  EXPECT_TRUE(fs::exists(a / "spectrum_suite.csv"));
  EXPECT_TRUE(fs::exists(a / "scene1_occluded_spectrum.png"));
}

TEST(Cli, SeedFlagChangesSuite) {
  const auto a = scratch("seed_a"), b = scratch("seed_b");
  ASSERT_EQ(call({"flatland-sweep", "--scenes", "1", "--planes", "1", "-o", a.string()}).code, 0);
  ASSERT_EQ(call({"--seed", "8", "flatland-sweep", "--scenes", "1", "--planes", "1", "-o",
                  b.string()}).code, 0);
  EXPECT_NE(slurp(a / "flatland_sweep.csv"), slurp(b / "flatland_sweep.csv"));
}

TEST(Cli, RenderSceneThenMpi) {
  const auto dir = scratch("render");
  const auto scene = fs::path(PLENOPTIC_TEST_DATA) / "desk.yaml";
  const auto r = call({"render", "--scene", scene.string(), "--width", "48", "--planes", "4",
                       "--pose", "0,0,0", "--pose", "0.01,0,0", "--save-mpi", "--export-planes",
                       "-o", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "frame_000.png"));
  EXPECT_TRUE(fs::exists(dir / "frame_001.png"));
  EXPECT_TRUE(fs::exists(dir / "planes" / "plane_003.png"));
  const auto mpi = read_mpi(dir / "mpi.plnp");
  EXPECT_EQ(mpi.plane_count(), 4);

  const auto out2 = dir / "again";
  const auto r2 = call({"render", "--mpi", (dir / "mpi.plnp").string(), "--pose", "0.01,0,0",
                        "--format", "pfm", "-o", out2.string()});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_TRUE(fs::exists(out2 / "frame_000.pfm"));
  EXPECT_EQ(call({"render", "--mpi", (dir / "mpi.plnp").string(), (dir / "mpi.plnp").string(),
                  "--pose", "0,0,0", "-o", out2.string()}).code, kExitInput);
  EXPECT_EQ(call({"render", "--scene", scene.string(), "--pose", "1,2", "-o", out2.string()}).code,
            kExitUsage);
}

TEST(Cli, ValidateAssertExitsFour) {
  const auto dir = scratch("validate");
  const std::vector<std::string> base{"validate", "--scenes", "3", "--planes", "1",
                                      "--disparities", "1", "2", "--poses-per-cell", "1"};
  auto ok = base;
  ok.insert(ok.end(), {"-o", dir.string()});
  ASSERT_EQ(call(ok).code, 0);
  EXPECT_TRUE(fs::exists(dir / "sweep.csv"));
  EXPECT_TRUE(fs::exists(dir / "sweep_plot.csv"));
  EXPECT_TRUE(fs::exists(dir / "knees.csv"));
  // One plane at 64 px of disparity is far outside the band: no knee.
  const std::vector<std::string> strict{"validate", "--scenes", "3", "--planes", "1",
                                        "--disparities", "64", "--poses-per-cell", "1",
                                        "--assert", "-o", (dir / "strict").string()};
  EXPECT_EQ(call(strict).code, kExitValidation);
}

TEST(IoUtil, AtomicWriteLeavesNothingOnFailure) {
  const auto dir = scratch("atomic");
  EXPECT_THROW(write_atomic_text(dir / "x.csv",
                                 [](std::ostream& os) {
                                   os << "partial";
                                   throw IoError("disk full");
                                 }),
               IoError);
  EXPECT_TRUE(fs::is_empty(dir));
  std::ofstream(dir / "y.csv") << "old";
  EXPECT_THROW(write_atomic(dir / "y.csv", [](const fs::path&) { throw IoError("nope"); }),
               IoError);
  EXPECT_EQ(slurp(dir / "y.csv"), "old");
  EXPECT_EQ(listing(dir), std::vector<std::string>{"y.csv"});
  write_atomic_text(dir / "y.csv", [](std::ostream& os) { os << "new"; });
  EXPECT_EQ(slurp(dir / "y.csv"), "new");
}

TEST(IoUtil, PoseCsvFormats) {
  std::istringstream xyz("x,y,z\n0.1,0.2,0.3\n1,2,3\n");
  const auto poses = read_pose_csv(xyz);
  ASSERT_EQ(poses.size(), 2u);
  EXPECT_EQ(poses[0].center(), Vec3(0.1, 0.2, 0.3));
  std::istringstream bad("x,y\n1,2\n");
  EXPECT_THROW(read_pose_csv(bad), ParseError);
}
