#include "plenoptic/cli/dispatch.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "plenoptic/cli/io_util.hpp"
#include "plenoptic/core/error.hpp"
#include "plenoptic/core/format.hpp"
#include "plenoptic/core/image_io.hpp"
#include "plenoptic/core/parallel.hpp"
#include "plenoptic/core/raycast.hpp"
#include "plenoptic/core/scene_io.hpp"
#include "plenoptic/flatland/report.hpp"
#include "plenoptic/flatland/suite.hpp"
#include "plenoptic/harness/report.hpp"
#include "plenoptic/harness/sweep.hpp"
#include "plenoptic/mpi/fusion.hpp"
#include "plenoptic/mpi/mpi_io.hpp"
#include "plenoptic/sampling/camera_grid.hpp"

namespace plenoptic::cli {
namespace {

namespace fs = std::filesystem;

// Flag values are parsed into staging slots and copied over the file-loaded
// config afterwards, but only for flags that were actually given.
class Overrides {
 public:
  template <typename T, typename Field>
  CLI::Option* option(CLI::App* app, const std::string& name, const std::string& help,
                      const T& shown_default, Field field) {
    auto slot = std::make_shared<T>(shown_default);
    auto* opt = app->add_option(name, *slot, help)->capture_default_str();
    apply_.push_back([opt, slot, field](RunConfig& c) {
      if (opt->count() > 0) field(c) = *slot;
    });
    return opt;
  }

  template <typename Field>
  CLI::Option* flag(CLI::App* app, const std::string& name, const std::string& help,
                    bool value, Field field) {
    auto* opt = app->add_flag(name, help);
    apply_.push_back([opt, value, field](RunConfig& c) {
      if (opt->count() > 0) field(c) = value;
    });
    return opt;
  }

  // For values that need conversion after parsing.
  template <typename T, typename Apply>
  CLI::Option* custom(CLI::App* app, const std::string& name, const std::string& help,
                      Apply apply) {
    auto slot = std::make_shared<T>();
    auto* opt = app->add_option(name, *slot, help);
    apply_.push_back([opt, slot, apply](RunConfig& c) {
      if (opt->count() > 0) apply(c, *slot);
    });
    return opt;
  }

  void apply(RunConfig& c) const {
    for (const auto& f : apply_) f(c);
  }

 private:
  std::vector<std::function<void(RunConfig&)>> apply_;
};

std::string seed_note() {
  return "Default seeds: spectrum 20241, flatland-sweep 7, validate scenes 1234 and poses 99. "
         "--seed replaces the scene seed of the chosen workflow.";
}

std::vector<double> parse_triple(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  for (std::string cell; std::getline(ss, cell, ',');) {
    try {
      v.push_back(parse_double(cell));
    } catch (const std::exception&) {
      throw UsageError("pose '" + s + "' is not x,y,z");
    }
  }
  if (v.size() != 3) throw UsageError("pose '" + s + "' is not x,y,z");
  return v;
}

void build_app(CLI::App& app, Overrides& ov, std::string& config_path, const RunConfig& d) {
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-c,--config", config_path, "YAML run file; flags override its values");
  ov.option(&app, "-o,--output-dir", "Output directory (default $" + std::string(kOutputDirEnv) +
                                         " or the current directory)",
            std::string("."), [](RunConfig& c) -> auto& { return c.output_dir; });
  ov.custom<std::uint64_t>(&app, "--seed", "Scene seed for the chosen workflow (defaults below)",
                           [](RunConfig& c, std::uint64_t v) { c.seed = v; });
  ov.option(&app, "-j,--workers", "Worker threads (0 = all cores)", d.workers,
            [](RunConfig& c) -> auto& { return c.workers; });
  ov.option(&app, "-v,--verbosity", "0 quiet, 1 summaries", d.verbosity,
            [](RunConfig& c) -> auto& { return c.verbosity; });

  // plan
  auto* plan = app.add_subcommand("plan", "Camera-grid sampling plan for a capture setup");
  const auto& p = d.plan;
  ov.option(plan, "--width", "Image width W, pixels", p.width,
            [](RunConfig& c) -> auto& { return c.plan.width; });
  ov.option(plan, "--height", "Image height, pixels (0 = width)", p.height,
            [](RunConfig& c) -> auto& { return c.plan.height; });
  auto* fov = ov.custom<double>(plan, "--fov", "Horizontal field of view, degrees",
                                [](RunConfig& c, double v) {
                                  c.plan.fov = v;
                                  c.plan.focal.reset();
                                });
  auto* focal = ov.custom<double>(plan, "--focal", "Focal length in pixel-pitch units",
                                  [](RunConfig& c, double v) {
                                    c.plan.focal = v;
                                    c.plan.fov.reset();
                                  });
  fov->excludes(focal);
  ov.option(plan, "--pitch", "Pixel pitch", p.pitch,
            [](RunConfig& c) -> auto& { return c.plan.pitch; });
  ov.option(plan, "--zmin", "Nearest scene depth", p.z_min,
            [](RunConfig& c) -> auto& { return c.plan.z_min; });
  ov.custom<std::string>(plan, "--zmax", "Farthest scene depth (inf allowed) [default: inf]",
                         [](RunConfig& c, const std::string& v) {
                           try {
                             c.plan.z_max = parse_double(v);
                           } catch (const std::exception&) {
                             throw UsageError("--zmax: '" + v + "' is not a number");
                           }
                         });
  ov.option(plan, "-D,--planes", "MPI planes D", p.planes,
            [](RunConfig& c) -> auto& { return c.plan.planes; });
  ov.option(plan, "-S,--side", "Side of the square viewpoint region", p.side,
            [](RunConfig& c) -> auto& { return c.plan.side; });
  ov.custom<double>(plan, "--bandwidth",
                    "Scene bandwidth B_x, cycles per image-plane unit [default: pixel Nyquist]",
                    [](RunConfig& c, double v) { c.plan.bandwidth = v; });
  ov.option(plan, "--occluded", "Use the occlusion-aware (halved) interval", p.occluded,
            [](RunConfig& c) -> auto& { return c.plan.occluded; });

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "EPI spectra and support-energy reports");
  const auto& s = d.spectrum;
  ov.custom<std::string>(spec, "scene", "Flatland scene YAML",
                         [](RunConfig& c, const std::string& v) { c.spectrum.scene = v; });
  ov.flag(spec, "--suite", "Run the seeded clear/occluded scene-pair suite", true,
          [](RunConfig& c) -> auto& { return c.spectrum.suite; });
  ov.option(spec, "--scenes", "Suite scene pairs", s.scenes,
            [](RunConfig& c) -> auto& { return c.spectrum.scenes; });
  ov.option(spec, "--nx", "EPI columns", s.nx, [](RunConfig& c) -> auto& { return c.spectrum.nx; });
  ov.option(spec, "--nu", "EPI rows (camera positions)", s.nu,
            [](RunConfig& c) -> auto& { return c.spectrum.nu; });
  ov.option(spec, "--focal", "Focal length, pixels", s.focal,
            [](RunConfig& c) -> auto& { return c.spectrum.focal; });
  ov.option(spec, "--row-disparity", "Disparity of z_min between adjacent rows, pixels",
            s.row_disparity, [](RunConfig& c) -> auto& { return c.spectrum.row_disparity; });
  ov.option(spec, "--window", "none or hann", s.window,
            [](RunConfig& c) -> auto& { return c.spectrum.window; });
  ov.option(spec, "--dilation", "Parallelogram half-height scale", s.dilation,
            [](RunConfig& c) -> auto& { return c.spectrum.dilation; });
  ov.custom<double>(spec, "--occluder-depth",
                    "Also report the parallelogram support for an occluder at this depth",
                    [](RunConfig& c, double v) { c.spectrum.occluder_depth = v; });
  ov.flag(spec, "--no-heatmaps", "Skip the PNG heatmaps", false,
          [](RunConfig& c) -> auto& { return c.spectrum.heatmaps; });

  // flatland-sweep
  auto* flat = app.add_subcommand("flatland-sweep",
                                  "Layered reconstruction PSNR against camera spacing");
  const auto& f = d.flatland_sweep;
  ov.option(flat, "--scenes", "Seeded scenes", f.scenes,
            [](RunConfig& c) -> auto& { return c.flatland_sweep.scenes; });
  ov.option(flat, "--planes", "Layer counts D", f.planes,
            [](RunConfig& c) -> auto& { return c.flatland_sweep.planes; })
      ->delimiter(',');
  ov.option(flat, "--ratios", "Spacing as multiples of D times the single-plane bound",
            f.ratios, [](RunConfig& c) -> auto& { return c.flatland_sweep.ratios; })
      ->delimiter(',');

  // render
  auto* render = app.add_subcommand("render", "Render novel views from a scene or MPI files");
  const auto& r = d.render;
  ov.custom<std::string>(render, "--scene", "Scene YAML (builds an MPI at the origin)",
                         [](RunConfig& c, const std::string& v) { c.render.scene = v; });
  ov.custom<std::vector<std::string>>(render, "--mpi",
                                      "MPI container(s); several are fused as a grid",
                                      [](RunConfig& c, const std::vector<std::string>& v) {
                                        c.render.mpis.assign(v.begin(), v.end());
                                      });
  ov.custom<std::vector<std::string>>(render, "--pose", "Camera centre x,y,z (repeatable)",
                                      [](RunConfig& c, const std::vector<std::string>& v) {
                                        c.render.poses.clear();
                                        for (const auto& s : v) {
                                          c.render.poses.push_back(parse_triple(s));
                                        }
                                      });
  ov.custom<std::string>(render, "--poses-csv", "Pose CSV (x,y,z or plan.csv layout)",
                         [](RunConfig& c, const std::string& v) { c.render.poses_csv = v; });
  ov.option(render, "--width", "Image width", r.width,
            [](RunConfig& c) -> auto& { return c.render.width; });
  ov.option(render, "--height", "Image height (0 = width)", r.height,
            [](RunConfig& c) -> auto& { return c.render.height; });
  ov.option(render, "--fov", "Horizontal field of view, degrees", r.fov,
            [](RunConfig& c) -> auto& { return c.render.fov; });
  ov.option(render, "-D,--planes", "MPI planes", r.planes,
            [](RunConfig& c) -> auto& { return c.render.planes; });
  ov.custom<double>(render, "--zmin", "Nearest depth [default: scene bounds or content]",
                    [](RunConfig& c, double v) { c.render.z_min = v; });
  ov.option(render, "--margin", "MPI plane padding, pixels per side", r.margin,
            [](RunConfig& c) -> auto& { return c.render.margin; });
  ov.option(render, "--format", "png or pfm", r.format,
            [](RunConfig& c) -> auto& { return c.render.format; })
      ->check(CLI::IsMember({"png", "pfm"}));
  ov.flag(render, "--save-mpi", "Write the built MPI container", true,
          [](RunConfig& c) -> auto& { return c.render.save_mpi; });
  ov.flag(render, "--export-planes", "Write one PNG per MPI plane", true,
          [](RunConfig& c) -> auto& { return c.render.export_planes; });

  // validate
  auto* val = app.add_subcommand("validate", "3-D disparity sweep against the dense baseline");
  const auto& v = d.validate;
  ov.option(val, "--scenes", "Seeded scenes (at least 3)", v.scenes,
            [](RunConfig& c) -> auto& { return c.validate.scenes; });
  ov.option(val, "--planes", "Plane counts D", v.planes,
            [](RunConfig& c) -> auto& { return c.validate.planes; })
      ->delimiter(',');
  ov.option(val, "--disparities", "Adjacent-view disparities d, pixels", v.disparities,
            [](RunConfig& c) -> auto& { return c.validate.disparities; })
      ->delimiter(',');
  ov.option(val, "--metric", "ssim or psnr", v.metric,
            [](RunConfig& c) -> auto& { return c.validate.metric; })
      ->check(CLI::IsMember({"ssim", "psnr"}));
  ov.custom<double>(val, "--margin",
                    "Band below the baseline [default: " + format_double(kSsimMargin) +
                        " ssim, " + format_double(kPsnrMargin) + " dB psnr]",
                    [](RunConfig& c, double m) { c.validate.margin = m; });
  ov.option(val, "--poses-per-cell", "Held-out poses per cell", v.poses_per_cell,
            [](RunConfig& c) -> auto& { return c.validate.poses_per_cell; });
  ov.flag(val, "--debug-png", "Write the cell-centre render of every cell", true,
          [](RunConfig& c) -> auto& { return c.validate.debug_png; });
  ov.flag(val, "--assert", "Exit 4 unless every D has its knee near d = D on enough scenes",
          true, [](RunConfig& c) -> auto& { return c.validate.assert_knees; });
  ov.option(val, "--knee-fraction", "Required share of scenes for --assert", v.knee_fraction,
            [](RunConfig& c) -> auto& { return c.validate.knee_fraction; });
}

// --- workflows ------------------------------------------------------------

fs::path out_path(const RunConfig& c, const std::string& name) { return c.output_dir / name; }

void write_text(const RunConfig& c, const std::string& name,
                const std::function<void(std::ostream&)>& writer) {
  write_atomic_text(out_path(c, name), writer);
}

void run_plan(const RunConfig& c, std::ostream& out) {
  const auto& o = c.plan;
  if (o.fov.has_value() == o.focal.has_value()) {
    throw UsageError("plan needs exactly one of --fov or --focal");
  }
  const int h = o.height > 0 ? o.height : o.width;
  const CameraIntrinsics k = o.fov ? CameraIntrinsics::from_horizontal_fov(*o.fov, o.width, h,
                                                                           o.pitch)
                                   : CameraIntrinsics(*o.focal, o.pitch, o.width, h);
  SamplingInputs inputs{k, SceneBounds(o.z_min, o.z_max),
                        o.bandwidth ? Bandwidth::limited(*o.bandwidth) : Bandwidth::unlimited(),
                        o.planes, o.occluded};
  inputs.validate();
  const auto plan = plan_camera_grid(inputs, o.side);
  const auto summary = summarize_plan(inputs, plan);
  write_text(c, "plan.csv", [&](std::ostream& os) { write_plan_csv(os, plan.grid); });
  write_text(c, "plan.json", [&](std::ostream& os) { write_plan_json(os, summary); });
  if (c.verbosity > 0) print_plan(out, summary);
}

void run_spectrum(const RunConfig& c, std::ostream& out) {
  using namespace flatland;
  const auto& o = c.spectrum;
  if (o.suite == o.scene.has_value()) {
    throw UsageError("spectrum needs either a scene file or --suite");
  }
  const Window window = parse_window(o.window);
  if (o.suite) {
    SpectrumSuiteParams p;
    p.scenes = o.scenes;
    p.nx = o.nx;
    p.nu = o.nu;
    p.focal = o.focal;
    p.row_disparity = o.row_disparity;
    if (c.seed) p.seed = *c.seed;
    const auto rows = run_spectrum_suite(p, o.dilation, c.workers);
    write_text(c, "spectrum_suite.csv", [&](std::ostream& os) { write_spectrum_suite_csv(os, rows); });
    if (o.heatmaps) {
      for (const auto& pair : spectrum_suite(p)) {
        for (const bool occluded : {false, true}) {
          const auto epi = render_epi(occluded ? pair.occluded : pair.clear, pair.sampling,
                                      {8, true, c.workers});
          const std::string stem = "scene" + std::to_string(pair.id) +
                                   (occluded ? "_occluded" : "_clear");
          write_atomic(out_path(c, stem + "_epi.png"),
                       [&](const fs::path& t) { write_epi_png(t, epi); });
          write_atomic(out_path(c, stem + "_spectrum.png"),
                       [&](const fs::path& t) { write_spectrum_png(t, epi_spectrum(epi, window)); });
        }
      }
    }
    if (c.verbosity > 0) {
      out << "scene variant  support        energy\n";
      for (const auto& r : rows) {
        out << std::setw(5) << r.scene << ' ' << std::setw(8) << std::left
            << (r.occluded ? "occluded" : "clear") << ' ' << std::setw(14)
            << std::string(to_string(r.kind)) << std::right << ' ' << std::fixed
            << std::setprecision(6) << r.energy << std::defaultfloat << '\n';
      }
    }
    return;
  }

  const auto file = load_flat_scene(*o.scene);
  const SceneBounds bounds = file.bounds ? *file.bounds : file.scene.depth_range();
  file.scene.validate(bounds);
  const double du = o.row_disparity * bounds.z_min() / o.focal;
  const double u0 = -0.5 * (o.nu - 1) * du;
  const auto sampling = EpiSampling::centered(o.nx, o.nu, 1.0, du, o.focal, u0);
  const auto epi = render_epi(file.scene, sampling, {8, true, c.workers});
  const auto spectrum = epi_spectrum(epi, window);
  std::vector<SpectrumReport> reports;
  SupportSpec wedge;
  wedge.kind = SupportKind::double_wedge;
  wedge.z_near = bounds.z_min();
  wedge.z_far = bounds.z_max();
  reports.push_back(support_energy(spectrum, wedge));
  if (o.occluder_depth) {
    SupportSpec para = wedge;
    para.kind = SupportKind::parallelogram;
    para.occluder_depth = *o.occluder_depth;
    para.dilation = o.dilation;
    reports.push_back(support_energy(spectrum, para));
  }
  write_text(c, "spectrum.csv", [&](std::ostream& os) { write_spectrum_report_csv(os, reports); });
  if (o.heatmaps) {
    write_atomic(out_path(c, "epi.png"), [&](const fs::path& t) { write_epi_png(t, epi); });
    write_atomic(out_path(c, "spectrum.png"),
                 [&](const fs::path& t) { write_spectrum_png(t, spectrum); });
  }
  if (c.verbosity > 0) {
    for (const auto& r : reports) {
      out << to_string(r.support_kind) << ": " << r.energy_in_support << " of the energy ("
          << r.inside_bins << " bins)\n";
    }
  }
}

void run_flatland(const RunConfig& c, std::ostream& out) {
  using namespace flatland;
  FlatlandSweepConfig cfg;
  cfg.scenes = c.flatland_sweep.scenes;
  cfg.planes = c.flatland_sweep.planes;
  cfg.ratios = c.flatland_sweep.ratios;
  if (c.seed) cfg.seed = *c.seed;
  cfg.workers = c.workers;
  const auto report = run_flatland_sweep(cfg);
  write_text(c, "flatland_sweep.csv",
             [&](std::ostream& os) { write_flatland_sweep_csv(os, report); });
  if (c.verbosity > 0) {
    out << "single-plane interval " << report.nyquist_interval << "\n"
        << "mean PSNR (dB) by D and spacing ratio\n";
    std::map<std::pair<int, double>, std::pair<double, int>> mean;
    for (const auto& r : report.rows) {
      auto& m = mean[{r.planes, r.ratio}];
      m.first += r.psnr;
      ++m.second;
    }
    for (const auto& [key, m] : mean) {
      out << "  D=" << key.first << " ratio=" << key.second << "  " << std::fixed
          << std::setprecision(2) << m.first / m.second << std::defaultfloat << '\n';
    }
  }
}

std::vector<CameraPose> render_poses(const RenderOptions& o) {
  std::vector<CameraPose> poses;
  for (const auto& p : o.poses) poses.push_back(CameraPose::translated({p[0], p[1], p[2]}));
  if (o.poses_csv) {
    std::ifstream is(*o.poses_csv);
    if (!is) throw IoError("cannot read " + o.poses_csv->string());
    for (const auto& p : read_pose_csv(is)) poses.push_back(p);
  }
  if (poses.empty()) throw UsageError("render needs at least one --pose or --poses-csv");
  return poses;
}

void write_frame(const RunConfig& c, int index, const ImageRGBA& image) {
  std::ostringstream name;
  name << "frame_" << std::setw(3) << std::setfill('0') << index << '.' << c.render.format;
  write_atomic(out_path(c, name.str()), [&](const fs::path& t) {
    if (c.render.format == "pfm") {
      write_pfm(t, image);
    } else {
      write_png(t, image);
    }
  });
}

void export_planes(const RunConfig& c, const MultiplaneImage& mpi, const std::string& dir) {
  const fs::path target = out_path(c, dir);
  write_atomic(target, [&](const fs::path& tmp) {
    fs::create_directories(tmp);
    export_mpi_planes_png(tmp, mpi);
    std::error_code ec;
    fs::remove_all(target, ec);
  });
}

void run_render(const RunConfig& c, std::ostream& out) {
  const auto& o = c.render;
  if (o.scene.has_value() == !o.mpis.empty()) {
    throw UsageError("render needs either --scene or --mpi");
  }
  const auto poses = render_poses(o);
  const MpiRenderOptions ropts{c.workers};
  if (o.scene) {
    const auto file = load_scene(*o.scene);
    const int h = o.height > 0 ? o.height : o.width;
    const auto k = CameraIntrinsics::from_horizontal_fov(o.fov, o.width, h);
    const double z_min = o.z_min ? *o.z_min
                         : file.bounds ? file.bounds->z_min()
                                       : file.scene.depth_range().z_min();
    const SceneBounds bounds = file.bounds && !o.z_min
                                   ? *file.bounds
                                   : SceneBounds::unbounded_far(z_min);
    const auto mpi = build_mpi(file.scene, {k, CameraPose()}, o.planes, bounds,
                               {o.margin, c.workers});
    if (o.save_mpi) write_atomic(out_path(c, "mpi.plnp"), [&](const fs::path& t) { write_mpi(t, mpi); });
    if (o.export_planes) export_planes(c, mpi, "planes");
    for (std::size_t i = 0; i < poses.size(); ++i) {
      write_frame(c, static_cast<int>(i), render_mpi(mpi, {k, poses[i]}, ropts));
    }
    if (c.verbosity > 0) {
      out << "rendered " << poses.size() << " frame(s) from a " << o.planes << "-plane MPI\n";
    }
    return;
  }

  std::vector<MultiplaneImage> mpis;
  for (const auto& p : o.mpis) mpis.push_back(read_mpi(p));
  if (o.export_planes) {
    for (std::size_t m = 0; m < mpis.size(); ++m) {
      export_planes(c, mpis[m], "planes_" + std::to_string(m));
    }
  }
  const auto& k = mpis.front().reference().intrinsics;
  if (mpis.size() == 1) {
    for (std::size_t i = 0; i < poses.size(); ++i) {
      write_frame(c, static_cast<int>(i), render_mpi(mpis.front(), {k, poses[i]}, ropts));
    }
  } else {
    // Grid indices from the reference centres, spacing from the closest pair.
    double spacing = kInfinity;
    for (std::size_t a = 0; a < mpis.size(); ++a) {
      for (std::size_t b = a + 1; b < mpis.size(); ++b) {
        const Vec3 d = mpis[a].reference().pose.center() - mpis[b].reference().pose.center();
        const double s = std::max(std::abs(d.x()), std::abs(d.y()));
        if (s > 0.0) spacing = std::min(spacing, s);
      }
    }
    if (!std::isfinite(spacing)) throw InvalidArgument("fused MPIs share one reference centre");
    const Vec3 origin = mpis.front().reference().pose.center();
    std::vector<FusionMember> members;
    for (auto& m : mpis) {
      const Vec3 d = m.reference().pose.center() - origin;
      const int i = static_cast<int>(std::lround(d.x() / spacing));
      const int j = static_cast<int>(std::lround(d.y() / spacing));
      members.push_back({std::move(m), i, j});
    }
    const FusionNeighborhood hood(std::move(members), spacing);
    for (std::size_t i = 0; i < poses.size(); ++i) {
      write_frame(c, static_cast<int>(i), render_fused(hood, {k, poses[i]}, ropts).image);
    }
  }
  if (c.verbosity > 0) {
    out << "rendered " << poses.size() << " frame(s) from " << o.mpis.size() << " MPI(s)\n";
  }
}

void run_validate(const RunConfig& c, std::ostream& out) {
  const auto& o = c.validate;
  SceneSuiteParams suite;
  suite.count = o.scenes;
  if (c.seed) suite.seed = *c.seed;
  SweepConfig cfg = default_sweep_config(suite);
  cfg.planes = o.planes;
  cfg.disparities = o.disparities;
  cfg.metric = parse_metric(o.metric);
  cfg.margin = o.margin ? *o.margin : (cfg.metric == Metric::ssim ? kSsimMargin : kPsnrMargin);
  cfg.poses_per_cell = o.poses_per_cell;
  cfg.workers = c.workers;
  const auto report = run_disparity_sweep(cfg);
  write_text(c, "sweep.csv", [&](std::ostream& os) { write_sweep_csv(os, report); });
  write_text(c, "sweep_plot.csv", [&](std::ostream& os) { write_sweep_plot_csv(os, report); });
  write_text(c, "knees.csv", [&](std::ostream& os) { write_knee_csv(os, report); });

  if (o.debug_png) {
    const auto& k = cfg.intrinsics;
    for (const auto& scene : cfg.scenes) {
      const std::string stem = "debug/scene" + std::to_string(scene.id);
      for (const int planes : cfg.planes) {
        for (const double d : cfg.disparities) {
          const auto hood = cell_neighborhood(scene, cfg, planes, d);
          const double h = 0.5 * hood.spacing();
          const Camera centre{k, CameraPose::translated({h, h, 0.0})};
          const auto image = render_fused(hood, centre, {c.workers}).image;
          write_atomic(out_path(c, stem + "_D" + std::to_string(planes) + "_d" +
                                       format_double(d) + ".png"),
                       [&](const fs::path& t) { write_png(t, image); });
          write_atomic(out_path(c, stem + "_d" + format_double(d) + "_truth.png"),
                       [&](const fs::path& t) {
                         write_png(t, raycast(scene.scene, k, centre.pose, {1, c.workers}));
                       });
        }
      }
    }
  }

  bool ok = report.failed_cells() == 0;
  if (c.verbosity > 0) {
    out << "baselines (" << to_string(report.metric) << "):";
    for (double b : report.baselines) out << ' ' << std::fixed << std::setprecision(4) << b;
    out << std::defaultfloat << "\n";
  }
  for (const auto& ks : report.knees) {
    if (ks.fraction_near_planes + 1e-12 < o.knee_fraction) ok = false;
    if (c.verbosity > 0) {
      out << "D=" << ks.planes << " knees:";
      for (double kn : ks.knees) out << ' ' << format_double(kn);
      out << "  near D on " << std::fixed << std::setprecision(0)
          << 100.0 * ks.fraction_near_planes << std::defaultfloat << "% of scenes\n";
    }
  }
  if (report.failed_cells() > 0 && c.verbosity > 0) {
    out << report.failed_cells() << " cell(s) failed\n";
  }
  if (o.assert_knees && !ok) {
    throw ValidationFailure("knee property violated (see knees.csv)");
  }
}

}  // namespace

std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args,
                                            std::ostream& out) {
  RunConfig defaults;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) defaults.output_dir = env;

  CLI::App app("Plenoptic sampling plans, MPI rendering and sampling experiments", "plenoptic");
  Overrides ov;
  std::string config_path;
  build_app(app, ov, config_path, defaults);
  app.footer(seed_note());

  std::vector<const char*> argv{"plenoptic"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg = config_path.empty() ? defaults : load_config(config_path, defaults);
  ov.apply(cfg);
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.workers < 0) throw UsageError("--workers must be >= 0");
  return cfg;
}

void run(const RunConfig& config, std::ostream& out) {
  RunConfig c = config;
  if (c.workers == 0) c.workers = default_worker_count();
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec || !fs::is_directory(c.output_dir)) {
    throw IoError("output directory not writable: " + c.output_dir.string());
  }
  if (c.subcommand == "plan") return run_plan(c, out);
  if (c.subcommand == "spectrum") return run_spectrum(c, out);
  if (c.subcommand == "flatland-sweep") return run_flatland(c, out);
  if (c.subcommand == "render") return run_render(c, out);
  if (c.subcommand == "validate") return run_validate(c, out);
  throw UsageError("unknown subcommand '" + c.subcommand + "'");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    install_signal_cleanup();
    const auto cfg = parse_command_line(args, out);
    if (!cfg) return kExitOk;
    run(*cfg, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "plenoptic: usage: " << e.what() << " (see --help)\n";
    return kExitUsage;
  } catch (const ValidationFailure& e) {
    err << "plenoptic: validation failed: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "plenoptic: error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "plenoptic: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace plenoptic::cli
