#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "plenoptic/core/camera.hpp"
#include "plenoptic/flatland/spectrum.hpp"
#include "plenoptic/sampling/camera_grid.hpp"

namespace plenoptic::cli {

// Writes `path` by handing a sibling temp path to `writer`, then renaming it
// over the target. On failure (or SIGINT/SIGTERM while writing) the temp file
// is removed and the target is left untouched.
void write_atomic(const std::filesystem::path& path,
                  const std::function<void(const std::filesystem::path&)>& writer);
// Text variant: `writer` fills a stream that is flushed to the temp file.
void write_atomic_text(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

// Installs handlers that delete an in-flight temp file on SIGINT/SIGTERM.
void install_signal_cleanup();

// plan.csv: i,j,x,y,z,r00,r01,r02,r10,r11,r12,r20,r21,r22 (camera to world).
void write_plan_csv(std::ostream& os, const std::vector<GridCamera>& grid);
std::vector<GridCamera> read_plan_csv(std::istream& is);

// plan.json fields. N is the closed-form image count for the viewpoint side;
// grid_n counts the cameras actually placed (per_axis^2); area_n is the
// smallest N with side / sqrt(N) <= delta_u from the general bound.
struct PlanSummary {
  int width;
  int height;
  double focal;
  double pitch;
  double z_min;
  double z_max;
  int planes;
  double side;
  double delta_u;
  double d_max;
  double effective_disparity;
  std::string binding_constraint;
  long long n;
  long long grid_n;
  long long area_n;
  int per_axis;
  double spacing;
  double density;  // images per square metre, 1 / delta_u^2

  bool operator==(const PlanSummary&) const = default;
};

PlanSummary summarize_plan(const SamplingInputs& inputs, const SamplingPlan& plan);
void write_plan_json(std::ostream& os, const PlanSummary& summary);
PlanSummary read_plan_json(std::istream& is);
// Human-readable report.
void print_plan(std::ostream& os, const PlanSummary& summary);

// Camera poses from CSV: either x,y,z (identity rotation) or the plan.csv
// layout.
std::vector<CameraPose> read_pose_csv(std::istream& is);

// Grayscale PNGs: the EPI scaled to its own range, and log10(1 + |F|^2) of the
// spectrum with DC at the centre.
void write_epi_png(const std::filesystem::path& path, const flatland::Epi& epi);
void write_spectrum_png(const std::filesystem::path& path, const flatland::EpiSpectrum& spectrum);

}  // namespace plenoptic::cli
