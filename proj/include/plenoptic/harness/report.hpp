#pragma once

#include <iosfwd>
#include <vector>

#include "plenoptic/harness/sweep.hpp"

namespace plenoptic {

// sweep.csv: scene,D,d,metric,baseline,knee_flag
// knee_flag is 1 on the knee row of each (scene, D) run, 0 elsewhere and -1
// on failed cells (whose metric is nan).
void write_sweep_csv(std::ostream& os, const SweepReport& report);

struct SweepCsvRow {
  int scene;
  int planes;
  double disparity;
  double metric;
  double baseline;
  int knee_flag;
  bool operator==(const SweepCsvRow&) const = default;
};
std::vector<SweepCsvRow> read_sweep_csv(std::istream& is);
std::vector<SweepCsvRow> sweep_csv_rows(const SweepReport& report);

// Long format for plotting quality against disparity, one series per D:
// series,d,scene,metric,value. series is the plane count or "baseline";
// scene is the scene id, or "mean" / "std" for statistics across scenes.
void write_sweep_plot_csv(std::ostream& os, const SweepReport& report);

// knees.csv: D,scene,knee,near_planes
void write_knee_csv(std::ostream& os, const SweepReport& report);

}  // namespace plenoptic
