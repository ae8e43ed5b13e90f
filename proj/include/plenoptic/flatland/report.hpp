#pragma once

#include <iosfwd>
#include <vector>

#include "plenoptic/flatland/suite.hpp"

namespace plenoptic::flatland {

// spectrum.csv: scene,variant,support,energy_in_support
// (variant is clear or occluded).
void write_spectrum_suite_csv(std::ostream& os, const std::vector<SpectrumRow>& rows);

// One report per line: support,energy_in_support,slope_near,slope_far,window,inside_bins,guard_bins
void write_spectrum_report_csv(std::ostream& os, const std::vector<SpectrumReport>& reports);

// flatland_sweep.csv: scene,D,ratio,delta_u,mse,psnr
void write_flatland_sweep_csv(std::ostream& os, const FlatlandSweepReport& report);
FlatlandSweepReport read_flatland_sweep_csv(std::istream& is);

}  // namespace plenoptic::flatland
