#include "plenoptic/flatland/report.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/format.hpp"

namespace plenoptic::flatland {

void write_spectrum_suite_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
  os << "scene,variant,support,energy_in_support\n";
  for (const auto& r : rows) {
    os << r.scene << ',' << (r.occluded ? "occluded" : "clear") << ',' << to_string(r.kind) << ','
       << format_double(r.energy) << '\n';
  }
}

void write_spectrum_report_csv(std::ostream& os, const std::vector<SpectrumReport>& reports) {
  os << "support,energy_in_support,slope_near,slope_far,window,inside_bins,guard_bins\n";
  for (const auto& r : reports) {
    os << to_string(r.support_kind) << ',' << format_double(r.energy_in_support) << ','
       << format_double(r.slope_near) << ',' << format_double(r.slope_far) << ','
       << to_string(r.window) << ',' << r.inside_bins << ',' << r.guard_bins << '\n';
  }
}

void write_flatland_sweep_csv(std::ostream& os, const FlatlandSweepReport& report) {
  os << "scene,D,ratio,delta_u,mse,psnr\n";
  for (const auto& r : report.rows) {
    os << r.scene << ',' << r.planes << ',' << format_double(r.ratio) << ','
       << format_double(r.delta_u) << ',' << format_double(r.mse) << ',' << format_double(r.psnr)
       << '\n';
  }
}

FlatlandSweepReport read_flatland_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "scene,D,ratio,delta_u,mse,psnr") {
    throw ParseError("flatland sweep CSV: unexpected header", 1);
  }
  FlatlandSweepReport out{0.0, {}};
  int n = 1;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw ParseError("flatland sweep CSV: expected 6 fields", n);
    try {
      out.rows.push_back({std::stoi(f[0]), std::stoi(f[1]), parse_double(f[2]), parse_double(f[3]),
                          parse_double(f[4]), parse_double(f[5])});
    } catch (const std::exception&) {
      throw ParseError("flatland sweep CSV: malformed field", n);
    }
  }
  return out;
}

}  // namespace plenoptic::flatland
