#include "plenoptic/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/format.hpp"

namespace plenoptic {

std::vector<SweepCsvRow> sweep_csv_rows(const SweepReport& report) {
  std::vector<SweepCsvRow> out;
  for (const auto& r : report.rows) {
    out.push_back({r.scene, r.planes, r.disparity, r.metric, r.baseline,
                   r.failed ? -1 : (r.knee ? 1 : 0)});
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
  os << "scene,D,d,metric,baseline,knee_flag\n";
  for (const auto& r : sweep_csv_rows(report)) {
    os << r.scene << ',' << r.planes << ',' << format_double(r.disparity) << ','
       << format_double(r.metric) << ',' << format_double(r.baseline) << ',' << r.knee_flag
       << '\n';
  }
}

std::vector<SweepCsvRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "scene,D,d,metric,baseline,knee_flag") {
    throw ParseError("sweep CSV: unexpected header", 1);
  }
  std::vector<SweepCsvRow> out;
  int n = 1;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw ParseError("sweep CSV: expected 6 fields", n);
    try {
      out.push_back({std::stoi(f[0]), std::stoi(f[1]), parse_double(f[2]), parse_double(f[3]),
                     parse_double(f[4]), std::stoi(f[5])});
    } catch (const std::exception&) {
      throw ParseError("sweep CSV: malformed field", n);
    }
  }
  return out;
}

void write_sweep_plot_csv(std::ostream& os, const SweepReport& report) {
  os << "series,d,scene,metric,value\n";
  const std::string metric(to_string(report.metric));
  // The baseline does not depend on d; repeat it at every tested d so it
  // plots as a flat reference line.
  std::vector<double> tested;
  for (const auto& r : report.rows) {
    if (std::find(tested.begin(), tested.end(), r.disparity) == tested.end()) {
      tested.push_back(r.disparity);
    }
  }
  std::sort(tested.begin(), tested.end());
  for (double d : tested) {
    for (std::size_t s = 0; s < report.baselines.size(); ++s) {
      os << "baseline," << format_double(d) << ',' << s << ',' << metric << ','
         << format_double(report.baselines[s]) << '\n';
    }
  }
  std::map<std::pair<int, double>, std::vector<double>> groups;
  for (const auto& r : report.rows) {
    os << r.planes << ',' << format_double(r.disparity) << ',' << r.scene << ',' << metric << ','
       << format_double(r.metric) << '\n';
    if (!r.failed) groups[{r.planes, r.disparity}].push_back(r.metric);
  }
  for (const auto& [key, values] : groups) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(values.size()));
    os << key.first << ',' << format_double(key.second) << ",mean," << metric << ','
       << format_double(mean) << '\n';
    os << key.first << ',' << format_double(key.second) << ",std," << metric << ','
       << format_double(sd) << '\n';
  }
}

void write_knee_csv(std::ostream& os, const SweepReport& report) {
  os << "D,scene,knee,near_planes\n";
  std::vector<double> tested;
  for (const auto& r : report.rows) {
    if (std::find(tested.begin(), tested.end(), r.disparity) == tested.end()) {
      tested.push_back(r.disparity);
    }
  }
  for (const auto& k : report.knees) {
    for (std::size_t s = 0; s < k.knees.size(); ++s) {
      os << k.planes << ',' << s << ',' << format_double(k.knees[s]) << ','
         << (knee_near(k.knees[s], k.planes, tested) ? 1 : 0) << '\n';
    }
  }
}

}  // namespace plenoptic
