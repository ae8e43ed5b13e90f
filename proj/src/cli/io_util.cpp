#include "plenoptic/cli/io_util.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <csignal>
#include <cstring>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

#include "plenoptic/core/error.hpp"
#include "plenoptic/core/format.hpp"
#include "plenoptic/core/image_io.hpp"

namespace plenoptic::cli {
namespace {

namespace fs = std::filesystem;

// Path of the temp file being written, for the signal handler. Writes are
// issued from the CLI thread only.
char g_inflight[4096] = {0};
std::atomic<bool> g_has_inflight{false};

extern "C" void cleanup_and_exit(int sig) {
  if (g_has_inflight.load()) ::unlink(g_inflight);
  std::signal(sig, SIG_DFL);
  std::raise(sig);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

const char* kPlanHeader = "i,j,x,y,z,r00,r01,r02,r10,r11,r12,r20,r21,r22";

}  // namespace

void install_signal_cleanup() {
  std::signal(SIGINT, cleanup_and_exit);
  std::signal(SIGTERM, cleanup_and_exit);
}

void write_atomic(const fs::path& path, const std::function<void(const fs::path&)>& writer) {
  if (!path.parent_path().empty()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  const auto s = tmp.string();
  if (s.size() >= sizeof(g_inflight)) throw IoError("output path too long: " + path.string());
  std::memcpy(g_inflight, s.c_str(), s.size() + 1);
  g_has_inflight = true;
  try {
    writer(tmp);
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot write " + path.string() + ": " + ec.message());
  } catch (...) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    g_has_inflight = false;
    throw;
  }
  g_has_inflight = false;
}

void write_atomic_text(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
  write_atomic(path, [&](const fs::path& tmp) {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    writer(os);
    os.flush();
    if (!os) throw IoError("write failed for " + path.string());
  });
}

void write_plan_csv(std::ostream& os, const std::vector<GridCamera>& grid) {
  // Dense grids reach millions of rows, so rows are formatted into a chunk
  // buffer with to_chars rather than through the stream. Same text as
  // format_double for every (finite) field.
  os << kPlanHeader << '\n';
  std::string buf;
  buf.reserve(1 << 20);
  char field[32];
  constexpr int kMemo = 1 << 14;
  std::vector<std::vector<std::pair<double, std::string>>> memo(
      2, std::vector<std::pair<double, std::string>>(kMemo));
  auto put = [&](auto v) {
    if (v == 0 && !std::signbit(static_cast<double>(v))) {
      buf += '0';
    } else if (v == 1) {
      buf += '1';
    } else {
      const auto res = std::to_chars(field, field + sizeof field, v);
      buf.append(field, res.ptr);
    }
  };
  for (const auto& c : grid) {
    const auto& t = c.pose.translation();
    const auto& r = c.pose.rotation();
    put(c.i);
    buf += ',';
    put(c.j);
    // Coordinates repeat along grid rows and columns; reuse their text.
    for (int a = 0; a < 3; ++a) {
      buf += ',';
      const int key = a == 0 ? c.i : a == 1 ? c.j : -1;
      if (key < 0 || key >= kMemo) {
        put(t[a]);
        continue;
      }
      auto& [value, text] = memo[a][key];
      if (text.empty() || value != t[a]) {
        const std::size_t start = buf.size();
        put(t[a]);
        value = t[a];
        text.assign(buf, start, std::string::npos);
      } else {
        buf += text;
      }
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        buf += ',';
        put(r(a, b));
      }
    }
    buf += '\n';
    if (buf.size() > (1 << 20) - 512) {
      os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<GridCamera> read_plan_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kPlanHeader) {
    throw ParseError("plan CSV: unexpected header", 1);
  }
  std::vector<GridCamera> out;
  for (int n = 2; std::getline(is, line); ++n) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 14) throw ParseError("plan CSV: expected 14 fields", n);
    try {
      Mat3 r;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) r(a, b) = parse_double(f[5 + 3 * a + b]);
      }
      const Vec3 t(parse_double(f[2]), parse_double(f[3]), parse_double(f[4]));
      out.push_back({std::stoi(f[0]), std::stoi(f[1]), CameraPose(r, t)});
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("plan CSV: malformed field", n);
    }
  }
  return out;
}

PlanSummary summarize_plan(const SamplingInputs& inputs, const SamplingPlan& plan) {
  const auto& k = inputs.intrinsics;
  PlanSummary s{};
  s.width = k.width();
  s.height = k.height();
  s.focal = k.focal_length();
  s.pitch = k.pixel_pitch();
  s.z_min = inputs.bounds.z_min();
  s.z_max = inputs.bounds.z_max();
  s.planes = inputs.planes;
  s.side = plan.side;
  s.delta_u = plan.delta_u;
  s.d_max = plan.d_max;
  s.effective_disparity = plan.effective_disparity;
  s.binding_constraint = std::string(to_string(plan.binding));
  s.n = plan.guideline_total;
  s.grid_n = plan.total;
  const double root = plan.side / plan.delta_u;
  s.area_n = std::max(4LL, static_cast<long long>(std::ceil(root * root * (1.0 - 1e-12))));
  s.per_axis = plan.per_axis;
  s.spacing = plan.spacing;
  s.density = 1.0 / (plan.delta_u * plan.delta_u);
  return s;
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);  // JSON has no infinity
}

double number_of(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_string()) return parse_double(v.get<std::string>());
  return v.get<double>();
}

}  // namespace

void write_plan_json(std::ostream& os, const PlanSummary& s) {
  nlohmann::ordered_json j;
  j["delta_u"] = s.delta_u;
  j["d_max"] = s.d_max;
  j["N"] = s.n;
  j["binding_constraint"] = s.binding_constraint;
  j["grid_n"] = s.grid_n;
  j["area_n"] = s.area_n;
  j["per_axis"] = s.per_axis;
  j["spacing"] = s.spacing;
  j["effective_disparity"] = s.effective_disparity;
  j["density_per_m2"] = s.density;
  j["inputs"] = {{"width", s.width},     {"height", s.height},       {"focal", s.focal},
                 {"pitch", s.pitch},     {"z_min", number(s.z_min)}, {"z_max", number(s.z_max)},
                 {"planes", s.planes},   {"side", s.side}};
  os << j.dump(2) << '\n';
}

PlanSummary read_plan_json(std::istream& is) {
  try {
    const auto j = nlohmann::json::parse(is);
    const auto& in = j.at("inputs");
    PlanSummary s{};
    s.width = in.at("width").get<int>();
    s.height = in.at("height").get<int>();
    s.focal = in.at("focal").get<double>();
    s.pitch = in.at("pitch").get<double>();
    s.z_min = number_of(in, "z_min");
    s.z_max = number_of(in, "z_max");
    s.planes = in.at("planes").get<int>();
    s.side = in.at("side").get<double>();
    s.delta_u = j.at("delta_u").get<double>();
    s.d_max = j.at("d_max").get<double>();
    s.n = j.at("N").get<long long>();
    s.binding_constraint = j.at("binding_constraint").get<std::string>();
    s.grid_n = j.at("grid_n").get<long long>();
    s.area_n = j.at("area_n").get<long long>();
    s.per_axis = j.at("per_axis").get<int>();
    s.spacing = j.at("spacing").get<double>();
    s.effective_disparity = j.at("effective_disparity").get<double>();
    s.density = j.at("density_per_m2").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("plan JSON: ") + e.what());
  }
}

void print_plan(std::ostream& os, const PlanSummary& s) {
  os << "camera            " << s.width << "x" << s.height << " px, f = " << s.focal
     << ", pitch " << s.pitch << "\n"
     << "depth range       [" << format_double(s.z_min) << ", " << format_double(s.z_max)
     << "], planes D = " << s.planes << "\n"
     << "camera interval   delta_u = " << s.delta_u << " (" << s.binding_constraint
     << " bound)\n"
     << "max disparity     d_max = " << s.d_max << " px\n"
     << "density           " << s.density << " images per m^2\n"
     << "viewpoint side    S = " << s.side << "\n"
     << "image count       N = " << s.n << " (closed form), " << s.area_n
     << " (side^2 / delta_u^2)\n"
     << "capture grid      " << s.per_axis << "x" << s.per_axis << " = " << s.grid_n
     << " cameras, spacing " << s.spacing << "\n";
}

std::vector<CameraPose> read_pose_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("pose CSV is empty", 1);
  const bool plan = line == kPlanHeader;
  if (!plan && line != "x,y,z") throw ParseError("pose CSV: expected header x,y,z", 1);
  if (plan) {
    std::stringstream rest;
    rest << line << '\n' << is.rdbuf();
    std::vector<CameraPose> out;
    for (const auto& c : read_plan_csv(rest)) out.push_back(c.pose);
    return out;
  }
  std::vector<CameraPose> out;
  for (int n = 2; std::getline(is, line); ++n) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 3) throw ParseError("pose CSV: expected 3 fields", n);
    try {
      out.push_back(CameraPose::translated(
          {parse_double(f[0]), parse_double(f[1]), parse_double(f[2])}));
    } catch (const std::exception&) {
      throw ParseError("pose CSV: malformed number", n);
    }
  }
  return out;
}

void write_epi_png(const fs::path& path, const flatland::Epi& epi) {
  const auto d = epi.data();
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  write_png_gray(path, std::vector<double>(d.begin(), d.end()), epi.nx(), epi.nu(), *lo,
                 *hi > *lo ? *hi : *lo + 1.0);
}

void write_spectrum_png(const fs::path& path, const flatland::EpiSpectrum& spectrum) {
  const int nx = spectrum.nx(), nu = spectrum.nu();
  std::vector<double> v(static_cast<std::size_t>(nx) * nu);
  double hi = 0.0;
  for (int b = spectrum.min_b(); b <= spectrum.max_b(); ++b) {
    for (int a = spectrum.min_a(); a <= spectrum.max_a(); ++a) {
      // Omega_u grows upwards in the picture.
      const int row = spectrum.max_b() - b;
      const int col = a - spectrum.min_a();
      const double m = std::log10(1.0 + spectrum.power(a, b));
      v[static_cast<std::size_t>(row) * nx + col] = m;
      hi = std::max(hi, m);
    }
  }
  write_png_gray(path, v, nx, nu, 0.0, hi > 0.0 ? hi : 1.0);
}

}  // namespace plenoptic::cli
