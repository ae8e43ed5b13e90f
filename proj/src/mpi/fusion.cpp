#include "plenoptic/mpi/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "plenoptic/core/error.hpp"

namespace plenoptic {

FusionNeighborhood::FusionNeighborhood(std::vector<FusionMember> members, double spacing)
    : members_(std::move(members)), spacing_(spacing) {
  if (members_.empty()) throw InvalidArgument("fusion neighborhood is empty");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidArgument("fusion grid spacing must be positive");
  }
  const auto& first = members_.front().mpi;
  std::set<std::pair<int, int>> seen;
  for (const auto& m : members_) {
    if (!(m.mpi.reference().intrinsics == first.reference().intrinsics)) {
      throw InvalidArgument("fusion members must share intrinsics");
    }
    if (m.mpi.plane_count() != first.plane_count()) {
      throw InvalidArgument("fusion members must share the plane count");
    }
    if (!seen.insert({m.i, m.j}).second) {
      throw InvalidArgument("duplicate grid coordinate in fusion neighborhood");
    }
  }
}

BlendWeights blend_weights(const CameraPose& novel, const FusionNeighborhood& neighborhood) {
  const auto& members = neighborhood.members();
  const double s = neighborhood.spacing();
  BlendWeights out{std::vector<double>(members.size(), 0.0), false};
  double total = 0.0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Vec3 d = novel.center() - members[k].mpi.reference().pose.center();
    const double w = std::max(0.0, 1.0 - std::abs(d.x()) / s) *
                     std::max(0.0, 1.0 - std::abs(d.y()) / s);
    out.weights[k] = w;
    total += w;
  }
  if (total > 0.0) {
    for (double& w : out.weights) w /= total;
    return out;
  }
  std::size_t nearest = 0;
  double best = kInfinity;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Vec3 d = novel.center() - members[k].mpi.reference().pose.center();
    const double dist = d.head<2>().squaredNorm();
    if (dist < best) {
      best = dist;
      nearest = k;
    }
  }
  out.weights[nearest] = 1.0;
  out.extrapolated = true;
  return out;
}

FusedRender render_fused(const FusionNeighborhood& neighborhood, const Camera& novel,
                         const MpiRenderOptions& options) {
  const auto blend = blend_weights(novel.pose, neighborhood);
  std::vector<std::pair<double, ImageRGBA>> renders;
  for (std::size_t k = 0; k < blend.weights.size(); ++k) {
    if (blend.weights[k] > 0.0) {
      renders.emplace_back(blend.weights[k],
                           render_mpi(neighborhood.members()[k].mpi, novel, options));
    }
  }
  if (renders.size() == 1) return {std::move(renders.front().second), blend.extrapolated};

  const int w = novel.intrinsics.width(), h = novel.intrinsics.height();
  ImageRGBA out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Rgba plain;
      double alpha_mass = 0.0, alpha_sq = 0.0;
      for (const auto& [weight, img] : renders) {
        const Rgba c = img.at(x, y);
        plain += c * weight;
        alpha_mass += weight * c.a;
        alpha_sq += weight * c.a * c.a;
      }
      if (alpha_mass < 1e-12) {
        out.set(x, y, plain);
        continue;
      }
      // Alpha-weighted straight colour, re-premultiplied by the alpha-weighted
      // coverage. Equals plain blending when every render has the same alpha.
      const double coverage = alpha_sq / alpha_mass;
      const double scale = coverage / alpha_mass;
      out.set(x, y, {plain.r * scale, plain.g * scale, plain.b * scale, coverage});
    }
  }
  return {std::move(out), blend.extrapolated};
}

}  // namespace plenoptic
