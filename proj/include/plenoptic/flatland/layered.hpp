#pragma once

#include <vector>

#include "plenoptic/flatland/epi.hpp"

namespace plenoptic::flatland {

// Bin k of D equal-width bins in disparity between 1/z_max and 1/z_min; bin 0
// is the farthest.
SceneBounds disparity_bin(const SceneBounds& bounds, int planes, int k);
// Index of the bin containing depth z (clamped to [0, D)).
int disparity_bin_index(const SceneBounds& bounds, int planes, double depth);
// Harmonic-mean depth of each bin, far to near.
std::vector<double> layer_depths(const SceneBounds& bounds, int planes);

// Premultiplied light-field layer reprojected through a plane at `depth`.
struct EpiLayer {
  double depth;
  Epi color;
  Epi alpha;
};

// Sparse light field split into D layers (far to near) plus an opaque
// background luminance composited behind them.
struct LayeredEpi {
  SceneBounds bounds;
  std::vector<EpiLayer> layers;
  double background = 0.0;

  const EpiSampling& sampling() const { return layers.front().color.sampling(); }
};

// Layers from ground-truth geometry: each bin renders only its own segments,
// so content hidden behind nearer layers is still present in its layer.
LayeredEpi decompose_layers(const FlatScene& scene, const EpiSampling& sampling,
                            const SceneBounds& bounds, int planes,
                            const EpiRenderOptions& options = {});

// Layers from a composite EPI and visible-coverage masks: masks[i] is the
// fraction of each sample seen through bin i (far to near), the remainder
// being background. Each layer's over-alpha is w_i / (1 - sum of nearer w),
// which reproduces the input exactly when composited at the sampled views.
LayeredEpi layers_from_masks(const Epi& composite, const std::vector<Epi>& masks,
                             const SceneBounds& bounds, double background);

// Renders the light field at `target`: every layer is reprojected from the
// two sparse views bracketing each target u through its plane (linear in x,
// then linear in u) and layers are composited back to front over the
// background. With no content a layer is transparent. Target u-values must
// lie within the sparse u-range.
Epi layered_reconstruct(const LayeredEpi& sparse, const EpiSampling& target, int workers = 1);

struct ReconstructionError {
  double mse;
  double psnr;  // +inf when mse == 0; peak is max |truth| over the cropped region
};

// Compares after cropping `crop` samples from every border.
ReconstructionError reconstruction_error(const Epi& recon, const Epi& truth, int crop = 4);

}  // namespace plenoptic::flatland
