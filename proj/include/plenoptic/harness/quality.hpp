#pragma once

#include "plenoptic/core/image.hpp"

namespace plenoptic {

struct QualityOptions {
  int crop = 2;       // border pixels ignored on every side
  double peak = 1.0;  // PSNR peak signal
};

struct QualityScores {
  double psnr;  // dB, +inf for identical inputs
  double ssim;
};

// Scores on Rec.709 luminance of the premultiplied colour. SSIM uses the
// usual 11-tap Gaussian window (sigma 1.5) over the valid region with
// C1 = (0.01 L)^2, C2 = (0.03 L)^2 and L = peak.
QualityScores image_quality(const ImageRGBA& image, const ImageRGBA& reference,
                            const QualityOptions& options = {});

double psnr(const ImageRGBA& image, const ImageRGBA& reference, const QualityOptions& options = {});
double ssim(const ImageRGBA& image, const ImageRGBA& reference, const QualityOptions& options = {});

}  // namespace plenoptic
