#pragma once

#include "univip/image.hpp"

namespace univip {

struct LossParams {
  double charbonnier_epsilon = 1e-6;
  double charbonnier_alpha = 0.5;
  /// Side of the square census neighbourhood; odd, at least 3.
  int census_patch = 7;
  /// Squared softening constant, in 8-bit intensity units.
  double census_soft_epsilon = 0.81;
};

void validate(const LossParams& p);

/// Mean over all elements of ((pred - gt)² + ε²)^α.
double charbonnier(const Image& pred, const Image& gt, const LossParams& p = {});

/// Soft census loss on luma scaled to [0,255]. Each neighbour difference d is
/// mapped to d / sqrt(d² + ε_c), descriptors are compared with the soft
/// Hamming term δ² / (0.1 + δ²), and the result is averaged over neighbours
/// and over pixels whose patch lies fully inside the image.
double census_loss(const Image& pred, const Image& gt, const LossParams& p = {});

/// charbonnier + census_loss.
double reconstruction_loss(const Image& pred, const Image& gt, const LossParams& p = {});

/// Sum of the interpolation and prediction loss terms.
double combined_task_loss(double interp_term, double pred_term);

inline constexpr double kPsnrCap = 99.0;

/// 10·log10(1 / MSE) for peak 1.0; kPsnrCap when the images are identical.
double psnr(const Image& a, const Image& b);

/// PSNR over pixels where `include` is nonzero (all channels).
double psnr(const Image& a, const Image& b, const Plane<std::uint8_t>& include);

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;

/// Mean SSIM over every 11×11 Gaussian window (σ = 1.5, K1 = 0.01, K2 = 0.03,
/// range 1) fully inside the image, averaged over channels.
double ssim(const Image& a, const Image& b);

}  // namespace univip
