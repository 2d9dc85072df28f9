#pragma once

#include "univip/image.hpp"
#include "univip/tasking.hpp"
#include "univip/warp.hpp"

namespace univip {

inline constexpr double kDefaultDenomEpsilon = 1e-8;

/// Hard-coded temporal factors of the two warped frames.
struct TemporalWeights {
  double w0 = 0.5;
  double w1 = 0.5;
};

/// (1 - t, t) inside [0,1]; ((1 - t) / (1 - 2t), -t / (1 - 2t)) outside.
TemporalWeights temporal_weights(double t);

/// Per-pixel reliability of each warped frame, plus the pixels neither frame
/// can supply.
struct FusionMaps {
  Plane<double> m0;
  Plane<double> m1;
  HoleMask unfillable;
};

/// Additive correction applied after the normalized blend. May be negative.
class Residual {
 public:
  Residual() = default;
  Residual(int width, int height, int channels, double fill = 0.0);

  static Residual zeros_like(const Image& img) {
    return Residual(img.width(), img.height(), img.channels());
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }

  double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Weighted blend of the warped frames by fusion maps and temporal factors,
/// plus the residual, clamped to [0,1]. Unfillable pixels come out as 0.
/// Throws DegenerateFusionError where the denominator falls below
/// `denom_epsilon` at a pixel not flagged unfillable.
Image fuse(const Image& i0t, const Image& i1t, const FusionMaps& maps, const TemporalWeights& w,
           const Residual& res, double denom_epsilon = kDefaultDenomEpsilon);

/// Binary maps from coverage: weight 1 where a warped frame received at least
/// `coverage_epsilon` of splat weight, 0 in its holes. Pixels that are holes in
/// both frames are flagged unfillable.
FusionMaps coverage_fusion_maps(const CoverageMap& c0, const CoverageMap& c1, TaskKind task,
                                double coverage_epsilon = kDefaultCoverageEpsilon);

inline constexpr int kFillMaxIterations = 500;
inline constexpr double kFillTolerance = 1e-4;

/// Inpaints flagged pixels by repeated 4-neighbour averaging until the largest
/// update drops below kFillTolerance or kFillMaxIterations sweeps ran.
Image fill_unfillable(const Image& img, const HoleMask& unfillable);

}  // namespace univip
