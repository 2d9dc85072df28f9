#pragma once

#include "univip/image.hpp"

namespace univip {

inline constexpr double kDefaultCoverageEpsilon = 1e-4;

struct WarpResult {
  Image image;
  CoverageMap coverage;
};

/// Average bilinear splatting. Each source pixel scatters to the four integer
/// pixels around (x + dx, y + dy); destinations are normalized by their
/// accumulated weight. Pixels whose weight stays below `coverage_epsilon`
/// are zero in the output. Splats landing outside the frame are dropped.
WarpResult forward_warp(const Image& img, const FlowField& flow,
                        double coverage_epsilon = kDefaultCoverageEpsilon);

HoleMask hole_mask(const CoverageMap& cov, double coverage_epsilon = kDefaultCoverageEpsilon);

/// Intersection over union of the two hole sets; 1 when both are empty.
double hole_overlap(const HoleMask& a, const HoleMask& b);

}  // namespace univip
