#pragma once

#include "univip/image.hpp"

namespace univip {

/// Size of the next coarser pyramid level: ceil(n / 2).
constexpr int half_size(int n) { return (n + 1) / 2; }

/// 2×2 box average; odd trailing rows/columns average the pixels present.
Image area_downsample(const Image& img);

/// 2×2 box average of the vectors, displacements halved.
FlowField area_downsample(const FlowField& flow);

/// Area-downsamples repeatedly until the size matches. Throws InvalidInput if
/// the target is not on the halving chain of the source size.
FlowField downsample_to(const FlowField& flow, int width, int height);

/// Edge-clamped bilinear sample of channel c at real position (x, y).
double sample_bilinear(const Image& img, double x, double y, int c = 0);

}  // namespace univip
