#pragma once

#include <utility>

#include "univip/image.hpp"

namespace univip {

/// Flows from each input frame towards the target time.
struct TargetFlows {
  FlowField from0;  // F0->t
  FlowField from1;  // F1->t
};

/// Linear flow approximation towards arbitrary time t:
/// F0->t = t * F0->1, F1->t = (1 - t) * F1->0. Valid for t outside [0,1] too,
/// where the scale factor reverses or lengthens the input flow.
TargetFlows approximate_flow_pair(const FlowField& f01, const FlowField& f10, double t);

/// Multiplies every displacement by `s`.
FlowField scale_flow(const FlowField& f, double s);

/// Resamples `f` onto an out_width × out_height grid where destination pixel x
/// samples source position x / factor (top-left aligned, edge-clamped bilinear);
/// displacements are multiplied by `factor`.
FlowField resample_flow(const FlowField& f, int out_width, int out_height, double factor);

/// Resizes by `factor` (output size rounded to nearest, at least 1 px).
FlowField rescale_flow(const FlowField& f, double factor);

/// Mean Euclidean distance between corresponding vectors.
double endpoint_error(const FlowField& fa, const FlowField& fb);

/// Endpoint error restricted to pixels where `include` is nonzero. Returns 0
/// when no pixel is included.
double endpoint_error(const FlowField& fa, const FlowField& fb, const Plane<std::uint8_t>& include);

}  // namespace univip
