#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "univip/flow_est.hpp"
#include "univip/fusion.hpp"
#include "univip/image.hpp"
#include "univip/tasking.hpp"
#include "univip/warp.hpp"

namespace univip {

/// Pyramid depth for an image: the smallest number of ceil-halvings that
/// brings the short side into [16, 32), plus one. Throws InvalidInput when
/// either side is below 16.
int choose_levels(int height, int width);

struct SynthesisOptions {
  double coverage_epsilon = kDefaultCoverageEpsilon;
  double denom_epsilon = kDefaultDenomEpsilon;
  /// Inpaint pixels neither warped frame covers (finest level only).
  bool fill = true;
  /// Rewrite t < 0 requests as future prediction on the reversed pair.
  bool convert = true;
  /// Use the time-dependent temporal factors; (0.5, 0.5) when off.
  bool temporal_factor = true;
};

struct SynthesisRequest {
  Image i0;
  Image i1;
  double t = 0.5;
  EstimatorSpec estimator;
  /// 0 selects choose_levels().
  int levels = 0;
  SynthesisOptions options;
  /// Full-resolution reference flows for per-level EPE diagnostics.
  std::shared_ptr<const GroundTruthFlows> reference_flows;
  /// Residual added at the finest level; zero when absent.
  std::optional<Residual> residual;
};

struct LevelDiagnostics {
  int level = 0;  // 0 is the finest
  int width = 0;
  int height = 0;
  std::optional<double> epe01;
  std::optional<double> epe10;
  double residual01 = 0.0;
  double residual10 = 0.0;
  double hole_iou = 0.0;
  std::size_t unfillable = 0;
  double task_channel = 0.0;
  double milliseconds = 0.0;
};

struct SynthesisResult {
  Image it;
  FlowField f01;
  FlowField f10;
  FlowField f0t;
  FlowField f1t;
  CoverageMap coverage0;
  CoverageMap coverage1;
  HoleMask holes0;
  HoleMask holes1;
  HoleMask unfillable;
  TaskKind task = TaskKind::Interpolation;
  /// Time actually synthesized after any conversion.
  double effective_t = 0.5;
  bool converted = false;
  TemporalWeights weights;
  int levels = 1;
  bool levels_from_rule = true;
  /// Coarsest level first.
  std::vector<LevelDiagnostics> per_level;
  double milliseconds = 0.0;
};

/// Coarse-to-fine synthesis of the frame at time t from i0 (t = 0) and
/// i1 (t = 1). Per level: estimate or refine bi-directional flow, scale it
/// towards t, forward-warp both inputs, derive fusion maps from coverage and
/// blend with the temporal factors.
SynthesisResult synthesize(const SynthesisRequest& req);

}  // namespace univip
