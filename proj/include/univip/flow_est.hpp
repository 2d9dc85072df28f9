#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "univip/image.hpp"
#include "univip/scenegen.hpp"

namespace univip {

/// Known bi-directional motion between the two inputs at full resolution.
struct GroundTruthFlows {
  FlowField f01;
  FlowField f10;

  static GroundTruthFlows from_scene(const SyntheticScene& scene);
};

struct ClassicalParams {
  int window = 9;
  int iterations = 5;
  double smoothing = 0.0;
  /// Pyramid depth used when no initial flow is supplied; 0 picks it from the
  /// image size.
  int levels = 0;
  /// Tikhonov damping added to the normal equations. Flat windows fall back
  /// to a zero update.
  double damping = 1e-3;
};

enum class EstimatorKind { GroundTruth, Classical };

std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator(std::string_view text);

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::Classical;
  std::shared_ptr<const GroundTruthFlows> ground_truth;
  ClassicalParams params;

  static EstimatorSpec classical(ClassicalParams params = {});
  static EstimatorSpec ground_truth_flows(GroundTruthFlows flows);
  static EstimatorSpec ground_truth_scene(const SyntheticScene& scene);

  /// Same estimator for the reversed input pair (ground-truth flows swap).
  EstimatorSpec swapped() const;
};

struct BidirectionalFlow {
  FlowField f01;
  FlowField f10;
  /// Mean absolute photometric residual after warping, per direction.
  double residual01 = 0.0;
  double residual10 = 0.0;
};

/// F0->1 and F1->0 between i0 and i1. The ground-truth kind returns the
/// attached flows, area-downsampled when the images are a coarser pyramid
/// level. The classical kind runs windowed Lucas-Kanade refinement, warm
/// started from the initial flows when given and coarse-to-fine otherwise.
BidirectionalFlow estimate_bidirectional(const Image& i0, const Image& i1,
                                         const std::optional<FlowField>& init01,
                                         const std::optional<FlowField>& init10,
                                         const EstimatorSpec& spec);

/// One direction of the classical estimator: flow u with a(x) ≈ b(x + u(x)).
/// Returns the best iterate and its residual.
std::pair<FlowField, double> estimate_classical(const Image& a, const Image& b,
                                                const std::optional<FlowField>& init,
                                                const ClassicalParams& params);

}  // namespace univip
