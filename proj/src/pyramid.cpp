#include "univip/pyramid.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "univip/flow_ops.hpp"
#include "univip/resample.hpp"

namespace univip {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

int choose_levels(int height, int width) {
  if (height < 16 || width < 16) {
    fail(ErrorKind::InvalidInput, "choose_levels: images must be at least 16 px on each side");
  }
  int side = std::min(height, width);
  int levels = 1;
  while (side >= 32) {
    side = half_size(side);
    ++levels;
  }
  return levels;
}

SynthesisResult synthesize(const SynthesisRequest& req) {
  const auto start = Clock::now();
  if (!req.i0.same_shape(req.i1)) {
    fail(ErrorKind::InvalidInput, "synthesize: input frames differ in shape");
  }
  if (!std::isfinite(req.t)) fail(ErrorKind::InvalidInput, "synthesize: t must be finite");
  if (req.levels < 0) fail(ErrorKind::InvalidInput, "synthesize: level count must be positive");
  const SynthesisOptions& opt = req.options;

  SynthesisResult result;
  ConvertedRequest conv = opt.convert ? convert_prediction(req.i0, req.i1, req.t)
                                      : ConvertedRequest{req.i0, req.i1, req.t, false};
  const EstimatorSpec estimator = conv.converted ? req.estimator.swapped() : req.estimator;
  std::shared_ptr<const GroundTruthFlows> reference = req.reference_flows;
  if (!reference && estimator.kind == EstimatorKind::GroundTruth) reference = estimator.ground_truth;
  else if (reference && conv.converted) {
    reference = std::make_shared<const GroundTruthFlows>(
        GroundTruthFlows{reference->f10, reference->f01});
  }

  const double t = conv.t;
  result.converted = conv.converted;
  result.effective_t = t;
  result.task = classify_task(t);
  result.weights = opt.temporal_factor ? temporal_weights(t) : TemporalWeights{0.5, 0.5};
  result.levels_from_rule = req.levels == 0;
  result.levels = req.levels == 0 ? choose_levels(conv.i0.height(), conv.i0.width()) : req.levels;

  std::vector<Image> pyr0{std::move(conv.i0)};
  std::vector<Image> pyr1{std::move(conv.i1)};
  for (int l = 1; l < result.levels; ++l) {
    if (pyr0.back().width() < 2 && pyr0.back().height() < 2) {
      fail(ErrorKind::InvalidInput, "synthesize: too many pyramid levels for the image size");
    }
    pyr0.push_back(area_downsample(pyr0.back()));
    pyr1.push_back(area_downsample(pyr1.back()));
  }

  std::optional<FlowField> prev01;
  std::optional<FlowField> prev10;
  for (int l = result.levels - 1; l >= 0; --l) {
    const auto level_start = Clock::now();
    const Image& i0 = pyr0[static_cast<std::size_t>(l)];
    const Image& i1 = pyr1[static_cast<std::size_t>(l)];
    const int w = i0.width();
    const int h = i0.height();

    std::optional<FlowField> init01;
    std::optional<FlowField> init10;
    if (prev01) {
      init01 = resample_flow(*prev01, w, h, 2.0);
      init10 = resample_flow(*prev10, w, h, 2.0);
    }

    BidirectionalFlow flows;
    try {
      flows = estimate_bidirectional(i0, i1, init01, init10, estimator);
    } catch (const Error& e) {
      throw Error(e.kind(), "pyramid level " + std::to_string(l) + ": " + e.what());
    }

    TargetFlows target = approximate_flow_pair(flows.f01, flows.f10, t);
    WarpResult warped0 = forward_warp(i0, target.from0, opt.coverage_epsilon);
    WarpResult warped1 = forward_warp(i1, target.from1, opt.coverage_epsilon);
    const TaskChannel channel = make_task_channel(result.task, h, w);
    const FusionMaps maps =
        coverage_fusion_maps(warped0.coverage, warped1.coverage, result.task, opt.coverage_epsilon);
    const Residual residual =
        (l == 0 && req.residual) ? *req.residual : Residual::zeros_like(warped0.image);
    Image fused = fuse(warped0.image, warped1.image, maps, result.weights, residual, opt.denom_epsilon);

    HoleMask holes0 = hole_mask(warped0.coverage, opt.coverage_epsilon);
    HoleMask holes1 = hole_mask(warped1.coverage, opt.coverage_epsilon);

    LevelDiagnostics diag;
    diag.level = l;
    diag.width = w;
    diag.height = h;
    diag.residual01 = flows.residual01;
    diag.residual10 = flows.residual10;
    diag.hole_iou = hole_overlap(holes0, holes1);
    diag.unfillable = maps.unfillable.count();
    diag.task_channel = channel.at(0, 0);
    if (reference) {
      diag.epe01 = endpoint_error(flows.f01, downsample_to(reference->f01, w, h));
      diag.epe10 = endpoint_error(flows.f10, downsample_to(reference->f10, w, h));
    }

    if (l == 0) {
      if (opt.fill && maps.unfillable.count() > 0) fused = fill_unfillable(fused, maps.unfillable);
      result.it = std::move(fused);
      result.f0t = std::move(target.from0);
      result.f1t = std::move(target.from1);
      result.coverage0 = std::move(warped0.coverage);
      result.coverage1 = std::move(warped1.coverage);
      result.holes0 = std::move(holes0);
      result.holes1 = std::move(holes1);
      result.unfillable = maps.unfillable;
    }
    prev01 = std::move(flows.f01);
    prev10 = std::move(flows.f10);
    diag.milliseconds = elapsed_ms(level_start);
    result.per_level.push_back(diag);
  }
  result.f01 = std::move(*prev01);
  result.f10 = std::move(*prev10);
  result.milliseconds = elapsed_ms(start);
  return result;
}

}  // namespace univip
