#include <cmath>
#include <iomanip>
#include <set>

#include "doctest.h"
#include "univip/losses_metrics.hpp"
#include "univip/pyramid.hpp"
#include "univip/scenegen.hpp"

using namespace univip;

namespace {

SynthesisRequest gt_request(const SyntheticScene& s, double t) {
  auto gt = std::make_shared<const GroundTruthFlows>(GroundTruthFlows::from_scene(s));
  SynthesisRequest req;
  req.i0 = render(s, 0);
  req.i1 = render(s, 1);
  req.t = t;
  req.estimator.kind = EstimatorKind::GroundTruth;
  req.estimator.ground_truth = gt;
  return req;
}

}  // namespace

TEST_CASE("choose_levels follows the bracket rule") {
  CHECK(choose_levels(256, 448) == 5);  // 256 -> 128 -> 64 -> 32 -> 16
  CHECK(choose_levels(480, 640) == 5);  // 480 -> 240 -> 120 -> 60 -> 30
  CHECK(choose_levels(16, 16) == 1);
  CHECK(choose_levels(31, 500) == 1);
  CHECK(choose_levels(32, 32) == 2);
  CHECK(choose_levels(128, 128) == 4);
  CHECK(choose_levels(33, 40) == 2);  // 33 -> 17
  CHECK_THROWS_AS(choose_levels(15, 64), Error);
  CHECK_THROWS_AS(choose_levels(64, 8), Error);
  // Short side after levels - 1 halvings always lands in [16, 32).
  for (int side = 16; side < 2000; side += 7) {
    int s = side;
    for (int l = 1; l < choose_levels(side, side + 3); ++l) s = (s + 1) / 2;
    CHECK(s >= 16);
    CHECK(s < 32);
  }
}

TEST_CASE("static scene with zero flow reproduces the input") {
  const Image img = value_noise(3, 48, 40, 3, 4);
  auto gt = std::make_shared<const GroundTruthFlows>(GroundTruthFlows{FlowField(48, 40), FlowField(48, 40)});
  for (double t : {-1.0, 0.5, 2.0}) {
    SynthesisRequest req;
    req.i0 = img;
    req.i1 = img;
    req.t = t;
    req.estimator = EstimatorSpec::ground_truth_flows(*gt);
    const SynthesisResult r = synthesize(req);
    double worst = 0.0;
    for (std::size_t i = 0; i < img.values().size(); ++i)
      worst = std::max(worst, std::abs(r.it.values()[i] - img.values()[i]));
    CHECK(worst <= 1e-12);
    if (t == 0.5) CHECK(r.it == img);
    CHECK(r.unfillable.count() == 0);
  }
}

TEST_CASE("synthesis reports task, conversion and weights") {
  const SyntheticScene s = random_scene(2);
  const SynthesisResult mid = synthesize(gt_request(s, 0.5));
  CHECK(mid.task == TaskKind::Interpolation);
  CHECK_FALSE(mid.converted);
  CHECK(mid.levels == 4);
  CHECK(mid.levels_from_rule);
  REQUIRE(mid.per_level.size() == 4);
  CHECK(mid.per_level.front().level == 3);
  CHECK(mid.per_level.back().level == 0);
  CHECK(mid.per_level.back().width == 128);
  CHECK(mid.per_level.front().width == 16);
  for (const auto& d : mid.per_level) CHECK(d.task_channel == 0.0);

  const SynthesisResult prev = synthesize(gt_request(s, -1.0));
  CHECK(prev.converted);
  CHECK(prev.effective_t == 2.0);
  CHECK(prev.task == TaskKind::Prediction);
  CHECK(prev.weights.w0 == doctest::Approx(1.0 / 3.0));
  for (const auto& d : prev.per_level) CHECK(d.task_channel == 1.0);

  SynthesisRequest flat = gt_request(s, 2.0);
  flat.options.temporal_factor = false;
  flat.levels = 2;
  const SynthesisResult r = synthesize(flat);
  CHECK(r.weights.w0 == 0.5);
  CHECK(r.weights.w1 == 0.5);
  CHECK(r.levels == 2);
  CHECK_FALSE(r.levels_from_rule);
}

TEST_CASE("synthesis quality against the scene oracle") {
  for (std::uint64_t seed : {0u, 7u, 13u}) {
    const SyntheticScene s = random_scene(seed);
    for (double t : {0.5, 2.0, -1.0}) {
      const SynthesisResult r = synthesize(gt_request(s, t));
      Plane<std::uint8_t> fillable(128, 128, 1);
      for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) fillable.at(x, y) = r.unfillable.hole(x, y) ? 0 : 1;
      const double p = psnr(r.it, render(s, t), fillable);
      CAPTURE(seed);
      CAPTURE(t);
      CHECK(p >= (t == 0.5 ? 40.0 : 35.0));
    }
  }
}

TEST_CASE("per-level EPE with the ground-truth estimator does not increase") {
  const SynthesisResult r = synthesize(gt_request(random_scene(5), 2.0));
  for (std::size_t i = 1; i < r.per_level.size(); ++i) {
    REQUIRE(r.per_level[i].epe01);
    CHECK(*r.per_level[i].epe01 <= *r.per_level[i - 1].epe01 + 1e-6);
  }
}

TEST_CASE("conversion equivalence") {
  const SyntheticScene s = random_scene(9);
  for (double t : {-0.25, -1.0, -2.5}) {
    const SynthesisResult direct = synthesize(gt_request(s, t));
    SynthesisRequest swapped = gt_request(s, 1.0 - t);
    std::swap(swapped.i0, swapped.i1);
    swapped.estimator = swapped.estimator.swapped();
    swapped.options.convert = false;
    const SynthesisResult ref = synthesize(swapped);
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.it.values().size(); ++i)
      worst = std::max(worst, std::abs(direct.it.values()[i] - ref.it.values()[i]));
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("unconverted prediction for t < 0 runs and differs from converted") {
  const SyntheticScene s = random_scene(9);
  SynthesisRequest req = gt_request(s, -1.0);
  req.options.convert = false;
  const SynthesisResult r = synthesize(req);
  CHECK_FALSE(r.converted);
  CHECK(r.effective_t == -1.0);
  CHECK(r.weights.w0 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("synthesis is deterministic") {
  const SyntheticScene s = random_scene(6);
  for (double t : {0.5, 1.4}) {
    const SynthesisResult a = synthesize(gt_request(s, t));
    const SynthesisResult b = synthesize(gt_request(s, t));
    CHECK(a.it == b.it);
    CHECK(a.f0t == b.f0t);
    CHECK(a.coverage1 == b.coverage1);
    REQUIRE(a.per_level.size() == b.per_level.size());
    for (std::size_t i = 0; i < a.per_level.size(); ++i) {
      CHECK(a.per_level[i].hole_iou == b.per_level[i].hole_iou);
      CHECK(a.per_level[i].unfillable == b.per_level[i].unfillable);
      CHECK(a.per_level[i].residual01 == b.per_level[i].residual01);
    }
  }
}

TEST_CASE("synthesis succeeds across the extended time grid") {
  const SyntheticScene s = random_scene(1);
  for (int k = 0; k <= 28; ++k) {
    const double t = -3.0 + 0.25 * k;
    CAPTURE(t);
    CHECK_NOTHROW(synthesize(gt_request(s, t)));
  }
}

TEST_CASE("residual is added at the finest level") {
  const Image img(32, 32, 1, 0.4);
  SynthesisRequest req;
  req.i0 = img;
  req.i1 = img;
  req.t = 0.5;
  req.estimator = EstimatorSpec::ground_truth_flows({FlowField(32, 32), FlowField(32, 32)});
  req.residual = Residual(32, 32, 1, 0.1);
  const SynthesisResult r = synthesize(req);
  for (double v : r.it.values()) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("synthesis input validation") {
  SynthesisRequest req;
  req.i0 = Image(32, 32, 3);
  req.i1 = Image(32, 30, 3);
  CHECK_THROWS_AS(synthesize(req), Error);
  req.i1 = Image(32, 32, 3);
  req.t = NAN;
  CHECK_THROWS_AS(synthesize(req), Error);
  req.t = 0.5;
  req.levels = -1;
  CHECK_THROWS_AS(synthesize(req), Error);
  req.levels = 0;
  req.i0 = Image(8, 8, 3);
  req.i1 = Image(8, 8, 3);
  CHECK_THROWS_AS(synthesize(req), Error);
  req.levels = 1;
  CHECK_NOTHROW(synthesize(req));
  req.estimator.kind = EstimatorKind::GroundTruth;
  try {
    synthesize(req);
    FAIL("expected configuration error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidConfiguration);
  }
}

TEST_CASE("classical estimator drives the full pipeline") {
  const SyntheticScene s = random_scene(3);
  SynthesisRequest req = gt_request(s, 0.5);
  req.estimator = EstimatorSpec::classical();
  const SynthesisResult r = synthesize(req);
  const double p = psnr(r.it, render(s, 0.5));
  MESSAGE("classical estimator PSNR at t=0.5: " << p);
  // Regression bound from the first measured run (32.2 dB).
  CHECK(p >= 30.0);
}
