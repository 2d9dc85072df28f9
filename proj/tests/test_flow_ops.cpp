#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "univip/flow_ops.hpp"

using namespace univip;

namespace {

bool uniform(const FlowField& f, float dx, float dy) {
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x)
      if (f.dx(x, y) != dx || f.dy(x, y) != dy) return false;
  return true;
}

}  // namespace

TEST_CASE("approximate_flow_pair scales both flows towards t") {
  const FlowField f01(5, 3, 4.0f, 0.0f);
  const FlowField f10(5, 3, -4.0f, 0.0f);
  struct Case { double t; float a, b; };
  for (Case c : {Case{0.5, 2, -2}, Case{0, 0, -4}, Case{2, 8, 4}, Case{-1, -4, -8}}) {
    CAPTURE(c.t);
    const TargetFlows r = approximate_flow_pair(f01, f10, c.t);
    CHECK(uniform(r.from0, c.a, 0));
    CHECK(uniform(r.from1, c.b, 0));
    CHECK(r.from0.same_size(5, 3));
  }
}

TEST_CASE("approximate_flow_pair rejects mismatched or non-finite input") {
  CHECK_THROWS_AS(approximate_flow_pair(FlowField(4, 4), FlowField(4, 5), 0.5), Error);
  CHECK_THROWS_AS(approximate_flow_pair(FlowField(4, 4), FlowField(4, 4), NAN), Error);
}

TEST_CASE("approximate_flow_pair properties on random fields") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(-3.0, 4.0);
  for (int k = 0; k < 50; ++k) {
    const FlowField f01 = oracle::random_flow(rng, 6, 5, 10.0);
    const FlowField f10 = oracle::random_flow(rng, 6, 5, 10.0);
    const TargetFlows at0 = approximate_flow_pair(f01, f10, 0.0);
    const TargetFlows at1 = approximate_flow_pair(f01, f10, 1.0);
    CHECK(uniform(at0.from0, 0, 0));
    CHECK(uniform(at1.from1, 0, 0));
    CHECK(at0.from1 == f10);
    CHECK(at1.from0 == f01);

    const double t = ut(rng);
    const TargetFlows r = approximate_flow_pair(f01, f10, t);
    for (int y = 0; y < 5; ++y) {
      for (int x = 0; x < 6; ++x) {
        const double dot0 = double(r.from0.dx(x, y)) * f01.dx(x, y) + double(r.from0.dy(x, y)) * f01.dy(x, y);
        const double dot1 = double(r.from1.dx(x, y)) * f10.dx(x, y) + double(r.from1.dy(x, y)) * f10.dy(x, y);
        if (t < 0) CHECK(dot0 <= 0.0);
        if (t > 1) CHECK(dot1 <= 0.0);
        CHECK(r.from0.dx(x, y) == static_cast<float>(t * f01.dx(x, y)));
        CHECK(r.from1.dy(x, y) == static_cast<float>((1.0 - t) * f10.dy(x, y)));
      }
    }
  }
}

TEST_CASE("approximate_flow_pair is linear in t on uniform fields") {
  const FlowField f01(3, 3, 2.0f, -6.0f);
  const FlowField f10(3, 3, -2.0f, 6.0f);
  for (auto [a, b] : {std::pair{0.25, 0.5}, std::pair{-1.0, 3.0}, std::pair{1.5, -2.75}}) {
    const auto ra = approximate_flow_pair(f01, f10, a);
    const auto rb = approximate_flow_pair(f01, f10, b);
    const auto rab = approximate_flow_pair(f01, f10, a + b);
    CHECK(rab.from0.dx(1, 1) == doctest::Approx(ra.from0.dx(1, 1) + rb.from0.dx(1, 1)));
    CHECK(rab.from0.dy(1, 1) == doctest::Approx(ra.from0.dy(1, 1) + rb.from0.dy(1, 1)));
    // F1->t is affine: F1->(a+b) = F1->a + F1->b - F1->0.
    CHECK(rab.from1.dx(1, 1) == doctest::Approx(ra.from1.dx(1, 1) + rb.from1.dx(1, 1) - f10.dx(1, 1)));
  }
}

TEST_CASE("rescale_flow examples") {
  const FlowField ones(2, 2, 1.0f, 1.0f);
  const FlowField up = rescale_flow(ones, 2.0);
  CHECK(up.same_size(4, 4));
  CHECK(uniform(up, 2.0f, 2.0f));
  CHECK(rescale_flow(ones, 1.0) == ones);
  CHECK_THROWS_AS(rescale_flow(ones, 0.0), Error);
  CHECK_THROWS_AS(rescale_flow(ones, -2.0), Error);

  FlowField ramp(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      ramp.dx(x, y) = static_cast<float>(x + 0.5 * y);
      ramp.dy(x, y) = static_cast<float>(2.0 * y - x);
    }
  const FlowField down = rescale_flow(ramp, 0.5);
  REQUIRE(down.same_size(2, 2));
  const FlowField ref = oracle::resample(ramp, 2, 2, 0.5);
  for (std::size_t i = 0; i < down.values().size(); ++i) {
    CHECK(down.values()[i] == doctest::Approx(ref.values()[i]).epsilon(1e-6));
  }
}

TEST_CASE("rescale_flow matches the resampling oracle on random fields") {
  std::mt19937_64 rng(5);
  for (double factor : {0.5, 2.0, 1.5, 0.75, 3.0}) {
    const FlowField f = oracle::random_flow(rng, 7, 6, 4.0);
    const FlowField r = rescale_flow(f, factor);
    const FlowField ref = oracle::resample(f, r.width(), r.height(), factor);
    CHECK(r.width() == static_cast<int>(std::lround(7 * factor)));
    for (std::size_t i = 0; i < r.values().size(); ++i) {
      CHECK(std::abs(r.values()[i] - ref.values()[i]) <= 1e-5);
    }
  }
}

TEST_CASE("rescale_flow up then down restores smooth fields") {
  FlowField f(12, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 12; ++x) {
      f.dx(x, y) = static_cast<float>(std::sin(0.3 * x) + 0.2 * y);
      f.dy(x, y) = static_cast<float>(std::cos(0.25 * y) - 0.1 * x);
    }
  const FlowField back = rescale_flow(rescale_flow(f, 2.0), 0.5);
  REQUIRE(back.same_size(12, 10));
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    CHECK(std::abs(back.values()[i] - f.values()[i]) <= 1e-5);
  }
}

TEST_CASE("endpoint_error") {
  const FlowField a(4, 3, 1.0f, 2.0f);
  CHECK(endpoint_error(a, a) == 0.0);
  CHECK(endpoint_error(FlowField(4, 3, 4.0f, 6.0f), FlowField(4, 3, 1.0f, 2.0f)) == doctest::Approx(5.0));
  CHECK_THROWS_AS(endpoint_error(a, FlowField(3, 4)), Error);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const FlowField p = oracle::random_flow(rng, 9, 7, 5.0);
    const FlowField q = oracle::random_flow(rng, 9, 7, 5.0);
    CHECK(endpoint_error(p, q) == doctest::Approx(oracle::epe(p, q)).epsilon(1e-12));
    CHECK(endpoint_error(p, q) == doctest::Approx(endpoint_error(q, p)).epsilon(1e-12));
  }

  Plane<std::uint8_t> mask(4, 3, 0);
  CHECK(endpoint_error(FlowField(4, 3, 3.0f, 4.0f), a, mask) == 0.0);
  FlowField b = a;
  b.dx(0, 0) = 4.0f;
  b.dy(0, 0) = 6.0f;
  mask.at(0, 0) = 1;
  CHECK(endpoint_error(b, a, mask) == doctest::Approx(5.0));
}
