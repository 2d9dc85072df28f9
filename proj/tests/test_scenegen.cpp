#include <set>

#include <cmath>
#include <iomanip>
#include <set>

#include "doctest.h"
#include "univip/flow_ops.hpp"
#include "univip/scenegen.hpp"
#include "univip/warp.hpp"

using namespace univip;

namespace {

SyntheticScene one_sprite(Vec2 velocity) {
  SyntheticScene s;
  s.width = 64;
  s.height = 48;
  s.background_seed = 17;
  s.sprites.push_back({SpriteShape::Rect, 14, 5, {20, 16}, velocity, 0});
  return s;
}

}  // namespace

TEST_CASE("render is deterministic and in range") {
  const SyntheticScene scene = random_scene(3);
  const Image a = render(scene, 0.0);
  const Image b = render(scene, 0.0);
  CHECK(a == b);
  CHECK(a.width() == 128);
  CHECK(a.channels() == 3);
  for (double v : a.values()) CHECK((v >= 0.0 && v <= 1.0));
  CHECK(random_scene(3).sprites.size() == scene.sprites.size());
  CHECK(render(random_scene(3), 1.5) == render(scene, 1.5));
}

TEST_CASE("value noise is seeded and stretched") {
  const Image n = value_noise(9, 40, 30, 3, 4);
  CHECK(n == value_noise(9, 40, 30, 3, 4));
  CHECK_FALSE(n == value_noise(10, 40, 30, 3, 4));
  double lo = 1.0, hi = 0.0;
  for (double v : n.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == doctest::Approx(0.2));
  CHECK(hi == doctest::Approx(0.8));
}

TEST_CASE("analytic_flow examples") {
  const SyntheticScene s = one_sprite({8, 0});
  const FlowField f01 = analytic_flow(s, 0, 1);
  CHECK(f01.dx(25, 20) == 8.0f);
  CHECK(f01.dy(25, 20) == 0.0f);
  CHECK(f01.dx(2, 2) == 0.0f);
  const FlowField none = analytic_flow(s, 0, 0);
  for (float v : none.values()) CHECK(v == 0.0f);
  const FlowField back = analytic_flow(s, 0, -1);
  CHECK(back.dx(25, 20) == -8.0f);
  CHECK_THROWS_AS(analytic_flow(s, 0, NAN), Error);
}

TEST_CASE("owner_at follows motion and depth") {
  SyntheticScene s = one_sprite({8, 0});
  CHECK(owner_at(s, 25, 20, 0.0) == 0);
  CHECK(owner_at(s, 25, 20, 2.0) == -1);
  CHECK(owner_at(s, 41, 20, 2.0) == 0);
  s.sprites.push_back({SpriteShape::Disk, 14, 6, {20, 16}, {0, 0}, -1});
  CHECK(owner_at(s, 27, 23, 0.0) == 1);
  CHECK(owner_at(s, 20, 16, 0.0) == 0);  // disk corner is transparent
}

TEST_CASE("validate rejects bad scenes") {
  SyntheticScene s = one_sprite({8, 0});
  s.sprites.push_back(s.sprites.front());
  CHECK_THROWS_AS(validate(s), Error);
  SyntheticScene nan = one_sprite({NAN, 0});
  CHECK_THROWS_AS(validate(nan), Error);
  SyntheticScene empty = one_sprite({1, 0});
  empty.width = 0;
  CHECK_THROWS_AS(validate(empty), Error);
}

TEST_CASE("triplet roles") {
  CHECK(role_time(TripletRole::Interp) == 0.5);
  CHECK(role_time(TripletRole::NextPred) == 2.0);
  CHECK(role_time(TripletRole::PrevPred) == -1.0);
  for (TripletRole r : {TripletRole::Interp, TripletRole::NextPred, TripletRole::PrevPred}) {
    CHECK(parse_role(to_string(r)) == r);
  }
  CHECK_THROWS_AS(parse_role("middle"), Error);

  const SyntheticScene s = random_scene(12);
  const Triplet trip = make_triplet(s, TripletRole::PrevPred);
  CHECK(trip.t == -1.0);
  CHECK(trip.i0 == render(s, 0));
  CHECK(trip.i1 == render(s, 1));
  CHECK(trip.target == render(s, -1));
  CHECK(make_triplet(s, TripletRole::Interp).target == render(s, 0.5));
  CHECK(make_triplet(s, TripletRole::NextPred).t == 2.0);
}

TEST_CASE("random scenes respect their options") {
  SceneOptions o;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SyntheticScene s = random_scene(seed, o);
    CHECK(s.sprites.size() >= 1);
    CHECK(s.sprites.size() <= 2);
    std::set<int> depths;
    for (const Sprite& sp : s.sprites) {
      const double speed = std::hypot(sp.velocity.x, sp.velocity.y);
      CHECK(speed >= 4.0);
      CHECK(speed <= 10.0);
      CHECK(sp.velocity.x == std::round(sp.velocity.x));
      CHECK(sp.position.y == std::round(sp.position.y));
      for (double t : {o.time_min, o.time_max}) {
        CHECK(sp.position.x + sp.velocity.x * t >= 0);
        CHECK(sp.position.x + sp.velocity.x * t + sp.size <= s.width);
        CHECK(sp.position.y + sp.velocity.y * t >= 0);
        CHECK(sp.position.y + sp.velocity.y * t + sp.size <= s.height);
      }
      depths.insert(sp.depth);
    }
    CHECK(depths.size() == s.sprites.size());
  }
  SceneOptions bad;
  bad.min_sprites = 3;
  bad.max_sprites = 1;
  CHECK_THROWS_AS(random_scene(1, bad), Error);
}

TEST_CASE("linear flow approximation reproduces analytic flows") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SyntheticScene s = random_scene(seed);
    const FlowField f01 = analytic_flow(s, 0, 1), f10 = analytic_flow(s, 1, 0);
    for (double t : {-3.0, -0.6, 0.25, 1.4, 4.0}) {
      const TargetFlows tf = approximate_flow_pair(f01, f10, t);
      CHECK(tf.from0 == analytic_flow(s, 0, t));
      CHECK(tf.from1 == analytic_flow(s, 1, t));
    }
  }
}

TEST_CASE("warping a render by the analytic flow reproduces the later render") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const SyntheticScene s = random_scene(seed);
    const Image i0 = render(s, 0.0);
    const auto at_0 = interior_mask(s, 0.0, 2);
    for (double t : {0.25, 0.5, 1.0, 1.4, 2.0, -0.6, -1.0}) {
      CAPTURE(seed);
      CAPTURE(t);
      const WarpResult w = forward_warp(i0, analytic_flow(s, 0.0, t));
      const Image ref = render(s, t);
      const auto at_t = interior_mask(s, t, 2);
      double worst = 0.0;
      std::size_t checked = 0;
      for (int y = 0; y < s.height; ++y) {
        for (int x = 0; x < s.width; ++x) {
          if (!at_t.at(x, y) || std::abs(w.coverage.at(x, y) - 1.0) > 1e-9) continue;
          // Only pixels whose splat sources were interior pixels of the same layer.
          const int owner = owner_at(s, x, y, t);
          const Vec2 v = owner < 0 ? s.background_velocity : s.sprites[owner].velocity;
          const int sx = static_cast<int>(std::floor(x - v.x * t));
          const int sy = static_cast<int>(std::floor(y - v.y * t));
          if (sx < 0 || sy < 0 || sx + 1 >= s.width || sy + 1 >= s.height) continue;
          bool clean = true;
          for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
              clean = clean && at_0.at(sx + i, sy + j) && owner_at(s, sx + i, sy + j, 0.0) == owner;
          if (!clean) continue;
          ++checked;
          for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(w.image.at(x, y, c) - ref.at(x, y, c)));
        }
      }
      CHECK(checked > 1000);
      CHECK(worst <= 1e-3);
    }
  }
}
