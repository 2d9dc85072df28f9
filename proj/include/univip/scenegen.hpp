#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "univip/image.hpp"

namespace univip {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

enum class SpriteShape { Rect, Disk };

/// Square textured sprite moving at constant velocity. `position` is the
/// top-left corner at t = 0. Lower `depth` is nearer the viewer.
struct Sprite {
  SpriteShape shape = SpriteShape::Rect;
  int size = 16;
  std::uint64_t texture_seed = 1;
  Vec2 position;
  Vec2 velocity;
  int depth = 0;
};

struct SyntheticScene {
  int width = 128;
  int height = 128;
  int channels = 3;
  std::uint64_t background_seed = 0;
  Vec2 background_velocity;
  std::vector<Sprite> sprites;
};

/// Throws InvalidInput on duplicate depths, non-finite motion or bad sizes.
void validate(const SyntheticScene& scene);

/// Seeded value noise on an integer grid, contrast stretched to [0.2, 0.8].
Image value_noise(std::uint64_t seed, int width, int height, int channels, int cell);

/// Back-to-front composite at time t with bilinear sub-pixel placement.
Image render(const SyntheticScene& scene, double t);

/// Index into scene.sprites of the topmost sprite covering pixel (x, y) at
/// time t (sampled alpha >= 0.5), or -1 for background.
int owner_at(const SyntheticScene& scene, int x, int y, double t);

/// Motion field from the frame at `ta` to the frame at `tb`: the owning
/// sprite's (or background's) velocity times (tb - ta).
FlowField analytic_flow(const SyntheticScene& scene, double ta, double tb);

/// Pixels at least `margin` pixels away from any layer boundary at time t,
/// i.e. whose (2·margin+1)² neighbourhood has a single owner.
Plane<std::uint8_t> interior_mask(const SyntheticScene& scene, double t, int margin = 1);

enum class TripletRole { Interp, NextPred, PrevPred };

std::string_view to_string(TripletRole role);
TripletRole parse_role(std::string_view text);

/// Target time of a triplet role: 0.5, 2 or -1.
double role_time(TripletRole role);

struct Triplet {
  Image i0;
  Image i1;
  Image target;
  double t = 0.0;
};

/// Inputs rendered at scene times 0 and 1, target at the role's time.
Triplet make_triplet(const SyntheticScene& scene, TripletRole role);

struct SceneOptions {
  int width = 128;
  int height = 128;
  int channels = 3;
  int min_sprites = 1;
  int max_sprites = 2;
  int min_size = 12;
  int max_size = 20;
  double min_speed = 4.0;
  double max_speed = 10.0;
  /// Sprites stay entirely inside the frame for t in [time_min, time_max].
  double time_min = -3.0;
  double time_max = 4.0;
};

/// Random translating-sprite scene with integer positions and integer
/// velocities, so renders at integer and half-integer times are exact.
SyntheticScene random_scene(std::uint64_t seed, const SceneOptions& options = {});

}  // namespace univip
