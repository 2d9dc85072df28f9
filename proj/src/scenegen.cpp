#include "univip/scenegen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace univip {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double lattice_value(std::uint64_t seed, int i, int j, int c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint32_t>(i));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)) << 20));
  h = splitmix64(h ^ static_cast<std::uint64_t>(c + 1));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smoothstep(double a) { return a * a * (3.0 - 2.0 * a); }

double noise_at(std::uint64_t seed, double x, double y, int c, int cell) {
  const double gx = x / cell;
  const double gy = y / cell;
  const int i = static_cast<int>(std::floor(gx));
  const int j = static_cast<int>(std::floor(gy));
  const double ax = smoothstep(gx - i);
  const double ay = smoothstep(gy - j);
  const double v00 = lattice_value(seed, i, j, c);
  const double v10 = lattice_value(seed, i + 1, j, c);
  const double v01 = lattice_value(seed, i, j + 1, c);
  const double v11 = lattice_value(seed, i + 1, j + 1, c);
  return (1 - ay) * ((1 - ax) * v00 + ax * v10) + ay * ((1 - ax) * v01 + ax * v11);
}

Vec2 position_at(const Sprite& s, double t) {
  return {s.position.x + s.velocity.x * t, s.position.y + s.velocity.y * t};
}

/// Alpha of sprite grid cell (i, j); zero outside the sprite's square.
double cell_alpha(const Sprite& s, int i, int j) {
  if (i < 0 || j < 0 || i >= s.size || j >= s.size) return 0.0;
  if (s.shape == SpriteShape::Rect) return 1.0;
  const double radius = s.size / 2.0;
  const double dx = i + 0.5 - radius;
  const double dy = j + 0.5 - radius;
  return dx * dx + dy * dy <= radius * radius ? 1.0 : 0.0;
}

/// Bilinear alpha at local coordinate (u, v).
double sample_alpha(const Sprite& s, double u, double v) {
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  const double au = u - i0;
  const double av = v - j0;
  double sum = 0.0;
  for (int dj = 0; dj <= 1; ++dj) {
    for (int di = 0; di <= 1; ++di) {
      const double wgt = (di ? au : 1 - au) * (dj ? av : 1 - av);
      sum += wgt * cell_alpha(s, i0 + di, j0 + dj);
    }
  }
  return sum;
}

struct SpriteRaster {
  Image color;
  Plane<float> alpha;
};

SpriteRaster rasterize(const Sprite& s, int channels) {
  SpriteRaster r{value_noise(s.texture_seed, s.size, s.size, channels, 4),
                 Plane<float>(s.size, s.size, 1.0f)};
  for (int j = 0; j < s.size; ++j) {
    for (int i = 0; i < s.size; ++i) r.alpha.at(i, j) = static_cast<float>(cell_alpha(s, i, j));
  }
  return r;
}

std::vector<std::size_t> back_to_front(const SyntheticScene& scene) {
  std::vector<std::size_t> order(scene.sprites.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scene.sprites[a].depth > scene.sprites[b].depth;
  });
  return order;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng() % span);
}

}  // namespace

void validate(const SyntheticScene& scene) {
  if (scene.width <= 0 || scene.height <= 0) {
    fail(ErrorKind::InvalidInput, "scene dimensions must be positive");
  }
  if (scene.channels != 1 && scene.channels != 3) {
    fail(ErrorKind::InvalidInput, "scene must have 1 or 3 channels");
  }
  std::set<int> depths;
  for (const Sprite& s : scene.sprites) {
    if (s.size <= 0) fail(ErrorKind::InvalidInput, "sprite size must be positive");
    if (!std::isfinite(s.position.x) || !std::isfinite(s.position.y) ||
        !std::isfinite(s.velocity.x) || !std::isfinite(s.velocity.y)) {
      fail(ErrorKind::InvalidInput, "sprite motion must be finite");
    }
    if (!depths.insert(s.depth).second) {
      fail(ErrorKind::InvalidInput, "sprite depths must be distinct");
    }
  }
}

Image value_noise(std::uint64_t seed, int width, int height, int channels, int cell) {
  Image img(width, height, channels);
  for (int c = 0; c < channels; ++c) {
    double lo = 1e300;
    double hi = -1e300;
    std::vector<double> raw(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double v = noise_at(seed, x, y, c, cell) +
                         0.5 * noise_at(seed ^ 0xA5A5A5A5ull, x, y, c, std::max(1, cell / 2));
        raw[static_cast<std::size_t>(y) * width + x] = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    const double range = hi - lo > 1e-12 ? hi - lo : 1.0;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double v = raw[static_cast<std::size_t>(y) * width + x];
        img.at(x, y, c) = 0.2 + 0.6 * (v - lo) / range;
      }
    }
  }
  return img;
}

Image render(const SyntheticScene& scene, double t) {
  validate(scene);
  const int w = scene.width;
  const int h = scene.height;
  const int nc = scene.channels;
  const Image background = value_noise(scene.background_seed, w, h, nc, 8);

  Image out(w, h, nc);
  const double bx = scene.background_velocity.x * t;
  const double by = scene.background_velocity.y * t;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double u = std::clamp(x - bx, 0.0, static_cast<double>(w - 1));
      const double v = std::clamp(y - by, 0.0, static_cast<double>(h - 1));
      const int i0 = static_cast<int>(std::floor(u));
      const int j0 = static_cast<int>(std::floor(v));
      const int i1 = std::min(i0 + 1, w - 1);
      const int j1 = std::min(j0 + 1, h - 1);
      const double au = u - i0;
      const double av = v - j0;
      for (int c = 0; c < nc; ++c) {
        const double top = (1 - au) * background.at(i0, j0, c) + au * background.at(i1, j0, c);
        const double bot = (1 - au) * background.at(i0, j1, c) + au * background.at(i1, j1, c);
        out.at(x, y, c) = (1 - av) * top + av * bot;
      }
    }
  }

  for (std::size_t idx : back_to_front(scene)) {
    const Sprite& s = scene.sprites[idx];
    const SpriteRaster raster = rasterize(s, nc);
    const Vec2 p = position_at(s, t);
    const int x_begin = std::max(0, static_cast<int>(std::floor(p.x)) - 1);
    const int y_begin = std::max(0, static_cast<int>(std::floor(p.y)) - 1);
    const int x_end = std::min(w, static_cast<int>(std::ceil(p.x)) + s.size + 1);
    const int y_end = std::min(h, static_cast<int>(std::ceil(p.y)) + s.size + 1);
    for (int y = y_begin; y < y_end; ++y) {
      for (int x = x_begin; x < x_end; ++x) {
        const double u = x - p.x;
        const double v = y - p.y;
        const int i0 = static_cast<int>(std::floor(u));
        const int j0 = static_cast<int>(std::floor(v));
        const double au = u - i0;
        const double av = v - j0;
        double alpha = 0.0;
        double premul[3] = {0.0, 0.0, 0.0};
        for (int dj = 0; dj <= 1; ++dj) {
          for (int di = 0; di <= 1; ++di) {
            const int i = i0 + di;
            const int j = j0 + dj;
            if (i < 0 || j < 0 || i >= s.size || j >= s.size) continue;
            const double a = (di ? au : 1 - au) * (dj ? av : 1 - av) * raster.alpha.at(i, j);
            if (a == 0.0) continue;
            alpha += a;
            for (int c = 0; c < nc; ++c) premul[c] += a * raster.color.at(i, j, c);
          }
        }
        if (alpha == 0.0) continue;
        for (int c = 0; c < nc; ++c) {
          out.at(x, y, c) = premul[c] + (1.0 - alpha) * out.at(x, y, c);
        }
      }
    }
  }
  out.clamp();
  return out;
}

int owner_at(const SyntheticScene& scene, int x, int y, double t) {
  int best = -1;
  int best_depth = 0;
  for (std::size_t idx = 0; idx < scene.sprites.size(); ++idx) {
    const Sprite& s = scene.sprites[idx];
    if (best >= 0 && s.depth >= best_depth) continue;
    const Vec2 p = position_at(s, t);
    const double u = x - p.x;
    const double v = y - p.y;
    if (u <= -1.0 || v <= -1.0 || u >= s.size || v >= s.size) continue;
    if (sample_alpha(s, u, v) >= 0.5) {
      best = static_cast<int>(idx);
      best_depth = s.depth;
    }
  }
  return best;
}

FlowField analytic_flow(const SyntheticScene& scene, double ta, double tb) {
  validate(scene);
  if (!std::isfinite(ta) || !std::isfinite(tb)) {
    fail(ErrorKind::InvalidInput, "analytic_flow: times must be finite");
  }
  const double dt = tb - ta;
  FlowField flow(scene.width, scene.height);
  for (int y = 0; y < scene.height; ++y) {
    for (int x = 0; x < scene.width; ++x) {
      const int owner = owner_at(scene, x, y, ta);
      const Vec2 v = owner < 0 ? scene.background_velocity
                               : scene.sprites[static_cast<std::size_t>(owner)].velocity;
      flow.dx(x, y) = static_cast<float>(v.x * dt);
      flow.dy(x, y) = static_cast<float>(v.y * dt);
    }
  }
  return flow;
}

Plane<std::uint8_t> interior_mask(const SyntheticScene& scene, double t, int margin) {
  const int w = scene.width;
  const int h = scene.height;
  Plane<int> owners(w, h, -1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) owners.at(x, y) = owner_at(scene, x, y, t);
  }
  Plane<std::uint8_t> mask(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int own = owners.at(x, y);
      bool uniform = true;
      for (int dy = -margin; dy <= margin && uniform; ++dy) {
        for (int dx = -margin; dx <= margin; ++dx) {
          const int xx = x + dx;
          const int yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
          if (owners.at(xx, yy) != own) {
            uniform = false;
            break;
          }
        }
      }
      mask.at(x, y) = uniform ? 1 : 0;
    }
  }
  return mask;
}

std::string_view to_string(TripletRole role) {
  switch (role) {
    case TripletRole::Interp: return "interp";
    case TripletRole::NextPred: return "next-pred";
    case TripletRole::PrevPred: return "prev-pred";
  }
  return "interp";
}

TripletRole parse_role(std::string_view text) {
  if (text == "interp") return TripletRole::Interp;
  if (text == "next-pred") return TripletRole::NextPred;
  if (text == "prev-pred") return TripletRole::PrevPred;
  fail(ErrorKind::InvalidInput, "unknown triplet role '" + std::string(text) + "'");
}

double role_time(TripletRole role) {
  switch (role) {
    case TripletRole::Interp: return 0.5;
    case TripletRole::NextPred: return 2.0;
    case TripletRole::PrevPred: return -1.0;
  }
  return 0.5;
}

Triplet make_triplet(const SyntheticScene& scene, TripletRole role) {
  const double t = role_time(role);
  return {render(scene, 0.0), render(scene, 1.0), render(scene, t), t};
}

SyntheticScene random_scene(std::uint64_t seed, const SceneOptions& opt) {
  if (opt.min_sprites < 0 || opt.max_sprites < opt.min_sprites || opt.min_size <= 0 ||
      opt.max_size < opt.min_size || opt.time_max < opt.time_min) {
    fail(ErrorKind::InvalidInput, "random_scene: inconsistent options");
  }
  std::mt19937_64 rng(splitmix64(seed));
  SyntheticScene scene;
  scene.width = opt.width;
  scene.height = opt.height;
  scene.channels = opt.channels;
  scene.background_seed = splitmix64(seed ^ 0x5EED5EEDull);

  const int count = uniform_int(rng, opt.min_sprites, opt.max_sprites);
  const int vmax = static_cast<int>(std::floor(opt.max_speed));
  for (int k = 0; k < count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      Sprite s;
      s.shape = uniform_int(rng, 0, 1) == 0 ? SpriteShape::Rect : SpriteShape::Disk;
      s.size = uniform_int(rng, opt.min_size, opt.max_size);
      const int vx = uniform_int(rng, -vmax, vmax);
      const int vy = uniform_int(rng, -vmax, vmax);
      const double speed = std::hypot(vx, vy);
      if (speed < opt.min_speed || speed > opt.max_speed) continue;

      // Integer start positions keeping the sprite in frame over the time span.
      auto range = [&](int v, int extent, int& lo, int& hi) {
        const double a = -v * opt.time_min;
        const double b = -v * opt.time_max;
        lo = static_cast<int>(std::ceil(std::max(a, b)));
        hi = static_cast<int>(std::floor(std::min(extent - s.size + a, extent - s.size + b)));
        return lo <= hi;
      };
      int xlo = 0, xhi = 0, ylo = 0, yhi = 0;
      if (!range(vx, opt.width, xlo, xhi) || !range(vy, opt.height, ylo, yhi)) continue;
      s.position = {static_cast<double>(uniform_int(rng, xlo, xhi)),
                    static_cast<double>(uniform_int(rng, ylo, yhi))};
      s.velocity = {static_cast<double>(vx), static_cast<double>(vy)};
      s.texture_seed = splitmix64(seed + 0x1000ull * static_cast<std::uint64_t>(k + 1));
      s.depth = k;
      scene.sprites.push_back(s);
      placed = true;
    }
    if (!placed) fail(ErrorKind::InvalidInput, "random_scene: cannot place sprite in frame");
  }
  return scene;
}

}  // namespace univip
