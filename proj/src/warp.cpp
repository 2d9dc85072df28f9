#include "univip/warp.hpp"

#include <cmath>
#include <vector>

namespace univip {

WarpResult forward_warp(const Image& img, const FlowField& flow, double coverage_epsilon) {
  if (!flow.same_size(img.width(), img.height())) {
    fail(ErrorKind::InvalidInput, "forward_warp: image and flow dimensions differ");
  }
  if (!(coverage_epsilon > 0.0)) {
    fail(ErrorKind::InvalidInput, "forward_warp: coverage epsilon must be positive");
  }
  const int w = img.width();
  const int h = img.height();
  const int nc = img.channels();

  std::vector<double> acc(img.values().size(), 0.0);
  CoverageMap coverage(w, h, 0.0);

  auto splat = [&](int sx, int sy, int dx, int dy, double weight) {
    if (weight <= 0.0 || dx < 0 || dy < 0 || dx >= w || dy >= h) return;
    coverage.at(dx, dy) += weight;
    const std::size_t base = (static_cast<std::size_t>(dy) * w + dx) * nc;
    for (int c = 0; c < nc; ++c) acc[base + c] += weight * img.at(sx, sy, c);
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double tx = x + static_cast<double>(flow.dx(x, y));
      const double ty = y + static_cast<double>(flow.dy(x, y));
      const double fx = std::floor(tx);
      const double fy = std::floor(ty);
      // Far out-of-frame targets would overflow the int conversion.
      if (!std::isfinite(fx) || !std::isfinite(fy)) continue;
      if (fx < -1.0 || fy < -1.0 || fx >= w || fy >= h) continue;
      const int x0 = static_cast<int>(fx);
      const int y0 = static_cast<int>(fy);
      const double ax = tx - fx;
      const double ay = ty - fy;
      splat(x, y, x0, y0, (1.0 - ax) * (1.0 - ay));
      splat(x, y, x0 + 1, y0, ax * (1.0 - ay));
      splat(x, y, x0, y0 + 1, (1.0 - ax) * ay);
      splat(x, y, x0 + 1, y0 + 1, ax * ay);
    }
  }

  Image out(w, h, nc, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double weight = coverage.at(x, y);
      if (weight < coverage_epsilon) continue;
      const std::size_t base = (static_cast<std::size_t>(y) * w + x) * nc;
      for (int c = 0; c < nc; ++c) {
        out.at(x, y, c) = acc[base + c] / weight;
      }
    }
  }
  out.clamp();
  return {std::move(out), std::move(coverage)};
}

HoleMask hole_mask(const CoverageMap& cov, double coverage_epsilon) {
  if (!(coverage_epsilon > 0.0)) {
    fail(ErrorKind::InvalidInput, "hole_mask: coverage epsilon must be positive");
  }
  HoleMask mask(cov.width(), cov.height(), 0);
  for (int y = 0; y < cov.height(); ++y) {
    for (int x = 0; x < cov.width(); ++x) {
      mask.at(x, y) = cov.at(x, y) < coverage_epsilon ? 1 : 0;
    }
  }
  return mask;
}

double hole_overlap(const HoleMask& a, const HoleMask& b) {
  if (!a.same_size(b.width(), b.height())) {
    fail(ErrorKind::InvalidInput, "hole_overlap: mask dimensions differ");
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    const bool ha = va[i] != 0;
    const bool hb = vb[i] != 0;
    inter += (ha && hb) ? 1 : 0;
    uni += (ha || hb) ? 1 : 0;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace univip
