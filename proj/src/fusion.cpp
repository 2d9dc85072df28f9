#include "univip/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace univip {

Residual::Residual(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  if (width <= 0 || height <= 0 || channels <= 0) {
    fail(ErrorKind::InvalidInput, "residual dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

TemporalWeights temporal_weights(double t) {
  if (!std::isfinite(t)) fail(ErrorKind::InvalidInput, "time step must be finite");
  if (t >= 0.0 && t <= 1.0) return {1.0 - t, t};
  // 1 - 2t cannot vanish here: t = 0.5 takes the branch above.
  const double denom = 1.0 - 2.0 * t;
  return {(1.0 - t) / denom, -t / denom};
}

Image fuse(const Image& i0t, const Image& i1t, const FusionMaps& maps, const TemporalWeights& w,
           const Residual& res, double denom_epsilon) {
  const int width = i0t.width();
  const int height = i0t.height();
  const int nc = i0t.channels();
  if (!i0t.same_shape(i1t) || !maps.m0.same_size(width, height) ||
      !maps.m1.same_size(width, height) || !maps.unfillable.same_size(width, height) ||
      res.width() != width || res.height() != height || res.channels() != nc) {
    fail(ErrorKind::InvalidInput, "fuse: operand dimensions differ");
  }

  Image out(width, height, nc, 0.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (maps.unfillable.hole(x, y)) continue;
      const double a = w.w0 * maps.m0.at(x, y);
      const double b = w.w1 * maps.m1.at(x, y);
      const double denom = a + b;
      if (!(denom >= denom_epsilon)) {
        throw DegenerateFusionError(
            x, y,
            "fuse: degenerate denominator at pixel (" + std::to_string(x) + ", " +
                std::to_string(y) + ")");
      }
      for (int c = 0; c < nc; ++c) {
        const double blend = (a / denom) * i0t.at(x, y, c) + (b / denom) * i1t.at(x, y, c);
        out.at(x, y, c) = blend + res.at(x, y, c);
      }
    }
  }
  out.clamp();
  return out;
}

FusionMaps coverage_fusion_maps(const CoverageMap& c0, const CoverageMap& c1, TaskKind /*task*/,
                                double coverage_epsilon) {
  if (!c0.same_size(c1.width(), c1.height())) {
    fail(ErrorKind::InvalidInput, "coverage_fusion_maps: coverage dimensions differ");
  }
  const int width = c0.width();
  const int height = c0.height();
  FusionMaps maps{Plane<double>(width, height), Plane<double>(width, height),
                  HoleMask(width, height)};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool covered0 = c0.at(x, y) >= coverage_epsilon;
      const bool covered1 = c1.at(x, y) >= coverage_epsilon;
      maps.m0.at(x, y) = covered0 ? 1.0 : 0.0;
      maps.m1.at(x, y) = covered1 ? 1.0 : 0.0;
      maps.unfillable.at(x, y) = (!covered0 && !covered1) ? 1 : 0;
    }
  }
  return maps;
}

Image fill_unfillable(const Image& img, const HoleMask& unfillable) {
  if (!unfillable.same_size(img.width(), img.height())) {
    fail(ErrorKind::InvalidInput, "fill_unfillable: mask dimensions differ");
  }
  const std::size_t holes = unfillable.count();
  if (holes == 0) return img;
  if (holes == img.pixel_count()) {
    fail(ErrorKind::DegenerateInput, "fill_unfillable: every pixel is unfillable");
  }

  const int width = img.width();
  const int height = img.height();
  const int nc = img.channels();
  Image out = img;

  // Start holes at the mean of the known pixels to shorten the diffusion.
  for (int c = 0; c < nc; ++c) {
    double sum = 0.0;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if (!unfillable.hole(x, y)) sum += img.at(x, y, c);
      }
    }
    const double mean = sum / static_cast<double>(img.pixel_count() - holes);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if (unfillable.hole(x, y)) out.at(x, y, c) = mean;
      }
    }
  }

  // Gauss-Seidel sweeps in raster order over the hole pixels only.
  for (int iter = 0; iter < kFillMaxIterations; ++iter) {
    double max_change = 0.0;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if (!unfillable.hole(x, y)) continue;
        for (int c = 0; c < nc; ++c) {
          double sum = 0.0;
          int n = 0;
          if (x > 0) { sum += out.at(x - 1, y, c); ++n; }
          if (x + 1 < width) { sum += out.at(x + 1, y, c); ++n; }
          if (y > 0) { sum += out.at(x, y - 1, c); ++n; }
          if (y + 1 < height) { sum += out.at(x, y + 1, c); ++n; }
          if (n == 0) continue;
          const double next = sum / n;
          max_change = std::max(max_change, std::abs(next - out.at(x, y, c)));
          out.at(x, y, c) = next;
        }
      }
    }
    if (max_change < kFillTolerance) break;
  }
  out.clamp();
  return out;
}

}  // namespace univip
