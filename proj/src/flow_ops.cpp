#include "univip/flow_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace univip {
namespace {

void require_same_size(const FlowField& a, const FlowField& b, const char* op) {
  if (!a.same_size(b.width(), b.height())) {
    fail(ErrorKind::InvalidInput, std::string(op) + ": flow dimensions differ");
  }
}

void require_finite_time(double t) {
  if (!std::isfinite(t)) fail(ErrorKind::InvalidInput, "time step must be finite");
}

float sample_clamped(const FlowField& f, double x, double y, int component) {
  const int w = f.width();
  const int h = f.height();
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double ax = x - x0;
  const double ay = y - y0;
  auto v = [&](int xx, int yy) -> double {
    return component == 0 ? f.dx(xx, yy) : f.dy(xx, yy);
  };
  const double top = (1.0 - ax) * v(x0, y0) + ax * v(x1, y0);
  const double bottom = (1.0 - ax) * v(x0, y1) + ax * v(x1, y1);
  return static_cast<float>((1.0 - ay) * top + ay * bottom);
}

}  // namespace

FlowField scale_flow(const FlowField& f, double s) {
  FlowField out = f;
  for (float& v : out.values()) v = static_cast<float>(s * static_cast<double>(v));
  return out;
}

TargetFlows approximate_flow_pair(const FlowField& f01, const FlowField& f10, double t) {
  require_same_size(f01, f10, "approximate_flow_pair");
  require_finite_time(t);
  return {scale_flow(f01, t), scale_flow(f10, 1.0 - t)};
}

FlowField resample_flow(const FlowField& f, int out_width, int out_height, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    fail(ErrorKind::InvalidInput, "resample factor must be positive");
  }
  FlowField out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    const double sy = y / factor;
    for (int x = 0; x < out_width; ++x) {
      const double sx = x / factor;
      out.dx(x, y) = static_cast<float>(factor * sample_clamped(f, sx, sy, 0));
      out.dy(x, y) = static_cast<float>(factor * sample_clamped(f, sx, sy, 1));
    }
  }
  return out;
}

FlowField rescale_flow(const FlowField& f, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    fail(ErrorKind::InvalidInput, "rescale factor must be positive");
  }
  if (factor == 1.0) return f;
  const int w = std::max(1, static_cast<int>(std::lround(f.width() * factor)));
  const int h = std::max(1, static_cast<int>(std::lround(f.height() * factor)));
  return resample_flow(f, w, h, factor);
}

double endpoint_error(const FlowField& fa, const FlowField& fb) {
  require_same_size(fa, fb, "endpoint_error");
  double sum = 0.0;
  for (int y = 0; y < fa.height(); ++y) {
    for (int x = 0; x < fa.width(); ++x) {
      sum += std::hypot(static_cast<double>(fa.dx(x, y)) - fb.dx(x, y),
                        static_cast<double>(fa.dy(x, y)) - fb.dy(x, y));
    }
  }
  return sum / (static_cast<double>(fa.width()) * fa.height());
}

double endpoint_error(const FlowField& fa, const FlowField& fb, const Plane<std::uint8_t>& include) {
  require_same_size(fa, fb, "endpoint_error");
  if (!include.same_size(fa.width(), fa.height())) {
    fail(ErrorKind::InvalidInput, "endpoint_error: mask dimensions differ");
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < fa.height(); ++y) {
    for (int x = 0; x < fa.width(); ++x) {
      if (!include.at(x, y)) continue;
      sum += std::hypot(static_cast<double>(fa.dx(x, y)) - fb.dx(x, y),
                        static_cast<double>(fa.dy(x, y)) - fb.dy(x, y));
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace univip
