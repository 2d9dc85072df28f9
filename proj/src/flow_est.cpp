#include "univip/flow_est.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "univip/flow_ops.hpp"
#include "univip/resample.hpp"

namespace univip {
namespace {

using Buffer = std::vector<double>;

/// Box sum over a (2r+1)² window, clipped at the borders. Separable.
Buffer box_sum(const Buffer& src, int w, int h, int r) {
  Buffer rows(src.size());
  for (int y = 0; y < h; ++y) {
    const double* line = &src[static_cast<std::size_t>(y) * w];
    double run = 0.0;
    for (int x = 0; x <= std::min(r, w - 1); ++x) run += line[x];
    for (int x = 0; x < w; ++x) {
      rows[static_cast<std::size_t>(y) * w + x] = run;
      if (x + r + 1 < w) run += line[x + r + 1];
      if (x - r >= 0) run -= line[x - r];
    }
  }
  Buffer out(src.size());
  for (int x = 0; x < w; ++x) {
    double run = 0.0;
    for (int y = 0; y <= std::min(r, h - 1); ++y) run += rows[static_cast<std::size_t>(y) * w + x];
    for (int y = 0; y < h; ++y) {
      out[static_cast<std::size_t>(y) * w + x] = run;
      if (y + r + 1 < h) run += rows[static_cast<std::size_t>(y + r + 1) * w + x];
      if (y - r >= 0) run -= rows[static_cast<std::size_t>(y - r) * w + x];
    }
  }
  return out;
}

Buffer to_buffer(const Image& gray) {
  return Buffer(gray.values().begin(), gray.values().end());
}

double at_clamped(const Buffer& b, int w, int h, int x, int y) {
  x = std::clamp(x, 0, w - 1);
  y = std::clamp(y, 0, h - 1);
  return b[static_cast<std::size_t>(y) * w + x];
}

/// Bilinear weights of an edge-clamped sample position, shared by the
/// intensity and gradient lookups.
struct Tap {
  std::size_t i00, i10, i01, i11;
  double ax, ay;

  Tap(int w, int h, double x, double y) {
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    ax = x - x0;
    ay = y - y0;
    i00 = static_cast<std::size_t>(y0) * w + x0;
    i10 = static_cast<std::size_t>(y0) * w + x1;
    i01 = static_cast<std::size_t>(y1) * w + x0;
    i11 = static_cast<std::size_t>(y1) * w + x1;
  }

  double operator()(const Buffer& b) const {
    return (1 - ay) * ((1 - ax) * b[i00] + ax * b[i10]) + ay * ((1 - ax) * b[i01] + ax * b[i11]);
  }
};

/// Central differences with clamped borders.
void gradients(const Buffer& img, int w, int h, Buffer& gx, Buffer& gy) {
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      gx[i] = 0.5 * (at_clamped(img, w, h, x + 1, y) - at_clamped(img, w, h, x - 1, y));
      gy[i] = 0.5 * (at_clamped(img, w, h, x, y + 1) - at_clamped(img, w, h, x, y - 1));
    }
  }
}

/// Single-level iterative refinement. `flow` is updated in place to the best
/// iterate; the return value is that iterate's residual.
double refine_level(const Buffer& a, const Buffer& b, int w, int h, FlowField& flow,
                    const ClassicalParams& p) {
  const std::size_t n = static_cast<std::size_t>(w) * h;
  const int radius = std::max(1, p.window / 2);

  Buffer ax(n), ay(n), bx(n), by(n);
  gradients(a, w, h, ax, ay);
  gradients(b, w, h, bx, by);

  Buffer ixx(n), ixy(n), iyy(n), ixt(n), iyt(n);
  FlowField best = flow;
  double best_residual = 0.0;

  for (int iter = 0;; ++iter) {
    // Warp b by the current flow; the same samples give this iterate's
    // residual and the next linearization.
    double residual = 0.0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const Tap tap(w, h, x + flow.dx(x, y), y + flow.dy(x, y));
        const double e = tap(b) - a[i];
        const double gx = 0.5 * (ax[i] + tap(bx));
        const double gy = 0.5 * (ay[i] + tap(by));
        residual += std::abs(e);
        ixx[i] = gx * gx;
        ixy[i] = gx * gy;
        iyy[i] = gy * gy;
        ixt[i] = gx * e;
        iyt[i] = gy * e;
      }
    }
    residual /= static_cast<double>(n);
    if (iter == 0 || residual < best_residual) {
      best_residual = residual;
      best = flow;
    }
    if (iter == p.iterations) break;

    const Buffer sxx = box_sum(ixx, w, h, radius);
    const Buffer sxy = box_sum(ixy, w, h, radius);
    const Buffer syy = box_sum(iyy, w, h, radius);
    const Buffer sxt = box_sum(ixt, w, h, radius);
    const Buffer syt = box_sum(iyt, w, h, radius);

    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const double a11 = sxx[i] + p.damping;
        const double a22 = syy[i] + p.damping;
        const double a12 = sxy[i];
        const double det = a11 * a22 - a12 * a12;
        if (!(det > 0.0)) continue;
        double du = -(a22 * sxt[i] - a12 * syt[i]) / det;
        double dv = -(a11 * syt[i] - a12 * sxt[i]) / det;
        // Cap single-step updates; large jumps are the pyramid's job.
        const double mag = std::hypot(du, dv);
        if (mag > 2.0) {
          du *= 2.0 / mag;
          dv *= 2.0 / mag;
        }
        flow.dx(x, y) = static_cast<float>(flow.dx(x, y) + du);
        flow.dy(x, y) = static_cast<float>(flow.dy(x, y) + dv);
      }
    }

    if (p.smoothing > 0.0) {
      const FlowField prev = flow;
      const double s = p.smoothing;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          double mx = 0.0, my = 0.0;
          int cnt = 0;
          const int nx[4] = {x - 1, x + 1, x, x};
          const int ny[4] = {y, y, y - 1, y + 1};
          for (int k = 0; k < 4; ++k) {
            if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w || ny[k] >= h) continue;
            mx += prev.dx(nx[k], ny[k]);
            my += prev.dy(nx[k], ny[k]);
            ++cnt;
          }
          if (cnt == 0) continue;
          flow.dx(x, y) = static_cast<float>((prev.dx(x, y) + s * mx / cnt) / (1.0 + s));
          flow.dy(x, y) = static_cast<float>((prev.dy(x, y) + s * my / cnt) / (1.0 + s));
        }
      }
    }
  }
  flow = std::move(best);
  return best_residual;
}

int auto_levels(int w, int h) {
  int levels = 1;
  int m = std::min(w, h);
  while (levels < 5 && half_size(m) >= 16) {
    m = half_size(m);
    ++levels;
  }
  return levels;
}

}  // namespace

GroundTruthFlows GroundTruthFlows::from_scene(const SyntheticScene& scene) {
  return {analytic_flow(scene, 0.0, 1.0), analytic_flow(scene, 1.0, 0.0)};
}

std::string_view to_string(EstimatorKind kind) {
  return kind == EstimatorKind::GroundTruth ? "gt" : "classical";
}

EstimatorKind parse_estimator(std::string_view text) {
  if (text == "gt") return EstimatorKind::GroundTruth;
  if (text == "classical") return EstimatorKind::Classical;
  fail(ErrorKind::InvalidConfiguration, "unknown estimator '" + std::string(text) + "'");
}

EstimatorSpec EstimatorSpec::classical(ClassicalParams params) {
  EstimatorSpec spec;
  spec.kind = EstimatorKind::Classical;
  spec.params = params;
  return spec;
}

EstimatorSpec EstimatorSpec::ground_truth_flows(GroundTruthFlows flows) {
  if (!flows.f01.same_size(flows.f10.width(), flows.f10.height())) {
    fail(ErrorKind::InvalidConfiguration, "ground-truth flows differ in size");
  }
  EstimatorSpec spec;
  spec.kind = EstimatorKind::GroundTruth;
  spec.ground_truth = std::make_shared<const GroundTruthFlows>(std::move(flows));
  return spec;
}

EstimatorSpec EstimatorSpec::ground_truth_scene(const SyntheticScene& scene) {
  return ground_truth_flows(GroundTruthFlows::from_scene(scene));
}

EstimatorSpec EstimatorSpec::swapped() const {
  EstimatorSpec out = *this;
  if (ground_truth) {
    out.ground_truth = std::make_shared<const GroundTruthFlows>(
        GroundTruthFlows{ground_truth->f10, ground_truth->f01});
  }
  return out;
}

std::pair<FlowField, double> estimate_classical(const Image& a, const Image& b,
                                                const std::optional<FlowField>& init,
                                                const ClassicalParams& params) {
  if (!a.same_shape(b)) fail(ErrorKind::InvalidInput, "estimate_classical: image shapes differ");
  if (params.window < 1 || params.iterations < 0) {
    fail(ErrorKind::InvalidConfiguration, "estimate_classical: bad window or iteration count");
  }
  const Image ga = a.to_gray();
  const Image gb = b.to_gray();
  const int w = a.width();
  const int h = a.height();

  if (init) {
    if (!init->same_size(w, h)) {
      fail(ErrorKind::InvalidInput, "estimate_classical: initial flow size differs");
    }
    FlowField flow = *init;
    const double r = refine_level(to_buffer(ga), to_buffer(gb), w, h, flow, params);
    return {std::move(flow), r};
  }

  const int levels = params.levels > 0 ? params.levels : auto_levels(w, h);
  std::vector<Image> pa{ga};
  std::vector<Image> pb{gb};
  for (int l = 1; l < levels; ++l) {
    if (pa.back().width() < 2 || pa.back().height() < 2) break;
    pa.push_back(area_downsample(pa.back()));
    pb.push_back(area_downsample(pb.back()));
  }
  FlowField flow(pa.back().width(), pa.back().height());
  double r = 0.0;
  for (int l = static_cast<int>(pa.size()) - 1; l >= 0; --l) {
    const Image& la = pa[static_cast<std::size_t>(l)];
    const Image& lb = pb[static_cast<std::size_t>(l)];
    if (!flow.same_size(la.width(), la.height())) {
      flow = resample_flow(flow, la.width(), la.height(), 2.0);
    }
    r = refine_level(to_buffer(la), to_buffer(lb), la.width(), la.height(), flow, params);
  }
  return {std::move(flow), r};
}

BidirectionalFlow estimate_bidirectional(const Image& i0, const Image& i1,
                                         const std::optional<FlowField>& init01,
                                         const std::optional<FlowField>& init10,
                                         const EstimatorSpec& spec) {
  if (!i0.same_shape(i1)) fail(ErrorKind::InvalidInput, "estimate_bidirectional: image shapes differ");
  const int w = i0.width();
  const int h = i0.height();
  if ((init01 && !init01->same_size(w, h)) || (init10 && !init10->same_size(w, h))) {
    fail(ErrorKind::InvalidInput, "estimate_bidirectional: initial flow size differs");
  }

  if (spec.kind == EstimatorKind::GroundTruth) {
    if (!spec.ground_truth) {
      fail(ErrorKind::InvalidConfiguration, "ground-truth estimator requires a scene or flow files");
    }
    return {downsample_to(spec.ground_truth->f01, w, h),
            downsample_to(spec.ground_truth->f10, w, h), 0.0, 0.0};
  }

  auto [f01, r01] = estimate_classical(i0, i1, init01, spec.params);
  auto [f10, r10] = estimate_classical(i1, i0, init10, spec.params);
  return {std::move(f01), std::move(f10), r01, r10};
}

}  // namespace univip
