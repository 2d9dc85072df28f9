#include "univip/losses_metrics.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace univip {
namespace {

void require_same_shape(const Image& a, const Image& b, const char* op) {
  if (!a.same_shape(b)) fail(ErrorKind::InvalidInput, std::string(op) + ": image shapes differ");
}

std::vector<double> census_descriptor_plane(const Image& gray, int r, double eps) {
  // Layout: for each interior pixel, (2r+1)² - 1 soft comparisons.
  const int w = gray.width();
  const int h = gray.height();
  const int taps = (2 * r + 1) * (2 * r + 1) - 1;
  std::vector<double> out(static_cast<std::size_t>(w - 2 * r) * (h - 2 * r) * taps);
  std::size_t k = 0;
  for (int y = r; y < h - r; ++y) {
    for (int x = r; x < w - r; ++x) {
      const double center = 255.0 * gray.at(x, y);
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const double d = 255.0 * gray.at(x + dx, y + dy) - center;
          out[k++] = d / std::sqrt(d * d + eps);
        }
      }
    }
  }
  return out;
}

std::array<double, kSsimWindow> gaussian_taps() {
  std::array<double, kSsimWindow> g{};
  double sum = 0.0;
  const int r = kSsimWindow / 2;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - r;
    g[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * kSsimSigma * kSsimSigma));
    sum += g[static_cast<std::size_t>(i)];
  }
  for (double& v : g) v /= sum;
  return g;
}

/// Separable "valid" Gaussian filter of one channel.
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h) {
  static const auto g = gaussian_taps();
  const int ow = w - kSsimWindow + 1;
  const int oh = h - kSsimWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) s += g[k] * src[static_cast<std::size_t>(y) * w + x + k];
      rows[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) s += g[k] * rows[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  return out;
}

}  // namespace

void validate(const LossParams& p) {
  if (!(p.charbonnier_epsilon > 0.0)) {
    fail(ErrorKind::InvalidInput, "charbonnier epsilon must be positive");
  }
  if (p.census_patch < 3 || p.census_patch % 2 == 0) {
    fail(ErrorKind::InvalidInput, "census patch must be odd and at least 3");
  }
  if (!(p.census_soft_epsilon > 0.0)) {
    fail(ErrorKind::InvalidInput, "census soft epsilon must be positive");
  }
}

double charbonnier(const Image& pred, const Image& gt, const LossParams& p) {
  require_same_shape(pred, gt, "charbonnier");
  validate(p);
  const double eps2 = p.charbonnier_epsilon * p.charbonnier_epsilon;
  const auto a = pred.values();
  const auto b = gt.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    sum += std::pow(d * d + eps2, p.charbonnier_alpha);
  }
  return sum / static_cast<double>(a.size());
}

double census_loss(const Image& pred, const Image& gt, const LossParams& p) {
  require_same_shape(pred, gt, "census_loss");
  validate(p);
  if (pred.width() < p.census_patch || pred.height() < p.census_patch) {
    fail(ErrorKind::InvalidInput, "census_loss: image smaller than census patch");
  }
  const int r = p.census_patch / 2;
  const auto da = census_descriptor_plane(pred.to_gray(), r, p.census_soft_epsilon);
  const auto db = census_descriptor_plane(gt.to_gray(), r, p.census_soft_epsilon);
  double sum = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d2 = (da[i] - db[i]) * (da[i] - db[i]);
    sum += d2 / (0.1 + d2);
  }
  return sum / static_cast<double>(da.size());
}

double reconstruction_loss(const Image& pred, const Image& gt, const LossParams& p) {
  return charbonnier(pred, gt, p) + census_loss(pred, gt, p);
}

double combined_task_loss(double interp_term, double pred_term) {
  if (!std::isfinite(interp_term) || !std::isfinite(pred_term) || interp_term < 0.0 ||
      pred_term < 0.0) {
    fail(ErrorKind::InvalidInput, "combined_task_loss: terms must be finite and non-negative");
  }
  return interp_term + pred_term;
}

double psnr(const Image& a, const Image& b) {
  require_same_shape(a, b, "psnr");
  const auto va = a.values();
  const auto vb = b.values();
  // Extended accumulation keeps exact decimal differences on exact dB values.
  long double sum = 0.0L;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const long double d = static_cast<long double>(va[i]) - vb[i];
    sum += d * d;
  }
  if (sum == 0.0L) return kPsnrCap;
  const long double db = 10.0L * std::log10(static_cast<long double>(va.size()) / sum);
  return std::min(kPsnrCap, static_cast<double>(db));
}

double psnr(const Image& a, const Image& b, const Plane<std::uint8_t>& include) {
  require_same_shape(a, b, "psnr");
  if (!include.same_size(a.width(), a.height())) {
    fail(ErrorKind::InvalidInput, "psnr: mask dimensions differ");
  }
  long double sum = 0.0L;
  std::size_t n = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!include.at(x, y)) continue;
      for (int c = 0; c < a.channels(); ++c) {
        const long double d = static_cast<long double>(a.at(x, y, c)) - b.at(x, y, c);
        sum += d * d;
        ++n;
      }
    }
  }
  if (n == 0 || sum == 0.0L) return kPsnrCap;
  const long double db = 10.0L * std::log10(static_cast<long double>(n) / sum);
  return std::min(kPsnrCap, static_cast<double>(db));
}

double ssim(const Image& a, const Image& b) {
  require_same_shape(a, b, "ssim");
  if (a.width() < kSsimWindow || a.height() < kSsimWindow) {
    fail(ErrorKind::InvalidInput, "ssim: image smaller than the 11x11 window");
  }
  constexpr double c1 = (0.01 * 1.0) * (0.01 * 1.0);
  constexpr double c2 = (0.03 * 1.0) * (0.03 * 1.0);
  const int w = a.width();
  const int h = a.height();
  const std::size_t n = a.pixel_count();
  double total = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * w + i;
        x[k] = a.at(i, j, c);
        y[k] = b.at(i, j, c);
        xx[k] = x[k] * x[k];
        yy[k] = y[k] * y[k];
        xy[k] = x[k] * y[k];
      }
    }
    const auto mx = filter_valid(x, w, h);
    const auto my = filter_valid(y, w, h);
    const auto sxx = filter_valid(xx, w, h);
    const auto syy = filter_valid(yy, w, h);
    const auto sxy = filter_valid(xy, w, h);
    double sum = 0.0;
    for (std::size_t k = 0; k < mx.size(); ++k) {
      const double vx = sxx[k] - mx[k] * mx[k];
      const double vy = syy[k] - my[k] * my[k];
      const double cov = sxy[k] - mx[k] * my[k];
      sum += ((2 * mx[k] * my[k] + c1) * (2 * cov + c2)) /
             ((mx[k] * mx[k] + my[k] * my[k] + c1) * (vx + vy + c2));
    }
    total += sum / static_cast<double>(mx.size());
  }
  return total / a.channels();
}

}  // namespace univip
