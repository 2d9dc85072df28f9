// Brute-force reference implementations for the test suites. Each one is a
// direct transcription of the defining formula, written without sharing code
// or loop structure with the library.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "univip/fusion.hpp"
#include "univip/image.hpp"

namespace oracle {

using univip::FlowField;
using univip::Image;

struct Splat {
  Image image;
  std::vector<double> weight;  // row-major, one per destination pixel
};

/// Gather form of bilinear splatting: every destination pixel visits every
/// source pixel and takes the tent weight of the displaced source position.
inline Splat splat(const Image& src, const FlowField& flow, double eps = 1e-4) {
  const int w = src.width(), h = src.height(), ch = src.channels();
  Splat out{Image(w, h, ch), std::vector<double>(static_cast<std::size_t>(w) * h, 0.0)};
  for (int Y = 0; Y < h; ++Y) {
    for (int X = 0; X < w; ++X) {
      double wsum = 0.0;
      std::vector<double> acc(ch, 0.0);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const double tx = x + static_cast<double>(flow.dx(x, y));
          const double ty = y + static_cast<double>(flow.dy(x, y));
          const double kx = 1.0 - std::abs(tx - X);
          const double ky = 1.0 - std::abs(ty - Y);
          if (kx <= 0.0 || ky <= 0.0) continue;
          wsum += kx * ky;
          for (int c = 0; c < ch; ++c) acc[c] += kx * ky * src.at(x, y, c);
        }
      }
      out.weight[static_cast<std::size_t>(Y) * w + X] = wsum;
      for (int c = 0; c < ch; ++c) {
        double v = wsum >= eps ? acc[c] / wsum : 0.0;
        out.image.at(X, Y, c) = std::min(1.0, std::max(0.0, v));
      }
    }
  }
  return out;
}

/// Edge-clamped bilinear flow resampling: destination x reads source x / factor.
inline FlowField resample(const FlowField& f, int ow, int oh, double factor) {
  FlowField out(ow, oh);
  auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      const double sx = std::min<double>(std::max(0.0, x / factor), f.width() - 1);
      const double sy = std::min<double>(std::max(0.0, y / factor), f.height() - 1);
      const int x0 = static_cast<int>(sx), y0 = static_cast<int>(sy);
      const int x1 = clampi(x0 + 1, 0, f.width() - 1), y1 = clampi(y0 + 1, 0, f.height() - 1);
      const double ax = sx - x0, ay = sy - y0;
      auto lerp2 = [&](auto get) {
        return (1 - ay) * ((1 - ax) * get(x0, y0) + ax * get(x1, y0)) +
               ay * ((1 - ax) * get(x0, y1) + ax * get(x1, y1));
      };
      out.dx(x, y) = static_cast<float>(factor * lerp2([&](int a, int b) { return double(f.dx(a, b)); }));
      out.dy(x, y) = static_cast<float>(factor * lerp2([&](int a, int b) { return double(f.dy(a, b)); }));
    }
  }
  return out;
}

inline double epe(const FlowField& a, const FlowField& b) {
  long double s = 0.0L;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const long double ex = static_cast<long double>(a.dx(x, y)) - b.dx(x, y);
      const long double ey = static_cast<long double>(a.dy(x, y)) - b.dy(x, y);
      s += std::sqrt(ex * ex + ey * ey);
    }
  }
  return static_cast<double>(s / (static_cast<long double>(a.width()) * a.height()));
}

inline double psnr(const Image& a, const Image& b) {
  long double s = 0.0L;
  std::size_t n = 0;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      for (int c = 0; c < a.channels(); ++c, ++n) {
        const long double d = static_cast<long double>(a.at(x, y, c)) - b.at(x, y, c);
        s += d * d;
      }
  if (s == 0.0L) return 99.0;
  return static_cast<double>(std::min(99.0L, 10.0L * std::log10(static_cast<long double>(n) / s)));
}

inline double charbonnier(const Image& a, const Image& b, double eps = 1e-6, double alpha = 0.5) {
  long double s = 0.0L;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      for (int c = 0; c < a.channels(); ++c) {
        const long double d = static_cast<long double>(a.at(x, y, c)) - b.at(x, y, c);
        s += std::pow(d * d + static_cast<long double>(eps) * eps, static_cast<long double>(alpha));
      }
  return static_cast<double>(s / (static_cast<long double>(a.width()) * a.height() * a.channels()));
}

inline double luma255(const Image& img, int x, int y) {
  if (img.channels() == 1) return 255.0 * img.at(x, y);
  return 255.0 * (0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2));
}

/// Soft census: per interior pixel, per neighbour, compare normalized
/// differences of both images with the soft Hamming term.
inline double census(const Image& a, const Image& b, int patch = 7, double soft = 0.81) {
  const int r = patch / 2;
  long double total = 0.0L;
  long double count = 0.0L;
  for (int y = r; y + r < a.height(); ++y) {
    for (int x = r; x + r < a.width(); ++x) {
      for (int v = y - r; v <= y + r; ++v) {
        for (int u = x - r; u <= x + r; ++u) {
          if (u == x && v == y) continue;
          const double da = luma255(a, u, v) - luma255(a, x, y);
          const double db = luma255(b, u, v) - luma255(b, x, y);
          const double ta = da / std::sqrt(da * da + soft);
          const double tb = db / std::sqrt(db * db + soft);
          const double delta2 = (ta - tb) * (ta - tb);
          total += delta2 / (0.1 + delta2);
          count += 1.0L;
        }
      }
    }
  }
  return static_cast<double>(total / count);
}

/// SSIM from explicit 2-D Gaussian-weighted window statistics.
inline double ssim(const Image& a, const Image& b) {
  constexpr int win = 11;
  constexpr double sigma = 1.5;
  double g[win][win];
  double gs = 0.0;
  for (int j = 0; j < win; ++j)
    for (int i = 0; i < win; ++i) {
      g[j][i] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * sigma * sigma));
      gs += g[j][i];
    }
  const double c1 = 0.0001, c2 = 0.0009;
  double per_channel = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    double sum = 0.0;
    int n = 0;
    for (int y = 0; y + win <= a.height(); ++y) {
      for (int x = 0; x + win <= a.width(); ++x) {
        double mx = 0, my = 0;
        for (int j = 0; j < win; ++j)
          for (int i = 0; i < win; ++i) {
            mx += g[j][i] / gs * a.at(x + i, y + j, c);
            my += g[j][i] / gs * b.at(x + i, y + j, c);
          }
        double vx = 0, vy = 0, cxy = 0;
        for (int j = 0; j < win; ++j)
          for (int i = 0; i < win; ++i) {
            const double p = a.at(x + i, y + j, c) - mx;
            const double q = b.at(x + i, y + j, c) - my;
            vx += g[j][i] / gs * p * p;
            vy += g[j][i] / gs * q * q;
            cxy += g[j][i] / gs * p * q;
          }
        sum += (2 * mx * my + c1) * (2 * cxy + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
        ++n;
      }
    }
    per_channel += sum / n;
  }
  return per_channel / a.channels();
}

/// Fusion of one pixel: normalized weighted blend plus residual, clamped.
inline double fuse_pixel(double i0, double i1, double m0, double m1, double w0, double w1,
                         double res) {
  const double v = (w0 * m0 * i0 + w1 * m1 * i1) / (w0 * m0 + w1 * m1) + res;
  return std::min(1.0, std::max(0.0, v));
}

inline Image random_image(std::mt19937_64& rng, int w, int h, int ch) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image img(w, h, ch);
  for (double& v : img.values()) v = u(rng);
  return img;
}

inline FlowField random_flow(std::mt19937_64& rng, int w, int h, double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  FlowField f(w, h);
  for (float& v : f.values()) v = static_cast<float>(u(rng));
  return f;
}

}  // namespace oracle
