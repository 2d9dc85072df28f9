#include "univip/resample.hpp"

#include <algorithm>
#include <cmath>

namespace univip {

Image area_downsample(const Image& img) {
  const int w = half_size(img.width());
  const int h = half_size(img.height());
  Image out(w, h, img.channels());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        double sum = 0.0;
        int n = 0;
        for (int sy = 2 * y; sy < std::min(2 * y + 2, img.height()); ++sy) {
          for (int sx = 2 * x; sx < std::min(2 * x + 2, img.width()); ++sx) {
            sum += img.at(sx, sy, c);
            ++n;
          }
        }
        out.at(x, y, c) = sum / n;
      }
    }
  }
  return out;
}

FlowField area_downsample(const FlowField& flow) {
  const int w = half_size(flow.width());
  const int h = half_size(flow.height());
  FlowField out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double sx_sum = 0.0;
      double sy_sum = 0.0;
      int n = 0;
      for (int sy = 2 * y; sy < std::min(2 * y + 2, flow.height()); ++sy) {
        for (int sx = 2 * x; sx < std::min(2 * x + 2, flow.width()); ++sx) {
          sx_sum += flow.dx(sx, sy);
          sy_sum += flow.dy(sx, sy);
          ++n;
        }
      }
      out.dx(x, y) = static_cast<float>(0.5 * sx_sum / n);
      out.dy(x, y) = static_cast<float>(0.5 * sy_sum / n);
    }
  }
  return out;
}

FlowField downsample_to(const FlowField& flow, int width, int height) {
  FlowField current = flow;
  while (!current.same_size(width, height)) {
    if (current.width() < width || current.height() < height ||
        (current.width() == 1 && current.height() == 1)) {
      fail(ErrorKind::InvalidInput, "downsample_to: target size is not a pyramid level of the flow");
    }
    current = area_downsample(current);
  }
  return current;
}

double sample_bilinear(const Image& img, double x, double y, int c) {
  x = std::clamp(x, 0.0, static_cast<double>(img.width() - 1));
  y = std::clamp(y, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double ax = x - x0;
  const double ay = y - y0;
  const double top = (1 - ax) * img.at(x0, y0, c) + ax * img.at(x1, y0, c);
  const double bot = (1 - ax) * img.at(x0, y1, c) + ax * img.at(x1, y1, c);
  return (1 - ay) * top + ay * bot;
}

}  // namespace univip
