#include "univip/image.hpp"

#include <algorithm>
#include <cmath>

namespace univip {

std::size_t HoleMask::count() const {
  return static_cast<std::size_t>(
      std::count_if(values().begin(), values().end(), [](std::uint8_t v) { return v != 0; }));
}

Image::Image(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  if (width <= 0 || height <= 0) {
    fail(ErrorKind::InvalidInput, "image dimensions must be positive");
  }
  if (channels != 1 && channels != 3) {
    fail(ErrorKind::InvalidInput, "image must have 1 or 3 channels");
  }
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

void Image::clamp() {
  for (double& v : data_) {
    v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
  }
}

Image Image::to_gray() const {
  if (channels_ == 1) return *this;
  Image gray(width_, height_, 1);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      gray.at(x, y) = 0.299 * at(x, y, 0) + 0.587 * at(x, y, 1) + 0.114 * at(x, y, 2);
    }
  }
  return gray;
}

FlowField::FlowField(int width, int height, float dx, float dy)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    fail(ErrorKind::InvalidInput, "flow dimensions must be positive");
  }
  data_.resize(static_cast<std::size_t>(width) * height * 2);
  for (std::size_t i = 0; i < data_.size(); i += 2) {
    data_[i] = dx;
    data_[i + 1] = dy;
  }
}

bool FlowField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

}  // namespace univip
