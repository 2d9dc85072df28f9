#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "univip/error.hpp"

namespace univip {

/// Single-valued H×W raster stored row-major.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      fail(ErrorKind::InvalidInput, "plane dimensions must be positive");
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& at(int x, int y) { return data_[index(x, y)]; }
  const T& at(int x, int y) const { return data_[index(x, y)]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  bool same_size(int w, int h) const noexcept { return width_ == w && height_ == h; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Accumulated splat weight per destination pixel.
class CoverageMap : public Plane<double> {
 public:
  using Plane<double>::Plane;
};

/// Per-pixel hole indicator; nonzero means hole.
class HoleMask : public Plane<std::uint8_t> {
 public:
  using Plane<std::uint8_t>::Plane;

  bool hole(int x, int y) const { return at(x, y) != 0; }
  std::size_t count() const;
};

/// H×W×C intensities in [0,1], channels interleaved.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, double fill = 0.0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * height_;
  }
  bool empty() const noexcept { return data_.empty(); }

  double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }
  bool same_size(int w, int h) const noexcept { return width_ == w && height_ == h; }

  /// Clamps every value into [0,1]; NaN becomes 0.
  void clamp();

  /// Luma for 3-channel images (Rec. 601 weights), identity for 1 channel.
  Image to_gray() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Per-pixel displacement (dx, dy) in pixels; x right, y down.
class FlowField {
 public:
  FlowField() = default;
  FlowField(int width, int height, float dx = 0.0f, float dy = 0.0f);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }

  float& dx(int x, int y) { return data_[index(x, y)]; }
  float& dy(int x, int y) { return data_[index(x, y) + 1]; }
  float dx(int x, int y) const { return data_[index(x, y)]; }
  float dy(int x, int y) const { return data_[index(x, y) + 1]; }

  /// Interleaved (dx, dy) pairs, row-major.
  std::span<float> values() noexcept { return data_; }
  std::span<const float> values() const noexcept { return data_; }

  bool same_size(int w, int h) const noexcept { return width_ == w && height_ == h; }
  bool all_finite() const;

  friend bool operator==(const FlowField&, const FlowField&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * 2;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

}  // namespace univip
