#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ctc {

/// Dense row-major 2D grid of doubles. Every pipeline stage works on these.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), data_(width * height, fill) {}
  Grid(std::size_t width, std::size_t height, std::vector<double> values)
      : width_(width), height_(height), data_(std::move(values)) {
    if (data_.size() != width_ * height_) {
      throw std::invalid_argument("Grid: value count does not match dimensions");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }
  double operator()(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }

  std::span<double> row(std::size_t y) noexcept { return {data_.data() + y * width_, width_}; }
  std::span<const double> row(std::size_t y) const noexcept {
    return {data_.data() + y * width_, width_};
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  bool same_shape(const Grid& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

/// Reflect an out-of-range index back into [0, n) without repeating the edge
/// sample (..., 2, 1, | 0, 1, ..., n-1, | n-2, ...). Folds repeatedly, so any
/// offset is valid. Requires n >= 1.
inline std::ptrdiff_t mirror_index(std::ptrdiff_t i, std::ptrdiff_t n) noexcept {
  if (n == 1) return 0;
  const std::ptrdiff_t period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace ctc
