#include "ctcompand/render.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctcompand/kernels.hpp"

namespace ctc {
namespace {

void check_bit_depth(int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw ParamError("bit depth must be 8 or 16");
}

LdrImage quantize_unit(const Grid& unit, int bit_depth) {
  LdrImage img;
  img.width = unit.width();
  img.height = unit.height();
  img.bit_depth = bit_depth;
  img.values.resize(unit.size());
  const double top = static_cast<double>(img.max_value());
  auto src = unit.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    img.values[i] = static_cast<std::uint16_t>(std::lround(src[i] * top));
  }
  return img;
}

}  // namespace

LdrImage window_render(const HuSlice& slice, const WindowSpec& window, int bit_depth) {
  check_bit_depth(bit_depth);
  if (!(window.width > 0.0)) throw ParamError("window width must be > 0");
  Grid unit(slice.width(), slice.height());
  kernels::active().affine_clamp(slice.values.data(), window.level - window.width / 2.0,
                                 window.width, 0.0, 1.0, unit.data(), unit.size());
  return quantize_unit(unit, bit_depth);
}

const std::array<WindowSpec, 3>& window_presets() {
  static const std::array<WindowSpec, 3> presets{{
      {400.0, 1800.0, "bone"},
      {50.0, 400.0, "soft"},
      {-600.0, 1500.0, "lung"},
  }};
  return presets;
}

std::optional<WindowSpec> find_preset(std::string_view name) {
  for (const auto& w : window_presets()) {
    if (w.name == name) return w;
  }
  return std::nullopt;
}

double percentile(std::span<const double> values, double pct) {
  if (values.empty()) throw ParamError("percentile of empty set");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = std::clamp(pct, 0.0, 100.0) / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto below = static_cast<std::size_t>(std::floor(rank));
  const std::size_t above = std::min(below + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(below);
  return sorted[below] + frac * (sorted[above] - sorted[below]);
}

Quantized quantize_output(const Grid& values, int bit_depth, double lo_pct, double hi_pct) {
  check_bit_depth(bit_depth);
  if (!(lo_pct >= 0.0 && lo_pct < hi_pct && hi_pct <= 100.0)) {
    throw ParamError("percentiles must satisfy 0 <= lo < hi <= 100");
  }
  if (values.empty()) throw ParamError("cannot quantize an empty grid");

  Quantized q;
  q.lo = percentile(values.values(), lo_pct);
  q.hi = percentile(values.values(), hi_pct);
  if (!(q.hi > q.lo)) {
    q.degenerate = true;
    q.image.width = values.width();
    q.image.height = values.height();
    q.image.bit_depth = bit_depth;
    q.image.values.assign(values.size(), static_cast<std::uint16_t>(1u << (bit_depth - 1)));
    return q;
  }
  Grid unit(values.width(), values.height());
  kernels::active().affine_clamp(values.data(), q.lo, q.hi - q.lo, 0.0, 1.0, unit.data(),
                                 unit.size());
  q.image = quantize_unit(unit, bit_depth);
  return q;
}

Roi full_roi(const LdrImage& image) { return {"full", 0, 0, image.width, image.height}; }

ContrastMetrics contrast_metrics(const LdrImage& image, const Roi& roi) {
  if (roi.width == 0 || roi.height == 0) throw ParamError("ROI '" + roi.name + "' is empty");
  if (roi.x + roi.width > image.width || roi.y + roi.height > image.height) {
    throw ParamError("ROI '" + roi.name + "' exceeds image bounds");
  }

  const std::size_t count = roi.width * roi.height;
  const int shift = image.bit_depth - 8;
  std::array<std::size_t, 256> histogram{};
  double sum = 0.0;
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  for (std::size_t y = roi.y; y < roi.y + roi.height; ++y) {
    for (std::size_t x = roi.x; x < roi.x + roi.width; ++x) {
      const std::uint16_t v = image(x, y);
      sum += v;
      lo = std::min(lo, static_cast<double>(v));
      hi = std::max(hi, static_cast<double>(v));
      ++histogram[static_cast<std::size_t>(v >> shift)];
    }
  }
  const double mean = sum / static_cast<double>(count);

  double squares = 0.0;
  double gradient = 0.0;
  auto at = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    x = std::clamp<std::ptrdiff_t>(x, 0, static_cast<std::ptrdiff_t>(image.width) - 1);
    y = std::clamp<std::ptrdiff_t>(y, 0, static_cast<std::ptrdiff_t>(image.height) - 1);
    return static_cast<double>(image(static_cast<std::size_t>(x), static_cast<std::size_t>(y)));
  };
  for (std::size_t y = roi.y; y < roi.y + roi.height; ++y) {
    for (std::size_t x = roi.x; x < roi.x + roi.width; ++x) {
      const double d = image(x, y) - mean;
      squares += d * d;
      const auto ix = static_cast<std::ptrdiff_t>(x);
      const auto iy = static_cast<std::ptrdiff_t>(y);
      const double gx = 0.5 * (at(ix + 1, iy) - at(ix - 1, iy));
      const double gy = 0.5 * (at(ix, iy + 1) - at(ix, iy - 1));
      gradient += std::sqrt(gx * gx + gy * gy);
    }
  }

  ContrastMetrics m;
  const double stddev = std::sqrt(squares / static_cast<double>(count));
  m.rms_contrast = mean > 0.0 ? stddev / mean : 0.0;
  for (std::size_t c : histogram) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(count);
    m.entropy -= p * std::log2(p);
  }
  m.dynamic_range = hi - lo;
  m.edge_gradient = gradient / static_cast<double>(count);
  return m;
}

}  // namespace ctc
