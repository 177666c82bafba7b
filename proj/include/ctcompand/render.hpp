#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "ctcompand/core.hpp"

namespace ctc {

/// Conventional window setting: linear ramp over [level - width/2, level + width/2].
LdrImage window_render(const HuSlice& slice, const WindowSpec& window, int bit_depth = 8);

/// Radiological presets: bone (400, 1800), soft (50, 400), lung (-600, 1500).
const std::array<WindowSpec, 3>& window_presets();
std::optional<WindowSpec> find_preset(std::string_view name);

/// Linearly interpolated percentile of the values, pct in [0, 100].
double percentile(std::span<const double> values, double pct);

struct Quantized {
  LdrImage image;
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate = false;  // all values equal within the percentile window; output is mid-gray
};

/// Robust stretch between the lo_pct and hi_pct percentiles, clamped and rounded.
Quantized quantize_output(const Grid& values, int bit_depth, double lo_pct = 0.5,
                          double hi_pct = 99.5);

struct Roi {
  std::string name;
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t width = 0;
  std::size_t height = 0;
};

/// Non-clinical image statistics over a rectangle.
struct ContrastMetrics {
  double rms_contrast = 0.0;   // std / mean (population std); 0 when the mean is 0
  double entropy = 0.0;        // bits, 256-bin histogram
  double dynamic_range = 0.0;  // max - min, gray levels
  double edge_gradient = 0.0;  // mean central-difference gradient magnitude, gray levels
};

/// Throws ParamError for an empty or out-of-bounds ROI.
ContrastMetrics contrast_metrics(const LdrImage& image, const Roi& roi);

/// Whole-image ROI.
Roi full_roi(const LdrImage& image);

}  // namespace ctc
