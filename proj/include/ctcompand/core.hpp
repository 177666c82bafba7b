#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctcompand/errors.hpp"
#include "ctcompand/grid.hpp"

namespace ctc {

inline constexpr std::size_t kMinSliceSide = 16;

struct PixelSpacing {
  double row_mm = 1.0;
  double col_mm = 1.0;
};

/// Calibrated CT slice in Hounsfield units.
struct HuSlice {
  Grid values;
  PixelSpacing spacing;
  std::string source_id;

  std::size_t width() const noexcept { return values.width(); }
  std::size_t height() const noexcept { return values.height(); }
};

/// Throws ParamError unless the slice is at least 16x16 with finite values.
void check_slice(const HuSlice& slice);

/// Ordered grids, level 0 finest. Each level is ceil-half the size of the previous one.
class Pyramid {
 public:
  Pyramid() = default;
  explicit Pyramid(std::vector<Grid> levels) : levels_(std::move(levels)) {}

  std::size_t size() const noexcept { return levels_.size(); }
  bool empty() const noexcept { return levels_.empty(); }
  Grid& operator[](std::size_t n) { return levels_.at(n); }
  const Grid& operator[](std::size_t n) const { return levels_.at(n); }
  const std::vector<Grid>& levels() const noexcept { return levels_; }
  void push_back(Grid level) { levels_.push_back(std::move(level)); }

 private:
  std::vector<Grid> levels_;
};

enum class Mode { ct, natural };

const char* to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& text);

/// Every free constant of the companding pipeline.
struct CompandParams {
  // Ingestion and normalization.
  double hu_min_clip = -1024.0;
  double hu_max_clip = 3071.0;
  double soft_lo = -200.0;
  double soft_hi = 300.0;

  // Soft-tissue enhancement. V is in normalized units; the default is +300 HU.
  double V = (300.0 + 1024.0) / (3071.0 + 1024.0);
  double C1 = 0.1;
  double C2 = 0.05;
  int srnd_radius = 8;

  // Pyramid.
  int N = 5;
  double kernel_a = 0.4;

  // Texture contrast.
  double mu = 0.7;
  std::vector<double> w_n = std::vector<double>(6, 0.5);

  // Channel separation. An empty teeth level means "derive from pixel spacing".
  // On the normalized scale max(S) - S averages about 0.2, so unit amplitudes
  // would keep gamma below 1 and flatten every level; 40 lifts typical gamma
  // to a few units.
  std::optional<int> m;
  double A = 40.0;
  double B = 40.0;
  std::vector<double> lambda_bone = {1.2, 1.2, 1.0, 0.8, 0.6, 0.5};
  std::vector<double> lambda_soft = {0.6, 0.7, 0.8, 0.8, 0.7, 0.6};

  // Naka-Rushton response.
  double alpha = 1.0;
  double beta = 1.0;
  double b = 0.0;
  double r_max = 2.0;

  double epsilon = 1e-3;
  Mode mode = Mode::ct;

  // Output quantization.
  double lo_pct = 0.5;
  double hi_pct = 99.5;
  int bit_depth = 8;

  friend bool operator==(const CompandParams&, const CompandParams&) = default;
};

/// Every violated invariant, one message each. Empty means valid.
std::vector<std::string> validate_params(const CompandParams& p);

/// Throws ParamError listing all violations.
void require_valid(const CompandParams& p);

/// Teeth level: explicit m if set, else round(log2(10 mm / spacing)) clamped to [0, N].
int teeth_level(const CompandParams& p, const PixelSpacing& spacing);

/// Affine map between input units and the unit interval, floored at epsilon.
struct UnitMap {
  double lo = 0.0;
  double hi = 1.0;
  double epsilon = 1e-3;

  double to_unit(double value) const noexcept;
  double from_unit(double unit) const noexcept { return lo + unit * (hi - lo); }
};

/// CT mode maps [hu_min_clip, hu_max_clip]; natural mode maps the slice's own
/// [min, max] since its values are not Hounsfield units.
UnitMap unit_map_for(const HuSlice& slice, const CompandParams& p);

Grid normalize_to_unit(const HuSlice& slice, const CompandParams& p);
Grid normalize_to_unit(const Grid& values, const UnitMap& map);

/// 2D grid of display values.
struct LdrImage {
  std::size_t width = 0;
  std::size_t height = 0;
  int bit_depth = 8;
  std::vector<std::uint16_t> values;

  std::uint16_t operator()(std::size_t x, std::size_t y) const { return values[y * width + x]; }
  std::uint32_t max_value() const noexcept { return (1u << bit_depth) - 1u; }

  friend bool operator==(const LdrImage&, const LdrImage&) = default;
};

struct WindowSpec {
  double level = 0.0;
  double width = 1.0;
  std::string name;
};

double grid_min(const Grid& g);
double grid_max(const Grid& g);

}  // namespace ctc
