#include "ctcompand/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctcompand/kernels.hpp"

namespace ctc {

void check_slice(const HuSlice& slice) {
  if (slice.width() < kMinSliceSide || slice.height() < kMinSliceSide) {
    std::ostringstream msg;
    msg << "slice must be at least " << kMinSliceSide << "x" << kMinSliceSide << ", got "
        << slice.width() << "x" << slice.height();
    throw ParamError(msg.str());
  }
  for (double v : slice.values.values()) {
    if (!std::isfinite(v)) throw ParamError("slice contains non-finite values");
  }
}

const char* to_string(Mode mode) { return mode == Mode::ct ? "ct" : "natural"; }

std::optional<Mode> parse_mode(const std::string& text) {
  if (text == "ct") return Mode::ct;
  if (text == "natural") return Mode::natural;
  return std::nullopt;
}

std::vector<std::string> validate_params(const CompandParams& p) {
  std::vector<std::string> errors;
  auto fail = [&errors](std::string msg) { errors.push_back(std::move(msg)); };

  if (!(p.hu_max_clip > p.hu_min_clip)) fail("hu_max_clip must exceed hu_min_clip");
  if (!(p.soft_hi > p.soft_lo)) fail("soft_hi must exceed soft_lo");
  if (!(p.V > 0.0 && p.V < 1.0)) fail("V must lie in (0, 1)");
  if (!(p.C1 >= 0.0) || !(p.C2 >= 0.0)) fail("C1 and C2 must be >= 0");
  if (p.srnd_radius < 1) fail("srnd_radius must be >= 1");
  if (p.N < 0) fail("N must be >= 0");
  if (!(p.kernel_a > 0.0 && p.kernel_a < 1.0)) fail("kernel_a must lie in (0, 1)");
  if (!(p.mu > 0.0)) fail("mu must be > 0");

  const auto levels = static_cast<std::size_t>(std::max(p.N, 0)) + 1;
  if (p.w_n.size() != levels) {
    fail("w_n must have N+1 = " + std::to_string(levels) + " entries");
  }
  if (std::any_of(p.w_n.begin(), p.w_n.end(), [](double w) { return !(w >= 0.0 && w <= 1.0); })) {
    fail("w_n entries must lie in [0, 1]");
  }
  if (p.m) {
    if (*p.m < 0) fail("teeth level must be >= 0");
    if (*p.m > p.N) fail("teeth level exceeds pyramid depth");
  }
  if (!(p.A >= 0.0) || !(p.B >= 0.0)) fail("A and B must be >= 0");
  auto check_lambda = [&](const std::vector<double>& lambda, const char* name) {
    if (lambda.size() != levels) {
      fail(std::string(name) + " must have N+1 = " + std::to_string(levels) + " entries");
    }
    if (std::any_of(lambda.begin(), lambda.end(), [](double v) { return !(v >= 0.0); })) {
      fail(std::string(name) + " entries must be >= 0");
    }
  };
  check_lambda(p.lambda_bone, "lambda_bone");
  check_lambda(p.lambda_soft, "lambda_soft");

  if (p.beta != 1.0) fail("beta must be 1");
  if (!(p.alpha > 0.0)) fail("alpha must be > 0");
  if (!(p.b < 1.0)) fail("b must be < 1");
  const double expected_rmax = (p.alpha + 1.0) * (1.0 - p.b);
  if (std::fabs(p.r_max - expected_rmax) > 1e-12 * std::max(1.0, std::fabs(expected_rmax))) {
    fail("r_max must equal (alpha + 1)(1 - b)");
  }
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
  if (!(p.lo_pct >= 0.0 && p.lo_pct < p.hi_pct && p.hi_pct <= 100.0)) {
    fail("percentiles must satisfy 0 <= lo_pct < hi_pct <= 100");
  }
  if (p.bit_depth != 8 && p.bit_depth != 16) fail("bit_depth must be 8 or 16");
  return errors;
}

void require_valid(const CompandParams& p) {
  const auto errors = validate_params(p);
  if (errors.empty()) return;
  std::string msg = "invalid parameters:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ParamError(msg);
}

int teeth_level(const CompandParams& p, const PixelSpacing& spacing) {
  if (p.m) return *p.m;
  const double mm = 0.5 * (spacing.row_mm + spacing.col_mm);
  if (!(mm > 0.0)) return std::clamp(0, 0, p.N);
  const auto level = static_cast<int>(std::lround(std::log2(10.0 / mm)));
  return std::clamp(level, 0, p.N);
}

double UnitMap::to_unit(double value) const noexcept {
  return std::max((value - lo) / (hi - lo), epsilon);
}

UnitMap unit_map_for(const HuSlice& slice, const CompandParams& p) {
  if (p.mode == Mode::ct) return {p.hu_min_clip, p.hu_max_clip, p.epsilon};
  const double lo = grid_min(slice.values);
  double hi = grid_max(slice.values);
  if (!(hi > lo)) hi = lo + 1.0;
  return {lo, hi, p.epsilon};
}

Grid normalize_to_unit(const Grid& values, const UnitMap& map) {
  if (!(map.hi > map.lo)) throw ParamError("degenerate normalization range");
  Grid out(values.width(), values.height());
  kernels::active().affine_clamp(values.data(), map.lo, map.hi - map.lo, map.epsilon,
                                 HUGE_VAL, out.data(), values.size());
  return out;
}

Grid normalize_to_unit(const HuSlice& slice, const CompandParams& p) {
  if (!(p.hu_max_clip > p.hu_min_clip)) {
    throw ParamError("degenerate clip range: hu_max_clip must exceed hu_min_clip");
  }
  return normalize_to_unit(slice.values, unit_map_for(slice, p));
}

double grid_min(const Grid& g) {
  if (g.empty()) return 0.0;
  return *std::min_element(g.values().begin(), g.values().end());
}

double grid_max(const Grid& g) {
  if (g.empty()) return 0.0;
  return kernels::active().max_value(g.data(), g.size());
}

}  // namespace ctc
