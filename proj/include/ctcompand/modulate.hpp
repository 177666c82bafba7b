#pragma once

#include <cstddef>

#include "ctcompand/core.hpp"

namespace ctc {

/// exp(-B_m / max(B_m)) at the teeth level m, then carried to every level
/// 0..N by repeated expand (finer) or reduce (coarser).
/// Throws DegenerateInputError when max(B_m) <= 0.
Pyramid soft_threshold_field(const Pyramid& gaussian, const CompandParams& p, int teeth_level);

/// A (1 - ST) lambda_bone[n] + B ST lambda_soft[n]
Grid delta_field(const Grid& soft_threshold, std::size_t n, const CompandParams& p);

/// delta * (max(S) - S). Zero wherever S reaches its level maximum.
Grid gamma_field(const Grid& texture, const Grid& delta);

/// Naka-Rushton response r_max / (alpha + (beta / C)^gamma) + b.
/// Every curve passes through (1, 1) under the beta = 1 and
/// r_max = (alpha + 1)(1 - b) constraint.
double naka_rushton(double contrast, double gamma, const CompandParams& p);
Grid naka_rushton(const Grid& contrast, const Grid& gamma, const CompandParams& p);

/// Modulated contrast pyramid. CT mode separates bone and soft-tissue channels
/// through the soft threshold; natural mode uses the single constant
/// delta_n = A lambda_bone[n].
Pyramid modulate_contrast_pyramid(const Pyramid& contrasts, const Pyramid& texture,
                                  const Pyramid& gaussian, const CompandParams& p,
                                  int teeth_level);

}  // namespace ctc
