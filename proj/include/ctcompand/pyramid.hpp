#pragma once

#include <array>
#include <cstddef>

#include "ctcompand/core.hpp"

namespace ctc {

/// 5-tap Burt-Adelson generating kernel [1/4 - a/2, 1/4, a, 1/4, 1/4 - a/2].
std::array<double, 5> generating_kernel(double a);

/// Blur with the separable generating kernel, then keep every second sample.
/// Output is ceil(w/2) x ceil(h/2). Borders are mirrored. Needs at least 2x2.
Grid reduce(const Grid& level, double kernel_a = 0.4);

/// Zero-interleave upsample to target size, blurred by 4x the generating kernel.
/// Each target side must be 2d or 2d-1 for input side d.
Grid expand(const Grid& level, std::size_t target_width, std::size_t target_height,
            double kernel_a = 0.4);

/// Levels 0..N+1, level 0 = u. Throws ParamError if level N+1 would be smaller than 2x2.
Pyramid build_gaussian_pyramid(const Grid& u, int N, double kernel_a = 0.4);

/// C_n = B_n / max(expand(B_{n+1}), epsilon) for n = 0..N.
Pyramid build_contrast_pyramid(const Pyramid& gaussian, double epsilon, double kernel_a = 0.4);

/// Seeds with the coarsest Gaussian level and applies B_n = C_n * expand(B_{n+1})
/// down to level 0.
Grid collapse(const Pyramid& contrasts, const Pyramid& gaussian, double kernel_a = 0.4);

}  // namespace ctc
