#pragma once

#include "ctcompand/core.hpp"

namespace ctc {

/// Piecewise-parabolic enhancement weight over normalized intensity.
/// Positive (peak C1) between V and 1, negative (trough -C2/3 at V/2) below V,
/// zero at 0, V and 1.
double enhancement_weight(double u, double V, double C1, double C2);
Grid weight_field(const Grid& u, const CompandParams& p);

/// Separable Gaussian blur, sigma = radius / 2, truncated at radius, mirrored borders.
Grid gaussian_blur(const Grid& u, int radius);

/// Center-minus-surround deviation: u - gaussian_blur(u, srnd_radius).
Grid surround_signal(const Grid& u, const CompandParams& p);

/// Widen the soft-tissue band. Identity for flat input or C1 = C2 = 0.
/// Output stays in [epsilon, 1]. Skipped by compand in natural mode.
Grid soft_tissue_enhance(const Grid& u, const CompandParams& p);

}  // namespace ctc
