#pragma once

#include "ctcompand/core.hpp"

namespace ctc {

/// Texture-contrast pyramid, levels 0..N from Gaussian levels 0..N+1.
///
/// The coarsest level is the raw band-pass magnitude |B_N - expand(B_{N+1})|^mu.
/// Each finer level blends its own band-pass magnitude with the expanded
/// coarser texture level, weighted by w_n:
///
///   S_n = w_n |B_n - expand(B_{n+1})|^mu + (1 - w_n) expand(S_{n+1})
///
/// so S_n accumulates every band at or coarser than n. All entries are >= 0.
Pyramid build_sorf_pyramid(const Pyramid& gaussian, const CompandParams& p);

}  // namespace ctc
