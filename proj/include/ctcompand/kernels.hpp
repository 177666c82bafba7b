#pragma once

// Data-parallel inner loops of the pipeline. Every variant evaluates the same
// operations in the same order, so scalar and SIMD results are bit-identical.

#include <cstddef>

namespace ctc::kernels {

struct KernelTable {
  const char* name;

  // out[j] = sum_k taps[k] * rows[k][j], accumulated for k = 0, 1, ...
  void (*fir_rows)(const double* const* rows, const double* taps, std::size_t ntaps,
                   double* out, std::size_t n);

  // out[j] = sum_k taps[k] * in[j * stride + k]; stride is 1 or 2.
  void (*fir_strided)(const double* in, std::size_t stride, const double* taps,
                      std::size_t ntaps, double* out, std::size_t n);

  // out = num / max(den, floor)
  void (*divide_floor)(const double* num, const double* den, double floor, double* out,
                       std::size_t n);

  void (*multiply)(const double* a, const double* b, double* out, std::size_t n);

  // out = |a - b|
  void (*abs_diff)(const double* a, const double* b, double* out, std::size_t n);

  // out = w * a + (1 - w) * b
  void (*blend)(double w, const double* a, const double* b, double* out, std::size_t n);

  // out = clamp(u + (w * g) * scale, lo, hi)
  void (*add_scaled_clamp)(const double* u, const double* w, const double* g, double scale,
                           double lo, double hi, double* out, std::size_t n);

  // out = clamp((in - offset) / span, lo, hi)
  void (*affine_clamp)(const double* in, double offset, double span, double lo, double hi,
                       double* out, std::size_t n);

  double (*max_value)(const double* in, std::size_t n);
  double (*max_abs)(const double* in, std::size_t n);
};

const KernelTable& scalar();

/// AVX2 table, or nullptr when not compiled in or unsupported by this CPU.
const KernelTable* avx2();

/// Best table for this CPU. CT_COMPAND_SIMD=scalar forces the reference kernels.
const KernelTable& active();

}  // namespace ctc::kernels
