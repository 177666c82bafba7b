// Compiled with -mavx2. Only reached through avx2() after a CPU check.
//
// Operation order mirrors kernels_scalar.cpp exactly (multiply then add, no
// FMA, same tap order), and min/max operands are arranged so ties resolve the
// same way as std::min/std::max. Tails fall back to the scalar formula.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "ctcompand/kernels.hpp"

namespace ctc::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// std::min(std::max(x, lo), hi)
inline __m256d clamp_pd(__m256d x, __m256d lo, __m256d hi) {
  return _mm256_min_pd(hi, _mm256_max_pd(lo, x));
}

// Elements p[0], p[2], p[4], p[6].
inline __m256d load_even(const double* p) {
  const __m256d lo = _mm256_loadu_pd(p);
  const __m256d hi = _mm256_loadu_pd(p + 4);
  return _mm256_permute4x64_pd(_mm256_unpacklo_pd(lo, hi), 0xD8);
}

void fir_rows(const double* const* rows, const double* taps, std::size_t ntaps, double* out,
              std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(taps[0]), _mm256_loadu_pd(rows[0] + j));
    for (std::size_t k = 1; k < ntaps; ++k) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(taps[k]), _mm256_loadu_pd(rows[k] + j)));
    }
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < n; ++j) {
    double acc = taps[0] * rows[0][j];
    for (std::size_t k = 1; k < ntaps; ++k) acc = acc + taps[k] * rows[k][j];
    out[j] = acc;
  }
}

void fir_strided(const double* in, std::size_t stride, const double* taps, std::size_t ntaps,
                 double* out, std::size_t n) {
  std::size_t j = 0;
  if (stride == 1) {
    for (; j + 4 <= n; j += 4) {
      const double* p = in + j;
      __m256d acc = _mm256_mul_pd(_mm256_set1_pd(taps[0]), _mm256_loadu_pd(p));
      for (std::size_t k = 1; k < ntaps; ++k) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(taps[k]), _mm256_loadu_pd(p + k)));
      }
      _mm256_storeu_pd(out + j, acc);
    }
  } else if (stride == 2) {
    // load_even reads one element past the last even lane, so stay one output
    // short of the end to remain inside the scalar footprint.
    for (; j + 5 <= n; j += 4) {
      const double* p = in + 2 * j;
      __m256d acc = _mm256_mul_pd(_mm256_set1_pd(taps[0]), load_even(p));
      for (std::size_t k = 1; k < ntaps; ++k) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(taps[k]), load_even(p + k)));
      }
      _mm256_storeu_pd(out + j, acc);
    }
  }
  for (; j < n; ++j) {
    const double* p = in + j * stride;
    double acc = taps[0] * p[0];
    for (std::size_t k = 1; k < ntaps; ++k) acc = acc + taps[k] * p[k];
    out[j] = acc;
  }
}

void divide_floor(const double* num, const double* den, double floor, double* out,
                  std::size_t n) {
  const __m256d f = _mm256_set1_pd(floor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // std::max(den, floor): ties keep den
    const __m256d d = _mm256_max_pd(f, _mm256_loadu_pd(den + i));
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(num + i), d));
  }
  for (; i < n; ++i) out[i] = num[i] / std::max(den[i], floor);
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void abs_diff(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i,
                     abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i))));
  }
  for (; i < n; ++i) out[i] = std::fabs(a[i] - b[i]);
}

void blend(double w, const double* a, const double* b, double* out, std::size_t n) {
  const double wc = 1.0 - w;
  const __m256d vw = _mm256_set1_pd(w);
  const __m256d vc = _mm256_set1_pd(wc);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_add_pd(_mm256_mul_pd(vw, _mm256_loadu_pd(a + i)),
                                    _mm256_mul_pd(vc, _mm256_loadu_pd(b + i)));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = w * a[i] + wc * b[i];
}

void add_scaled_clamp(const double* u, const double* w, const double* g, double scale,
                      double lo, double hi, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wg = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(g + i));
    const __m256d r = _mm256_add_pd(_mm256_loadu_pd(u + i), _mm256_mul_pd(wg, vs));
    _mm256_storeu_pd(out + i, clamp_pd(r, vlo, vhi));
  }
  for (; i < n; ++i) out[i] = std::min(std::max(u[i] + (w[i] * g[i]) * scale, lo), hi);
}

void affine_clamp(const double* in, double offset, double span, double lo, double hi,
                  double* out, std::size_t n) {
  const __m256d vo = _mm256_set1_pd(offset);
  const __m256d vs = _mm256_set1_pd(span);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_div_pd(_mm256_sub_pd(_mm256_loadu_pd(in + i), vo), vs);
    _mm256_storeu_pd(out + i, clamp_pd(r, vlo, vhi));
  }
  for (; i < n; ++i) out[i] = std::min(std::max((in[i] - offset) / span, lo), hi);
}

double horizontal_max(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

double max_value(const double* in, std::size_t n) {
  __m256d m = _mm256_set1_pd(-HUGE_VAL);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_loadu_pd(in + i));
  double r = horizontal_max(m);
  for (; i < n; ++i) r = std::max(r, in[i]);
  return r;
}

double max_abs(const double* in, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(in + i)));
  double r = horizontal_max(m);
  for (; i < n; ++i) r = std::max(r, std::fabs(in[i]));
  return r;
}

constexpr KernelTable kAvx2{
    "avx2",     fir_rows,         fir_strided,  divide_floor, multiply, abs_diff,
    blend,      add_scaled_clamp, affine_clamp, max_value,    max_abs,
};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace ctc::kernels
