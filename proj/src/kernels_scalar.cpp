#include <algorithm>
#include <cmath>

#include "ctcompand/kernels.hpp"

namespace ctc::kernels {
namespace {

void fir_rows(const double* const* rows, const double* taps, std::size_t ntaps, double* out,
              std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double acc = taps[0] * rows[0][j];
    for (std::size_t k = 1; k < ntaps; ++k) acc = acc + taps[k] * rows[k][j];
    out[j] = acc;
  }
}

void fir_strided(const double* in, std::size_t stride, const double* taps, std::size_t ntaps,
                 double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double* p = in + j * stride;
    double acc = taps[0] * p[0];
    for (std::size_t k = 1; k < ntaps; ++k) acc = acc + taps[k] * p[k];
    out[j] = acc;
  }
}

void divide_floor(const double* num, const double* den, double floor, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = num[i] / std::max(den[i], floor);
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void abs_diff(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i] - b[i]);
}

void blend(double w, const double* a, const double* b, double* out, std::size_t n) {
  const double wc = 1.0 - w;
  for (std::size_t i = 0; i < n; ++i) out[i] = w * a[i] + wc * b[i];
}

void add_scaled_clamp(const double* u, const double* w, const double* g, double scale,
                      double lo, double hi, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::min(std::max(u[i] + (w[i] * g[i]) * scale, lo), hi);
  }
}

void affine_clamp(const double* in, double offset, double span, double lo, double hi,
                  double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::min(std::max((in[i] - offset) / span, lo), hi);
  }
}

double max_value(const double* in, std::size_t n) {
  double m = -HUGE_VAL;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, in[i]);
  return m;
}

double max_abs(const double* in, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(in[i]));
  return m;
}

constexpr KernelTable kScalar{
    "scalar",   fir_rows,         fir_strided,  divide_floor, multiply, abs_diff,
    blend,      add_scaled_clamp, affine_clamp, max_value,    max_abs,
};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace ctc::kernels
