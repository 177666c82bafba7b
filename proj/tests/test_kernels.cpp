#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <string>
#include <random>
#include <vector>

#include "ctcompand/kernels.hpp"

namespace k = ctc::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::uint32_t seed, double lo = -2.0, double hi = 2.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// Bitwise comparison so -0.0 vs 0.0 or NaN payload differences show up too.
bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 127, 1000};

}  // namespace

TEST_CASE("active kernel table is one of the compiled variants") {
  const k::KernelTable& active = k::active();
  CHECK((&active == &k::scalar() || &active == k::avx2()));
  const char* forced = std::getenv("CT_COMPAND_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") CHECK(&active == &k::scalar());
}

TEST_CASE("scalar kernels compute the documented formulas") {
  const std::vector<double> a{1.0, -2.0, 3.0, 0.5};
  const std::vector<double> b{2.0, 2.0, -1.0, 0.0};
  std::vector<double> out(4);

  k::scalar().divide_floor(a.data(), b.data(), 0.5, out.data(), 4);
  CHECK(out == std::vector<double>{0.5, -1.0, 6.0, 1.0});

  k::scalar().abs_diff(a.data(), b.data(), out.data(), 4);
  CHECK(out == std::vector<double>{1.0, 4.0, 4.0, 0.5});

  k::scalar().blend(0.25, a.data(), b.data(), out.data(), 4);
  CHECK(out[0] == doctest::Approx(1.75));

  k::scalar().affine_clamp(a.data(), -1.0, 2.0, 0.0, 1.0, out.data(), 4);
  CHECK(out == std::vector<double>{1.0, 0.0, 1.0, 0.75});

  CHECK(k::scalar().max_value(a.data(), 4) == 3.0);
  CHECK(k::scalar().max_abs(a.data(), 4) == 3.0);

  const double taps[3] = {1.0, 10.0, 100.0};
  const std::vector<double> in{1, 2, 3, 4, 5, 6, 7};
  k::scalar().fir_strided(in.data(), 2, taps, 3, out.data(), 3);
  CHECK(out[0] == 321.0);
  CHECK(out[1] == 543.0);
  CHECK(out[2] == 765.0);
}

TEST_CASE("AVX2 kernels are bit-identical to scalar") {
  const k::KernelTable* simd = k::avx2();
  if (simd == nullptr) {
    MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
    return;
  }
  const k::KernelTable& ref = k::scalar();
  std::uint32_t seed = 1;

  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto a = random_values(n, seed++);
    const auto b = random_values(n, seed++);
    const auto w = random_values(n, seed++, -0.2, 0.2);
    std::vector<double> x(n), y(n);

    ref.divide_floor(a.data(), b.data(), 0.1, x.data(), n);
    simd->divide_floor(a.data(), b.data(), 0.1, y.data(), n);
    CHECK(same_bits(x, y));

    ref.multiply(a.data(), b.data(), x.data(), n);
    simd->multiply(a.data(), b.data(), y.data(), n);
    CHECK(same_bits(x, y));

    ref.abs_diff(a.data(), b.data(), x.data(), n);
    simd->abs_diff(a.data(), b.data(), y.data(), n);
    CHECK(same_bits(x, y));

    ref.blend(0.3, a.data(), b.data(), x.data(), n);
    simd->blend(0.3, a.data(), b.data(), y.data(), n);
    CHECK(same_bits(x, y));

    ref.add_scaled_clamp(a.data(), w.data(), b.data(), -0.7, 0.001, 1.0, x.data(), n);
    simd->add_scaled_clamp(a.data(), w.data(), b.data(), -0.7, 0.001, 1.0, y.data(), n);
    CHECK(same_bits(x, y));

    ref.affine_clamp(a.data(), -0.5, 1.7, 0.001, 1.0, x.data(), n);
    simd->affine_clamp(a.data(), -0.5, 1.7, 0.001, 1.0, y.data(), n);
    CHECK(same_bits(x, y));

    if (n > 0) {
      CHECK(ref.max_value(a.data(), n) == simd->max_value(a.data(), n));
      CHECK(ref.max_abs(a.data(), n) == simd->max_abs(a.data(), n));
    }

    for (std::size_t ntaps : {3u, 5u, 17u}) {
      const auto taps = random_values(ntaps, seed++, 0.0, 1.0);
      const auto padded = random_values(2 * n + ntaps, seed++);
      ref.fir_strided(padded.data(), 1, taps.data(), ntaps, x.data(), n);
      simd->fir_strided(padded.data(), 1, taps.data(), ntaps, y.data(), n);
      CHECK(same_bits(x, y));
      ref.fir_strided(padded.data(), 2, taps.data(), ntaps, x.data(), n);
      simd->fir_strided(padded.data(), 2, taps.data(), ntaps, y.data(), n);
      CHECK(same_bits(x, y));

      std::vector<std::vector<double>> rows;
      std::vector<const double*> ptrs;
      for (std::size_t r = 0; r < ntaps; ++r) rows.push_back(random_values(n, seed++));
      for (const auto& r : rows) ptrs.push_back(r.data());
      ref.fir_rows(ptrs.data(), taps.data(), ntaps, x.data(), n);
      simd->fir_rows(ptrs.data(), taps.data(), ntaps, y.data(), n);
      CHECK(same_bits(x, y));
    }
  }
}

TEST_CASE("clamping kernels agree on ties and signed zeros") {
  const k::KernelTable* simd = k::avx2();
  if (simd == nullptr) return;
  const std::vector<double> in{0.0, -0.0, 1.0, 0.001, -5.0, 5.0, 0.5, 1e-300};
  std::vector<double> x(in.size()), y(in.size());
  k::scalar().affine_clamp(in.data(), 0.0, 1.0, 0.001, 1.0, x.data(), in.size());
  simd->affine_clamp(in.data(), 0.0, 1.0, 0.001, 1.0, y.data(), in.size());
  CHECK(same_bits(x, y));
  const std::vector<double> zeros(in.size(), 0.0);
  k::scalar().divide_floor(in.data(), zeros.data(), 0.0, x.data(), in.size());
  simd->divide_floor(in.data(), zeros.data(), 0.0, y.data(), in.size());
  CHECK(same_bits(x, y));
}
