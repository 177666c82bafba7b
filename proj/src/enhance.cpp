#include "ctcompand/enhance.hpp"

#include <cmath>
#include <vector>

#include "ctcompand/kernels.hpp"

namespace ctc {
namespace {

constexpr double kFlatResidue = 1e-12;

void check_turnover(double V) {
  if (!(V > 0.0 && V < 1.0)) throw ParamError("V must lie in (0, 1) in normalized units");
}

}  // namespace

double enhancement_weight(double u, double V, double C1, double C2) {
  constexpr double kMax = 1.0;
  if (u >= V) {
    const double span = kMax - V;
    return 4.0 * C1 * (u - V) * (kMax - u) / (span * span);
  }
  return -4.0 * C2 * (V - u) * u / (3.0 * V * V);
}

Grid weight_field(const Grid& u, const CompandParams& p) {
  check_turnover(p.V);
  Grid w(u.width(), u.height());
  auto src = u.values();
  auto dst = w.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = enhancement_weight(src[i], p.V, p.C1, p.C2);
  return w;
}

Grid gaussian_blur(const Grid& u, int radius) {
  if (radius < 1) throw ParamError("blur radius must be >= 1");
  const auto r = static_cast<std::ptrdiff_t>(radius);
  const std::size_t ntaps = static_cast<std::size_t>(2 * r + 1);
  const double sigma = 0.5 * radius;

  std::vector<double> taps(ntaps);
  double total = 0.0;
  for (std::ptrdiff_t t = -r; t <= r; ++t) {
    const double x = static_cast<double>(t);
    taps[static_cast<std::size_t>(t + r)] = std::exp(-x * x / (2.0 * sigma * sigma));
    total += taps[static_cast<std::size_t>(t + r)];
  }
  for (double& t : taps) t /= total;

  const auto& k = kernels::active();
  const auto w = static_cast<std::ptrdiff_t>(u.width());
  const auto h = static_cast<std::ptrdiff_t>(u.height());
  Grid out(u.width(), u.height());
  std::vector<const double*> rows(ntaps);
  std::vector<double> column_pass(u.width());
  std::vector<double> padded(u.width() + 2 * ntaps);
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t t = -r; t <= r; ++t) {
      rows[static_cast<std::size_t>(t + r)] =
          u.row(static_cast<std::size_t>(mirror_index(y + t, h))).data();
    }
    k.fir_rows(rows.data(), taps.data(), ntaps, column_pass.data(), u.width());
    for (std::ptrdiff_t x = 0; x < w + 2 * r; ++x) {
      padded[static_cast<std::size_t>(x)] =
          column_pass[static_cast<std::size_t>(mirror_index(x - r, w))];
    }
    k.fir_strided(padded.data(), 1, taps.data(), ntaps, out.row(static_cast<std::size_t>(y)).data(),
                  u.width());
  }
  return out;
}

Grid surround_signal(const Grid& u, const CompandParams& p) {
  Grid blurred = gaussian_blur(u, p.srnd_radius);
  auto src = u.values();
  auto dst = blurred.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] - dst[i];
  return blurred;
}

Grid soft_tissue_enhance(const Grid& u, const CompandParams& p) {
  const Grid weights = weight_field(u, p);
  const Grid deviation = surround_signal(u, p);
  const auto& k = kernels::active();
  const double peak = k.max_abs(deviation.data(), deviation.size());
  Grid out(u.width(), u.height());
  // A flat image leaves only rounding residue from the blur; normalizing that
  // by its own peak would inject full-strength noise.
  if (peak <= kFlatResidue) {
    k.affine_clamp(u.data(), 0.0, 1.0, p.epsilon, 1.0, out.data(), u.size());
    return out;
  }
  // The weight is negative below V, so subtracting sharpens the soft-tissue
  // band and relaxes local detail above V.
  k.add_scaled_clamp(u.data(), weights.data(), deviation.data(), -1.0 / peak, p.epsilon, 1.0,
                     out.data(), u.size());
  return out;
}

}  // namespace ctc
