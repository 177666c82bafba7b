#include "ctcompand/texture.hpp"

#include <cmath>
#include <string>

#include "ctcompand/kernels.hpp"
#include "ctcompand/pyramid.hpp"

namespace ctc {

Pyramid build_sorf_pyramid(const Pyramid& gaussian, const CompandParams& p) {
  const auto levels = static_cast<std::size_t>(p.N) + 1;
  if (p.N < 0 || gaussian.size() != levels + 1) {
    throw ParamError("SORF pyramid: expected " + std::to_string(levels + 1) +
                     " Gaussian levels, got " + std::to_string(gaussian.size()));
  }
  if (p.w_n.size() < levels) throw ParamError("SORF pyramid: w_n needs N+1 entries");
  if (!(p.mu > 0.0)) throw ParamError("SORF pyramid: mu must be > 0");

  const auto& k = kernels::active();
  auto band_magnitude = [&](std::size_t n) {
    const Grid& fine = gaussian[n];
    Grid d = expand(gaussian[n + 1], fine.width(), fine.height(), p.kernel_a);
    k.abs_diff(fine.data(), d.data(), d.data(), d.size());
    if (p.mu != 1.0) {
      for (double& v : d.values()) v = std::pow(v, p.mu);
    }
    return d;
  };

  std::vector<Grid> out(levels);
  out[levels - 1] = band_magnitude(levels - 1);
  for (std::size_t n = levels - 1; n-- > 0;) {
    Grid local = band_magnitude(n);
    const Grid context = expand(out[n + 1], local.width(), local.height(), p.kernel_a);
    k.blend(p.w_n[n], local.data(), context.data(), local.data(), local.size());
    out[n] = std::move(local);
  }
  return Pyramid(std::move(out));
}

}  // namespace ctc
