#include "ctcompand/modulate.hpp"

#include <cmath>
#include <string>

#include "ctcompand/kernels.hpp"
#include "ctcompand/pyramid.hpp"

namespace ctc {

Pyramid soft_threshold_field(const Pyramid& gaussian, const CompandParams& p, int teeth_level) {
  const auto levels = static_cast<std::size_t>(p.N) + 1;
  if (teeth_level < 0 || teeth_level > p.N) {
    throw ParamError("teeth level " + std::to_string(teeth_level) + " outside [0, N]");
  }
  if (gaussian.size() < levels) throw ParamError("soft threshold: Gaussian pyramid too shallow");

  const auto m = static_cast<std::size_t>(teeth_level);
  const Grid& base = gaussian[m];
  const double peak = kernels::active().max_value(base.data(), base.size());
  if (!(peak > 0.0)) throw DegenerateInputError("soft threshold: teeth level has max <= 0");

  std::vector<Grid> out(levels);
  Grid st(base.width(), base.height());
  auto src = base.values();
  auto dst = st.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::exp(-(src[i] / peak));
  out[m] = std::move(st);

  for (std::size_t n = m; n-- > 0;) {
    const Grid& target = gaussian[n];
    out[n] = expand(out[n + 1], target.width(), target.height(), p.kernel_a);
  }
  for (std::size_t n = m + 1; n < levels; ++n) out[n] = reduce(out[n - 1], p.kernel_a);
  return Pyramid(std::move(out));
}

Grid delta_field(const Grid& soft_threshold, std::size_t n, const CompandParams& p) {
  if (n >= p.lambda_bone.size() || n >= p.lambda_soft.size()) {
    throw ParamError("delta field: no lambda entry for level " + std::to_string(n));
  }
  const double bone = p.lambda_bone[n];
  const double soft = p.lambda_soft[n];
  Grid out(soft_threshold.width(), soft_threshold.height());
  auto st = soft_threshold.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < st.size(); ++i) {
    dst[i] = p.A * (1.0 - st[i]) * bone + p.B * st[i] * soft;
  }
  return out;
}

Grid gamma_field(const Grid& texture, const Grid& delta) {
  if (!texture.same_shape(delta)) throw ParamError("gamma field: shape mismatch");
  const double peak = kernels::active().max_value(texture.data(), texture.size());
  Grid out(texture.width(), texture.height());
  auto s = texture.values();
  auto d = delta.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < s.size(); ++i) dst[i] = d[i] * (peak - s[i]);
  return out;
}

double naka_rushton(double contrast, double gamma, const CompandParams& p) {
  return p.r_max / (p.alpha + std::pow(p.beta / contrast, gamma)) + p.b;
}

Grid naka_rushton(const Grid& contrast, const Grid& gamma, const CompandParams& p) {
  if (!contrast.same_shape(gamma)) throw ParamError("naka_rushton: shape mismatch");
  Grid out(contrast.width(), contrast.height());
  auto c = contrast.values();
  auto g = gamma.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < c.size(); ++i) dst[i] = naka_rushton(c[i], g[i], p);
  return out;
}

Pyramid modulate_contrast_pyramid(const Pyramid& contrasts, const Pyramid& texture,
                                  const Pyramid& gaussian, const CompandParams& p,
                                  int teeth_level) {
  const auto levels = static_cast<std::size_t>(p.N) + 1;
  if (contrasts.size() != levels || texture.size() != levels || gaussian.size() != levels + 1) {
    throw ParamError("modulate: pyramid depth mismatch");
  }

  Pyramid soft_threshold;
  if (p.mode == Mode::ct) soft_threshold = soft_threshold_field(gaussian, p, teeth_level);

  Pyramid out;
  for (std::size_t n = 0; n < levels; ++n) {
    const Grid& c = contrasts[n];
    Grid delta;
    if (p.mode == Mode::ct) {
      delta = delta_field(soft_threshold[n], n, p);
    } else {
      delta = Grid(c.width(), c.height(), p.A * p.lambda_bone.at(n));
    }
    out.push_back(naka_rushton(c, gamma_field(texture[n], delta), p));
  }
  return out;
}

}  // namespace ctc
