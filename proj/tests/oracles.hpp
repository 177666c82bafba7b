#pragma once

// Slow, direct reference implementations. Deliberately written as plain 2D
// double loops over the textbook formulas so they share no code path with the
// separable/polyphase library kernels.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ctcompand/core.hpp"
#include "ctcompand/render.hpp"

namespace oracle {

using ctc::Grid;

// Mirror without repeating the edge: -1 -> 1, n -> n-2. Walks step by step.
inline long reflect(long i, long n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

inline double w(int m, double a) {
  switch (m) {
    case 0: return a;
    case -1:
    case 1: return 0.25;
    default: return 0.25 - a / 2.0;
  }
}

inline Grid reduce(const Grid& in, double a = 0.4) {
  const long W = static_cast<long>(in.width());
  const long H = static_cast<long>(in.height());
  Grid out(static_cast<std::size_t>((W + 1) / 2), static_cast<std::size_t>((H + 1) / 2));
  for (long j = 0; j < static_cast<long>(out.height()); ++j) {
    for (long i = 0; i < static_cast<long>(out.width()); ++i) {
      double s = 0.0;
      for (int n = -2; n <= 2; ++n) {
        for (int m = -2; m <= 2; ++m) {
          s += w(m, a) * w(n, a) *
               in(static_cast<std::size_t>(reflect(2 * i + m, W)),
                  static_cast<std::size_t>(reflect(2 * j + n, H)));
        }
      }
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
    }
  }
  return out;
}

// 4 * sum_m sum_n w(m) w(n) B((i - m) / 2, (j - n) / 2), integer positions only.
inline Grid expand(const Grid& in, std::size_t tw, std::size_t th, double a = 0.4) {
  const long W = static_cast<long>(in.width());
  const long H = static_cast<long>(in.height());
  Grid out(tw, th);
  for (long j = 0; j < static_cast<long>(th); ++j) {
    for (long i = 0; i < static_cast<long>(tw); ++i) {
      double s = 0.0;
      for (int n = -2; n <= 2; ++n) {
        if ((j - n) % 2 != 0) continue;
        for (int m = -2; m <= 2; ++m) {
          if ((i - m) % 2 != 0) continue;
          s += w(m, a) * w(n, a) *
               in(static_cast<std::size_t>(reflect((i - m) / 2, W)),
                  static_cast<std::size_t>(reflect((j - n) / 2, H)));
        }
      }
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 4.0 * s;
    }
  }
  return out;
}

inline std::vector<Grid> gaussian(const Grid& u, int N, double a = 0.4) {
  std::vector<Grid> g{u};
  for (int n = 0; n <= N; ++n) g.push_back(oracle::reduce(g.back(), a));
  return g;
}

inline Grid expand_to(const Grid& in, const Grid& like, double a = 0.4) {
  return oracle::expand(in, like.width(), like.height(), a);
}

// Repeated expand from level k down to level n of the Gaussian pyramid g.
inline Grid expand_chain(Grid x, const std::vector<Grid>& g, std::size_t k, std::size_t n,
                         double a = 0.4) {
  for (std::size_t l = k; l > n; --l) x = expand_to(x, g[l - 1], a);
  return x;
}

inline std::vector<Grid> contrast(const std::vector<Grid>& g, double eps, double a = 0.4) {
  std::vector<Grid> c;
  for (std::size_t n = 0; n + 1 < g.size(); ++n) {
    Grid e = expand_to(g[n + 1], g[n], a);
    Grid cn(g[n].width(), g[n].height());
    for (std::size_t i = 0; i < cn.size(); ++i) {
      cn.data()[i] = g[n].data()[i] / std::max(e.data()[i], eps);
    }
    c.push_back(cn);
  }
  return c;
}

inline Grid collapse(const std::vector<Grid>& c_hat, const std::vector<Grid>& g, double a = 0.4) {
  Grid b = g.back();
  for (std::size_t n = c_hat.size(); n-- > 0;) {
    Grid e = expand_to(b, c_hat[n], a);
    for (std::size_t i = 0; i < e.size(); ++i) e.data()[i] *= c_hat[n].data()[i];
    b = e;
  }
  return b;
}

inline Grid dog_magnitude(const std::vector<Grid>& g, std::size_t n, double mu, double a = 0.4) {
  Grid e = expand_to(g[n + 1], g[n], a);
  Grid d(e.width(), e.height());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d.data()[i] = std::pow(std::abs(g[n].data()[i] - e.data()[i]), mu);
  }
  return d;
}

// Texture pyramid in fully substituted form: every level is a weighted sum of
// expanded band magnitudes, with weight W_k prod_{j<k} (1 - W_j) on band k and
// the coarsest band taking the leftover product. Holds for any mu because
// the band magnitudes are fixed before the linear expands are applied.
inline std::vector<Grid> sorf_substituted(const std::vector<Grid>& g, const std::vector<double>& wn,
                                          double mu, double a = 0.4) {
  const std::size_t N = g.size() - 2;
  std::vector<Grid> bands;
  for (std::size_t k = 0; k <= N; ++k) bands.push_back(dog_magnitude(g, k, mu, a));
  std::vector<Grid> s;
  for (std::size_t n = 0; n <= N; ++n) {
    Grid acc(g[n].width(), g[n].height());
    double carry = 1.0;
    for (std::size_t k = n; k <= N; ++k) {
      const double weight = k == N ? carry : carry * wn[k];
      Grid term = expand_chain(bands[k], g, k, n, a);
      for (std::size_t i = 0; i < acc.size(); ++i) acc.data()[i] += weight * term.data()[i];
      if (k < N) carry *= 1.0 - wn[k];
    }
    s.push_back(acc);
  }
  return s;
}

inline Grid blur(const Grid& u, int radius) {
  const double sigma = radius / 2.0;
  const long W = static_cast<long>(u.width());
  const long H = static_cast<long>(u.height());
  double norm = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      norm += std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
  }
  Grid out(u.width(), u.height());
  for (long y = 0; y < H; ++y) {
    for (long x = 0; x < W; ++x) {
      double s = 0.0;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          s += std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma)) *
               u(static_cast<std::size_t>(reflect(x + dx, W)),
                 static_cast<std::size_t>(reflect(y + dy, H)));
        }
      }
      out(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = s / norm;
    }
  }
  return out;
}

// Per-pixel modulation in ct mode, from the Gaussian pyramid alone.
inline std::vector<Grid> modulated(const std::vector<Grid>& g, const ctc::CompandParams& p, int m) {
  const std::size_t N = g.size() - 2;
  const auto c = contrast(g, p.epsilon, p.kernel_a);
  const auto s = sorf_substituted(g, p.w_n, p.mu, p.kernel_a);

  std::vector<Grid> st(N + 1);
  const auto mm = static_cast<std::size_t>(m);
  const double top = *std::max_element(g[mm].values().begin(), g[mm].values().end());
  st[mm] = Grid(g[mm].width(), g[mm].height());
  for (std::size_t i = 0; i < st[mm].size(); ++i) st[mm].data()[i] = std::exp(-g[mm].data()[i] / top);
  for (std::size_t n = mm; n-- > 0;) st[n] = expand_to(st[n + 1], g[n], p.kernel_a);
  for (std::size_t n = mm + 1; n <= N; ++n) st[n] = oracle::reduce(st[n - 1], p.kernel_a);

  std::vector<Grid> out;
  for (std::size_t n = 0; n <= N; ++n) {
    const double smax = *std::max_element(s[n].values().begin(), s[n].values().end());
    Grid r(c[n].width(), c[n].height());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double t = st[n].data()[i];
      const double delta = p.mode == ctc::Mode::ct
                               ? p.A * (1 - t) * p.lambda_bone[n] + p.B * t * p.lambda_soft[n]
                               : p.A * p.lambda_bone[n];
      const double gamma = delta * (smax - s[n].data()[i]);
      r.data()[i] = p.r_max / (p.alpha + std::pow(p.beta / c[n].data()[i], gamma)) + p.b;
    }
    out.push_back(r);
  }
  return out;
}

// Nearest-rank style interpolation on a sorted copy, written independently.
inline double percentile(std::vector<double> v, double pct) {
  std::sort(v.begin(), v.end());
  const double pos = pct / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] * (1.0 - (pos - lo)) + v[lo + 1] * (pos - lo);
}

struct Stats {
  double rms, entropy, range;
};

inline Stats stats(const ctc::LdrImage& img, const ctc::Roi& roi) {
  std::vector<double> px;
  for (std::size_t y = roi.y; y < roi.y + roi.height; ++y) {
    for (std::size_t x = roi.x; x < roi.x + roi.width; ++x) px.push_back(img(x, y));
  }
  double mean = 0.0;
  for (double v : px) mean += v;
  mean /= px.size();
  double var = 0.0;
  for (double v : px) var += (v - mean) * (v - mean);
  var /= px.size();
  std::vector<int> hist(256, 0);
  for (double v : px) hist[static_cast<int>(v) >> (img.bit_depth - 8)]++;
  double h = 0.0;
  for (int c : hist) {
    if (c) h -= (double(c) / px.size()) * std::log2(double(c) / px.size());
  }
  auto [mn, mx] = std::minmax_element(px.begin(), px.end());
  return {mean > 0 ? std::sqrt(var) / mean : 0.0, h, *mx - *mn};
}

inline Grid random_grid(std::size_t w, std::size_t h, std::uint32_t seed, double lo = 1e-3,
                        double hi = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Grid g(w, h);
  for (double& v : g.values()) v = dist(rng);
  return g;
}

inline double max_abs_diff(const Grid& a, const Grid& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

}  // namespace oracle
