#include "ctcompand/pyramid.hpp"

#include <string>
#include <vector>

#include "ctcompand/kernels.hpp"

namespace ctc {
namespace {

using Index = std::ptrdiff_t;

// fir_strided with stride 2 may read one element past the last tap.
constexpr std::size_t kPadSlack = 4;

bool expand_size_ok(std::size_t source, std::size_t target) {
  return target == 2 * source || target + 1 == 2 * source;
}

}  // namespace

std::array<double, 5> generating_kernel(double a) {
  const double edge = 0.25 - 0.5 * a;
  return {edge, 0.25, a, 0.25, edge};
}

Grid reduce(const Grid& level, double kernel_a) {
  const std::size_t w = level.width();
  const std::size_t h = level.height();
  if (w < 2 || h < 2) throw ParamError("reduce: input must be at least 2x2");

  const auto taps = generating_kernel(kernel_a);
  const auto& k = kernels::active();
  const std::size_t out_w = (w + 1) / 2;
  const std::size_t out_h = (h + 1) / 2;
  Grid out(out_w, out_h);

  std::vector<double> column_pass(w);
  std::vector<double> padded(w + 4 + kPadSlack, 0.0);
  const double* rows[5];
  for (std::size_t i = 0; i < out_h; ++i) {
    for (Index t = 0; t < 5; ++t) {
      const Index y = mirror_index(static_cast<Index>(2 * i) + t - 2, static_cast<Index>(h));
      rows[t] = level.row(static_cast<std::size_t>(y)).data();
    }
    k.fir_rows(rows, taps.data(), 5, column_pass.data(), w);
    for (Index t = 0; t < static_cast<Index>(w) + 4; ++t) {
      padded[static_cast<std::size_t>(t)] =
          column_pass[static_cast<std::size_t>(mirror_index(t - 2, static_cast<Index>(w)))];
    }
    k.fir_strided(padded.data(), 2, taps.data(), 5, out.row(i).data(), out_w);
  }
  return out;
}

Grid expand(const Grid& level, std::size_t target_width, std::size_t target_height,
            double kernel_a) {
  const std::size_t w = level.width();
  const std::size_t h = level.height();
  if (w == 0 || h == 0 || !expand_size_ok(w, target_width) || !expand_size_ok(h, target_height)) {
    throw ParamError("expand: target " + std::to_string(target_width) + "x" +
                     std::to_string(target_height) + " incompatible with source " +
                     std::to_string(w) + "x" + std::to_string(h));
  }

  // Polyphase form of the 4x-scaled kernel: even outputs see taps (w2, w0, w2),
  // odd outputs see (w1, w1), each doubled per dimension.
  const auto g = generating_kernel(kernel_a);
  const double even_taps[3] = {2.0 * g[4], 2.0 * g[2], 2.0 * g[0]};
  const double odd_taps[2] = {2.0 * g[3], 2.0 * g[1]};
  const auto& k = kernels::active();

  const std::size_t n_even_x = (target_width + 1) / 2;
  const std::size_t n_odd_x = target_width / 2;

  // Horizontal pass on every source row.
  std::vector<double> horizontal(h * target_width);
  std::vector<double> padded(w + 2 + kPadSlack, 0.0);
  std::vector<double> even(n_even_x);
  std::vector<double> odd(n_odd_x);
  for (std::size_t y = 0; y < h; ++y) {
    const auto src = level.row(y);
    for (Index t = 0; t < static_cast<Index>(w) + 2; ++t) {
      padded[static_cast<std::size_t>(t)] =
          src[static_cast<std::size_t>(mirror_index(t - 1, static_cast<Index>(w)))];
    }
    k.fir_strided(padded.data(), 1, even_taps, 3, even.data(), n_even_x);
    k.fir_strided(padded.data() + 1, 1, odd_taps, 2, odd.data(), n_odd_x);
    double* dst = horizontal.data() + y * target_width;
    for (std::size_t p = 0; p < n_even_x; ++p) dst[2 * p] = even[p];
    for (std::size_t p = 0; p < n_odd_x; ++p) dst[2 * p + 1] = odd[p];
  }

  auto hrow = [&](Index y) {
    return horizontal.data() + static_cast<std::size_t>(mirror_index(y, static_cast<Index>(h))) *
                                   target_width;
  };

  Grid out(target_width, target_height);
  for (std::size_t i = 0; i < target_height; ++i) {
    const auto p = static_cast<Index>(i / 2);
    if (i % 2 == 0) {
      const double* rows[3] = {hrow(p - 1), hrow(p), hrow(p + 1)};
      k.fir_rows(rows, even_taps, 3, out.row(i).data(), target_width);
    } else {
      const double* rows[2] = {hrow(p), hrow(p + 1)};
      k.fir_rows(rows, odd_taps, 2, out.row(i).data(), target_width);
    }
  }
  return out;
}

Pyramid build_gaussian_pyramid(const Grid& u, int N, double kernel_a) {
  if (N < 0) throw ParamError("pyramid depth N must be >= 0");
  std::size_t w = u.width();
  std::size_t h = u.height();
  for (int n = 0; n <= N; ++n) {
    w = (w + 1) / 2;
    h = (h + 1) / 2;
  }
  if (u.width() < 2 || u.height() < 2 || w < 2 || h < 2) {
    throw ParamError("pyramid depth N = " + std::to_string(N) + " too deep for " +
                     std::to_string(u.width()) + "x" + std::to_string(u.height()) + " input");
  }

  Pyramid pyr;
  pyr.push_back(u);
  for (int n = 0; n <= N; ++n) pyr.push_back(reduce(pyr[static_cast<std::size_t>(n)], kernel_a));
  return pyr;
}

Pyramid build_contrast_pyramid(const Pyramid& gaussian, double epsilon, double kernel_a) {
  if (gaussian.size() < 2) throw ParamError("contrast pyramid needs at least two Gaussian levels");
  const auto& k = kernels::active();
  Pyramid contrasts;
  for (std::size_t n = 0; n + 1 < gaussian.size(); ++n) {
    const Grid& fine = gaussian[n];
    const Grid local_mean = expand(gaussian[n + 1], fine.width(), fine.height(), kernel_a);
    Grid c(fine.width(), fine.height());
    k.divide_floor(fine.data(), local_mean.data(), epsilon, c.data(), c.size());
    contrasts.push_back(std::move(c));
  }
  return contrasts;
}

Grid collapse(const Pyramid& contrasts, const Pyramid& gaussian, double kernel_a) {
  if (contrasts.empty() || gaussian.size() != contrasts.size() + 1) {
    throw ParamError("collapse: pyramid depth mismatch (" + std::to_string(contrasts.size()) +
                     " contrast levels, " + std::to_string(gaussian.size()) + " Gaussian levels)");
  }
  for (std::size_t n = 0; n < contrasts.size(); ++n) {
    if (!contrasts[n].same_shape(gaussian[n])) {
      throw ParamError("collapse: level " + std::to_string(n) + " shape mismatch");
    }
  }
  const auto& k = kernels::active();
  Grid current = gaussian[gaussian.size() - 1];
  for (std::size_t n = contrasts.size(); n-- > 0;) {
    const Grid& c = contrasts[n];
    Grid up = expand(current, c.width(), c.height(), kernel_a);
    k.multiply(c.data(), up.data(), up.data(), up.size());
    current = std::move(up);
  }
  return current;
}

}  // namespace ctc
