#include <doctest.h>

#include <cmath>

#include "ctcompand/pyramid.hpp"
#include "oracles.hpp"

using ctc::Grid;

TEST_CASE("generating kernel sums to one and is symmetric") {
  const auto w = ctc::generating_kernel(0.4);
  CHECK(w[0] + w[1] + w[2] + w[3] + w[4] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w[0] == w[4]);
  CHECK(w[1] == w[3]);
  CHECK(w[2] == 0.4);
  CHECK(w[0] == doctest::Approx(0.05));
}

TEST_CASE("reduce") {
  SUBCASE("constant 8x8 of 7 stays constant") {
    const Grid r = ctc::reduce(Grid(8, 8, 7.0));
    CHECK(r.width() == 4);
    CHECK(r.height() == 4);
    for (double v : r.values()) CHECK(v == doctest::Approx(7.0).epsilon(1e-15));
  }
  SUBCASE("impulse picks up the squared center weight") {
    Grid g(9, 9);
    g(4, 4) = 1.0;
    const Grid r = ctc::reduce(g);
    CHECK(r.width() == 5);
    CHECK(r(2, 2) == doctest::Approx(0.16).epsilon(1e-15));
  }
  SUBCASE("odd sizes round up") {
    const Grid r = ctc::reduce(Grid(7, 5, 1.0));
    CHECK(r.width() == 4);
    CHECK(r.height() == 3);
  }
  SUBCASE("matches direct convolution") {
    for (std::uint32_t seed = 0; seed < 5; ++seed) {
      const Grid g = oracle::random_grid(16 + seed, 16 - seed, seed);
      CHECK(oracle::max_abs_diff(ctc::reduce(g), oracle::reduce(g)) <= 1e-12);
    }
  }
  SUBCASE("too small") { CHECK_THROWS_AS(ctc::reduce(Grid(1, 4)), ctc::ParamError); }
  SUBCASE("2x2 is the smallest input") { CHECK(ctc::reduce(Grid(2, 2, 3.0)).size() == 1); }
}

TEST_CASE("expand") {
  SUBCASE("constant 4x4 to 8x8") {
    const Grid e = ctc::expand(Grid(4, 4, 2.5), 8, 8);
    for (double v : e.values()) CHECK(v == doctest::Approx(2.5).epsilon(1e-15));
  }
  SUBCASE("constant survives reduce after expand") {
    const Grid r = ctc::reduce(ctc::expand(Grid(4, 4, 0.3), 8, 8));
    for (double v : r.values()) CHECK(v == doctest::Approx(0.3).epsilon(1e-15));
  }
  SUBCASE("random 5x5 to 9x9 matches interpolation sum") {
    const Grid g = oracle::random_grid(5, 5, 42);
    CHECK(oracle::max_abs_diff(ctc::expand(g, 9, 9), oracle::expand(g, 9, 9)) <= 1e-12);
  }
  SUBCASE("even and odd targets, non-square") {
    const Grid g = oracle::random_grid(6, 3, 7);
    for (std::size_t tw : {11u, 12u}) {
      for (std::size_t th : {5u, 6u}) {
        CHECK(oracle::max_abs_diff(ctc::expand(g, tw, th), oracle::expand(g, tw, th)) <= 1e-12);
      }
    }
  }
  SUBCASE("single-pixel source") {
    const Grid e = ctc::expand(Grid(1, 1, 4.0), 2, 1);
    CHECK(e(0, 0) == doctest::Approx(4.0));
    CHECK(e(1, 0) == doctest::Approx(4.0));
  }
  SUBCASE("incompatible target") {
    CHECK_THROWS_AS(ctc::expand(Grid(4, 4), 10, 8), ctc::ParamError);
    CHECK_THROWS_AS(ctc::expand(Grid(4, 4), 6, 8), ctc::ParamError);
  }
}

TEST_CASE("reduce and expand are linear") {
  const Grid x = oracle::random_grid(13, 10, 1, -1.0, 1.0);
  const Grid y = oracle::random_grid(13, 10, 2, -1.0, 1.0);
  const double a = 0.7;
  const double b = -1.3;
  Grid combo(13, 10);
  for (std::size_t i = 0; i < combo.size(); ++i) combo.data()[i] = a * x.data()[i] + b * y.data()[i];

  const Grid rx = ctc::reduce(x);
  const Grid ry = ctc::reduce(y);
  const Grid rc = ctc::reduce(combo);
  for (std::size_t i = 0; i < rc.size(); ++i) {
    CHECK(rc.data()[i] == doctest::Approx(a * rx.data()[i] + b * ry.data()[i]).epsilon(1e-12));
  }
  const Grid ex = ctc::expand(x, 26, 20);
  const Grid ey = ctc::expand(y, 26, 20);
  const Grid ec = ctc::expand(combo, 26, 20);
  double worst = 0.0;
  for (std::size_t i = 0; i < ec.size(); ++i) {
    worst = std::max(worst, std::abs(ec.data()[i] - (a * ex.data()[i] + b * ey.data()[i])));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("gaussian pyramid") {
  SUBCASE("64x64 with N=3 halves down to 4") {
    const ctc::Pyramid g = ctc::build_gaussian_pyramid(Grid(64, 64, 0.5), 3);
    REQUIRE(g.size() == 5);
    const std::size_t sides[] = {64, 32, 16, 8, 4};
    for (std::size_t n = 0; n < 5; ++n) {
      CHECK(g[n].width() == sides[n]);
      for (double v : g[n].values()) CHECK(v == doctest::Approx(0.5).epsilon(1e-14));
    }
  }
  SUBCASE("each level is the repeated reduce") {
    const Grid u = oracle::random_grid(37, 29, 3);
    const ctc::Pyramid g = ctc::build_gaussian_pyramid(u, 2);
    const auto ref = oracle::gaussian(u, 2);
    for (std::size_t n = 0; n < ref.size(); ++n) CHECK(oracle::max_abs_diff(g[n], ref[n]) <= 1e-12);
  }
  SUBCASE("too deep") {
    CHECK_THROWS_AS(ctc::build_gaussian_pyramid(Grid(16, 16, 1.0), 4), ctc::ParamError);
    CHECK_NOTHROW(ctc::build_gaussian_pyramid(Grid(16, 16, 1.0), 2));
  }
}

TEST_CASE("contrast pyramid") {
  SUBCASE("constant input gives unit contrast") {
    const auto g = ctc::build_gaussian_pyramid(Grid(32, 32, 0.4), 2);
    const auto c = ctc::build_contrast_pyramid(g, 1e-3);
    REQUIRE(c.size() == 3);
    for (const Grid& level : c.levels()) {
      for (double v : level.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("bright pixel exceeds its local mean") {
    Grid u(32, 32, 0.1);
    u(10, 12) = 0.9;
    const auto c = ctc::build_contrast_pyramid(ctc::build_gaussian_pyramid(u, 2), 1e-3);
    CHECK(c[0](10, 12) > 1.0);
  }
  SUBCASE("matches ratio oracle") {
    const Grid u = oracle::random_grid(40, 33, 9);
    const auto g = ctc::build_gaussian_pyramid(u, 3);
    const auto c = ctc::build_contrast_pyramid(g, 1e-3);
    const auto ref = oracle::contrast(oracle::gaussian(u, 3), 1e-3);
    for (std::size_t n = 0; n < ref.size(); ++n) CHECK(oracle::max_abs_diff(c[n], ref[n]) <= 1e-12);
  }
}

TEST_CASE("collapse") {
  const Grid u = oracle::random_grid(45, 38, 11);
  const auto g = ctc::build_gaussian_pyramid(u, 3);
  const auto c = ctc::build_contrast_pyramid(g, 1e-3);

  SUBCASE("unmodulated contrasts restore the input") {
    CHECK(oracle::max_abs_diff(ctc::collapse(c, g), u) <= 1e-6);
  }
  SUBCASE("unit contrasts give the low-pass seed") {
    ctc::Pyramid ones;
    for (const Grid& level : c.levels()) ones.push_back(Grid(level.width(), level.height(), 1.0));
    const auto ref = oracle::gaussian(u, 3);
    const Grid lowpass = oracle::expand_chain(ref.back(), ref, ref.size() - 1, 0);
    CHECK(oracle::max_abs_diff(ctc::collapse(ones, g), lowpass) <= 1e-12);
  }
  SUBCASE("random modulated pyramid follows the recurrence") {
    ctc::Pyramid mod;
    std::vector<Grid> mod_ref;
    for (std::size_t n = 0; n < c.size(); ++n) {
      Grid m = oracle::random_grid(c[n].width(), c[n].height(), 100 + n, 0.5, 1.5);
      mod.push_back(m);
      mod_ref.push_back(m);
    }
    const Grid ref = oracle::collapse(mod_ref, oracle::gaussian(u, 3));
    CHECK(oracle::max_abs_diff(ctc::collapse(mod, g), ref) <= 1e-12);
  }
  SUBCASE("depth mismatch") {
    ctc::Pyramid short_c;
    short_c.push_back(c[0]);
    CHECK_THROWS_AS(ctc::collapse(short_c, g), ctc::ParamError);
  }
}
