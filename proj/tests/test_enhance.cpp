#include <doctest.h>

#include "ctcompand/enhance.hpp"
#include "ctcompand/phantom.hpp"
#include "ctcompand/render.hpp"
#include "oracles.hpp"

using ctc::CompandParams;
using ctc::Grid;

TEST_CASE("enhancement weight shape") {
  const double V = 0.3;
  const double C1 = 0.1;
  const double C2 = 0.05;
  CHECK(ctc::enhancement_weight(V, V, C1, C2) == 0.0);
  CHECK(ctc::enhancement_weight(1.0, V, C1, C2) == 0.0);
  CHECK(ctc::enhancement_weight((V + 1.0) / 2.0, V, C1, C2) == doctest::Approx(C1).epsilon(1e-14));
  CHECK(ctc::enhancement_weight(V / 2.0, V, C1, C2) == doctest::Approx(-C2 / 3.0).epsilon(1e-14));
  CHECK(ctc::enhancement_weight(0.0, V, C1, C2) == 0.0);
  // Continuous through V from both sides.
  CHECK(std::abs(ctc::enhancement_weight(V - 1e-9, V, C1, C2)) < 1e-8);
  CHECK(std::abs(ctc::enhancement_weight(V + 1e-9, V, C1, C2)) < 1e-8);
}

TEST_CASE("weight field rejects V outside (0, 1)") {
  CompandParams p;
  p.V = 1.0;
  CHECK_THROWS_AS(ctc::weight_field(Grid(4, 4, 0.5), p), ctc::ParamError);
  p.V = 0.0;
  CHECK_THROWS_AS(ctc::weight_field(Grid(4, 4, 0.5), p), ctc::ParamError);
}

TEST_CASE("surround signal") {
  CompandParams p;
  SUBCASE("flat input") {
    const Grid g = ctc::surround_signal(Grid(20, 20, 0.4), p);
    for (double v : g.values()) CHECK(v == doctest::Approx(0.0));
  }
  SUBCASE("bright pixel: positive center, negative ring") {
    Grid u(32, 32, 0.2);
    u(16, 16) = 0.8;
    const Grid g = ctc::surround_signal(u, p);
    CHECK(g(16, 16) > 0.0);
    CHECK(g(17, 16) < 0.0);
    CHECK(g(16, 19) < 0.0);
    CHECK(g(16, 19) > -0.1);
  }
  SUBCASE("matches direct 2D convolution") {
    const Grid u = oracle::random_grid(16, 16, 5);
    const Grid blurred = oracle::blur(u, p.srnd_radius);
    const Grid g = ctc::surround_signal(u, p);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g.data()[i] == doctest::Approx(u.data()[i] - blurred.data()[i]).epsilon(1e-9));
    }
    CHECK(oracle::max_abs_diff(ctc::gaussian_blur(u, 3), oracle::blur(u, 3)) <= 1e-9);
  }
  SUBCASE("radius larger than the grid still mirrors cleanly") {
    const Grid u = oracle::random_grid(5, 4, 6);
    CHECK(oracle::max_abs_diff(ctc::gaussian_blur(u, 8), oracle::blur(u, 8)) <= 1e-9);
  }
}

TEST_CASE("soft tissue enhancement") {
  CompandParams p;
  SUBCASE("flat input unchanged") {
    const Grid u(24, 24, 0.3);
    CHECK(oracle::max_abs_diff(ctc::soft_tissue_enhance(u, p), u) == 0.0);
  }
  SUBCASE("zero amplitudes are the identity") {
    p.C1 = 0.0;
    p.C2 = 0.0;
    const Grid u = oracle::random_grid(24, 24, 8);
    CHECK(oracle::max_abs_diff(ctc::soft_tissue_enhance(u, p), u) == 0.0);
  }
  SUBCASE("stays within [epsilon, 1]") {
    p.C1 = 0.9;
    p.C2 = 0.9;
    const Grid out = ctc::soft_tissue_enhance(oracle::random_grid(32, 32, 9), p);
    for (double v : out.values()) {
      CHECK(v >= p.epsilon);
      CHECK(v <= 1.0);
    }
  }
  SUBCASE("low-contrast soft-tissue disc gains contrast") {
    // Disc 30 HU above a 40 HU background, well inside the soft band.
    ctc::HuSlice s;
    s.values = Grid(64, 64, 40.0);
    for (std::size_t y = 0; y < 64; ++y) {
      for (std::size_t x = 0; x < 64; ++x) {
        const double dx = x - 32.0;
        const double dy = y - 32.0;
        if (dx * dx + dy * dy <= 36.0) s.values(x, y) = 70.0;
      }
    }
    const Grid u = ctc::normalize_to_unit(s, p);
    const Grid e = ctc::soft_tissue_enhance(u, p);
    auto disc_rms = [](const Grid& g) {
      double mean = 0.0;
      double sq = 0.0;
      int n = 0;
      for (std::size_t y = 20; y < 44; ++y) {
        for (std::size_t x = 20; x < 44; ++x) {
          mean += g(x, y);
          ++n;
        }
      }
      mean /= n;
      for (std::size_t y = 20; y < 44; ++y) {
        for (std::size_t x = 20; x < 44; ++x) sq += (g(x, y) - mean) * (g(x, y) - mean);
      }
      return std::sqrt(sq / n) / mean;
    };
    CHECK(disc_rms(e) > disc_rms(u));
  }
}
