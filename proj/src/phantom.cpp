#include "ctcompand/phantom.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ctc {
namespace {

// splitmix64 finalizer; uniform in [-1, 1).
double hash_noise(std::uint64_t index) {
  std::uint64_t z = index + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;
}

}  // namespace

MandiblePhantom make_mandible_phantom(std::size_t size) {
  if (size < 64) throw ParamError("phantom size must be >= 64");
  using namespace phantom_hu;
  const double s = static_cast<double>(size) / 256.0;
  const double cx = 128.0 * s;

  // Arch: lower half-annulus plus straight rami running upward.
  const double arch_cy = 120.0 * s;
  const double arch_outer = 84.0 * s;
  const double arch_inner = 64.0 * s;
  const double ramus_top = 60.0 * s;

  // Teeth sit on the arch centerline, upper-facing.
  const double tooth_radius = 7.0 * s;
  const double tooth_ring = 0.5 * (arch_outer + arch_inner);
  constexpr int kTeeth = 9;
  std::vector<std::pair<double, double>> teeth;
  for (int t = 0; t < kTeeth; ++t) {
    const double angle = std::numbers::pi * (0.15 + 0.7 * t / (kTeeth - 1));
    teeth.emplace_back(cx + tooth_ring * std::cos(angle), arch_cy + tooth_ring * std::sin(angle));
  }
  const std::size_t metal_tooth = 2;
  const std::size_t roi_tooth = 6;

  const double lesion_cx = cx;
  const double lesion_cy = 128.0 * s;
  const double lesion_radius = 12.0 * s;

  MandiblePhantom ph;
  ph.slice.values = Grid(size, size);
  ph.slice.spacing = {0.5 * 256.0 / static_cast<double>(size), 0.5 * 256.0 / static_cast<double>(size)};
  ph.slice.source_id = "mandible_phantom";

  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const double px = static_cast<double>(x) + 0.5;
      const double py = static_cast<double>(y) + 0.5;
      double hu = kAir;

      const double ex = (px - cx) / (118.0 * s);
      const double ey = (py - 128.0 * s) / (108.0 * s);
      if (ex * ex + ey * ey <= 1.0) {
        hu = kSoftTissue + 6.0 * hash_noise(y * size + x) +
             4.0 * std::sin(px / (5.0 * s)) * std::sin(py / (7.0 * s));
      }

      const double lx = px - lesion_cx;
      const double ly = py - lesion_cy;
      if (lx * lx + ly * ly <= lesion_radius * lesion_radius) hu += kLesion - kSoftTissue;

      const double ax = px - cx;
      const double ay = py - arch_cy;
      const double r = std::hypot(ax, ay);
      const bool in_ring = r >= arch_inner && r <= arch_outer && ay >= 0.0;
      const bool in_ramus = ay < 0.0 && py >= ramus_top && std::abs(ax) >= arch_inner &&
                            std::abs(ax) <= arch_outer;
      if (in_ring || in_ramus) hu = kBone;

      for (std::size_t t = 0; t < teeth.size(); ++t) {
        const double dx = px - teeth[t].first;
        const double dy = py - teeth[t].second;
        const double d2 = dx * dx + dy * dy;
        if (d2 <= tooth_radius * tooth_radius) {
          hu = kEnamel;
          if (t == metal_tooth && d2 <= 0.25 * tooth_radius * tooth_radius) hu = kMetal;
        }
      }
      ph.slice.values(x, y) = hu;
    }
  }

  const auto box = [](const char* name, double x0, double y0, double half) {
    return Roi{name, static_cast<std::size_t>(std::lround(x0 - half)),
               static_cast<std::size_t>(std::lround(y0 - half)),
               static_cast<std::size_t>(std::lround(2.0 * half)),
               static_cast<std::size_t>(std::lround(2.0 * half))};
  };
  ph.lesion = box("lesion", lesion_cx, lesion_cy, 2.0 * lesion_radius);
  ph.tooth = box("tooth", teeth[roi_tooth].first, teeth[roi_tooth].second, 1.5 * tooth_radius);
  return ph;
}

}  // namespace ctc
