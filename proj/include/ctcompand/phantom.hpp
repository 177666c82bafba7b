#pragma once

#include <vector>

#include "ctcompand/core.hpp"
#include "ctcompand/render.hpp"

namespace ctc {

/// Synthetic axial mandible slice: air, a soft-tissue ellipse with mild
/// texture, a U-shaped cortical bone arch, a row of teeth-scale enamel discs
/// (one carrying a metal filling), and a low-contrast soft-tissue lesion.
struct MandiblePhantom {
  HuSlice slice;
  Roi lesion;  // lesion plus surrounding soft tissue
  Roi tooth;   // one enamel disc and its border

  std::vector<Roi> rois() const { return {lesion, tooth}; }
};

/// Fully deterministic for a given size (pixel noise comes from an integer hash).
/// 256 px at 0.5 mm spacing by default.
MandiblePhantom make_mandible_phantom(std::size_t size = 256);

namespace phantom_hu {
inline constexpr double kAir = -1000.0;
inline constexpr double kSoftTissue = 40.0;
inline constexpr double kLesion = 70.0;
inline constexpr double kBone = 1200.0;
inline constexpr double kEnamel = 2500.0;
inline constexpr double kMetal = 6000.0;
}  // namespace phantom_hu

}  // namespace ctc
