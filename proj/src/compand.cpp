#include "ctcompand/compand.hpp"

#include "ctcompand/enhance.hpp"
#include "ctcompand/ingest.hpp"
#include "ctcompand/modulate.hpp"
#include "ctcompand/pyramid.hpp"
#include "ctcompand/render.hpp"
#include "ctcompand/texture.hpp"

namespace ctc {

CompandResult compand_detailed(const HuSlice& slice, const CompandParams& p) {
  require_valid(p);
  check_slice(slice);

  CompandResult result;
  Grid unit;
  if (p.mode == Mode::ct) {
    const HuSlice clipped = clip_metal(slice, p);
    result.unit_map = unit_map_for(clipped, p);
    unit = soft_tissue_enhance(normalize_to_unit(clipped.values, result.unit_map), p);
  } else {
    result.unit_map = unit_map_for(slice, p);
    unit = normalize_to_unit(slice.values, result.unit_map);
  }

  const Pyramid gaussian = build_gaussian_pyramid(unit, p.N, p.kernel_a);
  const Pyramid contrasts = build_contrast_pyramid(gaussian, p.epsilon, p.kernel_a);
  const Pyramid texture = build_sorf_pyramid(gaussian, p);
  result.teeth_level = teeth_level(p, slice.spacing);
  const Pyramid modulated =
      modulate_contrast_pyramid(contrasts, texture, gaussian, p, result.teeth_level);
  result.restored = collapse(modulated, gaussian, p.kernel_a);

  Quantized q = quantize_output(result.restored, p.bit_depth, p.lo_pct, p.hi_pct);
  result.image = std::move(q.image);
  result.degenerate = q.degenerate;
  return result;
}

LdrImage compand(const HuSlice& slice, const CompandParams& p) {
  return compand_detailed(slice, p).image;
}

}  // namespace ctc
