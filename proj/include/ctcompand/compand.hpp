#pragma once

#include "ctcompand/core.hpp"

namespace ctc {

struct CompandResult {
  LdrImage image;
  Grid restored;         // collapsed pyramid, normalized units, before quantization
  UnitMap unit_map;
  int teeth_level = 0;
  bool degenerate = false;
};

/// Full pipeline: clip, normalize, enhance (ct mode), decompose, modulate,
/// collapse, quantize. Deterministic for fixed inputs.
CompandResult compand_detailed(const HuSlice& slice, const CompandParams& p);
LdrImage compand(const HuSlice& slice, const CompandParams& p);

}  // namespace ctc
