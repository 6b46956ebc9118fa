#pragma once

// 24-helix rectangle built step by step the way the scadnano tutorial
// scripts it: scaffold, seam, staples, staple crossovers, twist correction.

#include "scadkit/edit.hpp"
#include "scadkit/sequence.hpp"

namespace scadkit::test {

inline Design rectangle_scaffold_only() {
  Design d;
  d.grid = Grid::square;
  for (int h = 0; h < 24; ++h) {
    Helix helix;
    helix.idx = h;
    helix.max_offset = 304;
    helix.grid_position = GridPosition{0, h};
    d.helices.push_back(helix);
    d.strands.push_back(make_strand(h, h % 2 == 0, 8, 296));
  }
  for (int h = 1; h < 24; ++h) d = add_nick(d, h, 152, h % 2 == 0);
  for (int h = 1; h < 23; h += 2) d = add_full_crossover(d, {h, h + 1, 152, false, false});
  for (int h = 0; h < 23; h += 2) {
    d = add_half_crossover(d, {h, h + 1, 8, true, true});
    d = add_half_crossover(d, {h, h + 1, 295, true, true});
  }
  return set_scaffold(d, 0);
}

inline Design rectangle_with_staples(Design d) {
  for (int h = 0; h < 24; ++h) d = add_strand(d, make_strand(h, h % 2 == 1, 8, 296));
  for (int h = 0; h < 24; ++h) {
    for (int o = h % 2 == 0 ? 32 : 48; o < 280; o += 32) d = add_nick(d, h, o, h % 2 == 1);
  }
  for (int h = 0; h < 23; ++h) {
    for (int o = h % 2 == 0 ? 24 : 40; o < 296; o += 32) {
      if (o != 152) d = add_full_crossover(d, {h, h + 1, o, h % 2 == 1, false});
    }
  }
  return d;
}

inline Design rectangle_twist_corrected(Design d) {
  for (int h = 0; h < 24; ++h) {
    for (int o = 27; o < 294; o += 48) d = add_deletion(d, h, o);
  }
  return d;
}

inline Design rectangle() {
  return assign_m13(rectangle_twist_corrected(rectangle_with_staples(rectangle_scaffold_only())));
}

}  // namespace scadkit::test
