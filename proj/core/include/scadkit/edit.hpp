#pragma once

#include <span>
#include <vector>

#include "scadkit/error.hpp"
#include "scadkit/model.hpp"

namespace scadkit {

// Every edit is a pure function: it returns a new design and leaves its input
// untouched. A successful result always passes validate(); a rejected edit
// throws EditError (or InvalidDesign when the result would be invalid).

struct CrossoverSpec {
  int helix1 = 0;
  int helix2 = 0;
  int offset1 = 0;
  bool forward1 = true;
  bool half = false;
};

Design add_strand(const Design& design, Strand strand);

/// Breaks the bond between offsets offset-1 and offset on (helix, forward).
Design add_nick(const Design& design, int helix, int offset, bool forward);

/// Inverse of add_nick: joins the strand ending just before `offset` to the
/// strand starting at `offset` on the same helix and direction.
Design ligate(const Design& design, int helix, int offset, bool forward);

/// Joins a 3' end at (helix1, offset1, forward1) with the 5' end at
/// (helix2, offset1, !forward1), or the other way round.
Design add_half_crossover(const Design& design, const CrossoverSpec& spec);

/// Nicks both helices at offset1 where needed, then joins across the helices
/// at offset1-1 and at offset1.
Design add_full_crossover(const Design& design, const CrossoverSpec& spec);

/// Applies each spec in order, dispatching on `half`.
Design add_crossovers(const Design& design, std::span<const CrossoverSpec> specs);

Design add_deletion(const Design& design, int helix, int offset);
Design add_insertion(const Design& design, int helix, int offset, int length);

Design set_scaffold(const Design& design, std::size_t strand_index);

/// Appends copies of the selected strands shifted by `delta_view_rows` rows of
/// the view order and `delta_offset` offsets. Copies carry no sequence.
Design copy_translate_strands(const Design& design, std::span<const std::size_t> strand_indices,
                              int delta_view_rows, int delta_offset);

/// Convenience constructor for a single-domain strand.
Strand make_strand(int helix, bool forward, int start, int end);

}  // namespace scadkit
