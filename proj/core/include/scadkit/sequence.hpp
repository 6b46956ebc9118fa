#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scadkit/error.hpp"
#include "scadkit/model.hpp"

namespace scadkit {

inline constexpr std::size_t kM13Length = 7249;

/// The 7249-base M13mp18 scaffold sequence. SCADKIT_M13_PATH, when set,
/// names a text file whose contents replace the embedded copy.
const std::string& m13_sequence();

/// `length` bases of M13 starting at `rotation` (wrapping in both directions).
std::string m13_substring(std::size_t length, long long rotation = 0);

char complement(char base);

/// Watson-Crick reverse complement; '?' stays '?'. Throws SequenceError on
/// any character outside {A, C, G, T, ?}.
std::string reverse_complement(std::string_view seq);

/// Concrete bases currently placed on helices, keyed by base position.
using BaseAssignment = std::map<BasePosition, char>;

BaseAssignment base_assignment(const Design& design);

/// Position of the base paired with `pos` on the opposite strand, given the
/// run length of bases on the other side at that offset. Empty when the base
/// falls in the unpaired excess of a longer insertion.
std::optional<BasePosition> paired_position(const BasePosition& pos, int own_run, int other_run);

/// Sets the strand's sequence (padding short input with '?' at the 3' end)
/// and fills complementary bases into every other strand wherever those are
/// still unassigned. Concrete bases elsewhere are never overwritten.
Design assign_dna(const Design& design, std::size_t strand_index, std::string_view seq);

/// Assigns M13 to the single scaffold strand and propagates complements.
Design assign_m13(const Design& design, long long rotation = 0);

struct Mismatch {
  int helix = 0;
  int offset = 0;
  int within = 0;

  bool operator==(const Mismatch&) const = default;
};

/// Paired positions where both bases are concrete but not complementary.
/// Reported once per pair, using the forward strand's within-offset index.
std::vector<Mismatch> find_mismatches(const Design& design);

}  // namespace scadkit
