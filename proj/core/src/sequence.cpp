#include "scadkit/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <tuple>

#include "scadkit/error.hpp"

namespace scadkit {

extern const char* const kEmbeddedM13;

namespace {

using RunKey = std::tuple<int, int, bool>;  // helix, offset, forward

std::map<RunKey, int> base_runs(const Design& design) {
  std::map<RunKey, int> runs;
  for (const auto& strand : design.strands) {
    for (const auto& d : strand.domains) {
      const auto* b = std::get_if<BoundDomain>(&d);
      if (!b) continue;
      for (const auto& [offset, bases] : domain_base_offsets(*b)) {
        runs[{b->helix, offset, b->forward}] = bases;
      }
    }
  }
  return runs;
}

std::optional<BasePosition> partner(const BasePosition& pos, int own_run,
                                    const std::map<RunKey, int>& runs) {
  auto it = runs.find({pos.helix, pos.offset, !pos.forward});
  if (it == runs.end() || it->second == 0) return std::nullopt;
  return paired_position(pos, own_run, it->second);
}

std::string load_m13() {
  if (const char* path = std::getenv("SCADKIT_M13_PATH"); path && *path) {
    std::ifstream in(path);
    if (!in) throw SequenceError(std::string("cannot read SCADKIT_M13_PATH file ") + path);
    std::ostringstream text;
    text << in.rdbuf();
    std::string seq;
    for (char c : text.str()) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (up != 'A' && up != 'C' && up != 'G' && up != 'T') {
        throw SequenceError(std::string("SCADKIT_M13_PATH file has a non-ACGT character: ") + c);
      }
      seq.push_back(up);
    }
    if (seq.empty()) throw SequenceError("SCADKIT_M13_PATH file is empty");
    return seq;
  }
  return kEmbeddedM13;
}

bool is_base(char c) { return c == 'A' || c == 'C' || c == 'G' || c == 'T'; }

void check_alphabet(std::string_view seq) {
  for (char c : seq) {
    if (c != 'A' && c != 'C' && c != 'G' && c != 'T' && c != '?') {
      throw SequenceError(std::string("illegal DNA character '") + c + "'");
    }
  }
}

}  // namespace

const std::string& m13_sequence() {
  static const std::string seq = load_m13();
  return seq;
}

std::string m13_substring(std::size_t length, long long rotation) {
  const std::string& m13 = m13_sequence();
  const auto n = static_cast<long long>(m13.size());
  if (length > m13.size()) {
    throw SequenceError("requested " + std::to_string(length) + " bases of M13, which has only " +
                        std::to_string(m13.size()));
  }
  const auto start = static_cast<std::size_t>(((rotation % n) + n) % n);
  std::string out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(m13[(start + i) % m13.size()]);
  return out;
}

char complement(char base) {
  switch (base) {
    case 'A': return 'T';
    case 'T': return 'A';
    case 'C': return 'G';
    case 'G': return 'C';
    case '?': return '?';
    default: throw SequenceError(std::string("illegal DNA character '") + base + "'");
  }
}

std::string reverse_complement(std::string_view seq) {
  std::string out(seq.size(), '?');
  std::transform(seq.rbegin(), seq.rend(), out.begin(), complement);
  return out;
}

BaseAssignment base_assignment(const Design& design) {
  BaseAssignment assignment;
  for (const auto& strand : design.strands) {
    if (!strand.sequence) continue;
    const auto slots = strand_base_slots(strand);
    const std::size_t n = std::min(slots.size(), strand.sequence->size());
    for (std::size_t i = 0; i < n; ++i) {
      const char c = (*strand.sequence)[i];
      if (slots[i].position && c != '?') assignment[*slots[i].position] = c;
    }
  }
  return assignment;
}

std::optional<BasePosition> paired_position(const BasePosition& pos, int own_run, int other_run) {
  // Runs pair anti-parallel: forward index i meets reverse index n_rev-1-i.
  BasePosition p{pos.helix, pos.offset, !pos.forward, 0};
  if (pos.forward) {
    p.within = other_run - 1 - pos.within;
    if (p.within < 0) return std::nullopt;
  } else {
    p.within = own_run - 1 - pos.within;
    if (p.within < 0 || p.within >= other_run) return std::nullopt;
  }
  return p;
}

Design assign_dna(const Design& input, std::size_t strand_index, std::string_view seq) {
  if (strand_index >= input.strands.size()) {
    throw SequenceError("no strand " + std::to_string(strand_index));
  }
  check_alphabet(seq);
  Design design = input;
  Strand& target = design.strands[strand_index];
  const auto length = static_cast<std::size_t>(strand_dna_length(target));
  if (seq.size() > length) {
    throw SequenceError("sequence has " + std::to_string(seq.size()) + " bases but strand " +
                        std::to_string(strand_index) + " has only " + std::to_string(length));
  }
  std::string padded(seq);
  padded.resize(length, '?');
  target.sequence = padded;

  std::map<BasePosition, char> placed;
  const auto target_slots = strand_base_slots(target);
  for (std::size_t i = 0; i < target_slots.size(); ++i) {
    if (target_slots[i].position && padded[i] != '?') placed[*target_slots[i].position] = padded[i];
  }
  const auto runs = base_runs(design);

  for (std::size_t s = 0; s < design.strands.size(); ++s) {
    if (s == strand_index) continue;
    Strand& other = design.strands[s];
    const auto slots = strand_base_slots(other);
    std::string bases = other.sequence.value_or(std::string(slots.size(), '?'));
    bool filled = false;
    for (std::size_t i = 0; i < slots.size() && i < bases.size(); ++i) {
      if (!slots[i].position || bases[i] != '?') continue;
      auto p = partner(*slots[i].position, slots[i].run, runs);
      if (!p) continue;
      if (auto it = placed.find(*p); it != placed.end()) {
        bases[i] = complement(it->second);
        filled = true;
      }
    }
    if (filled) other.sequence = std::move(bases);
  }
  return design;
}

Design assign_m13(const Design& design, long long rotation) {
  std::optional<std::size_t> scaffold;
  for (std::size_t i = 0; i < design.strands.size(); ++i) {
    if (!design.strands[i].is_scaffold) continue;
    if (scaffold) throw SequenceError("assign_m13 needs exactly one scaffold, found several");
    scaffold = i;
  }
  if (!scaffold) throw SequenceError("assign_m13 needs exactly one scaffold, found none");
  const auto length = static_cast<std::size_t>(strand_dna_length(design.strands[*scaffold]));
  if (length > m13_sequence().size()) {
    throw SequenceError("scaffold has " + std::to_string(length) + " bases, longer than M13 (" +
                        std::to_string(m13_sequence().size()) + ")");
  }
  return assign_dna(design, *scaffold, m13_substring(length, rotation));
}

std::vector<Mismatch> find_mismatches(const Design& design) {
  std::vector<Mismatch> out;
  const auto runs = base_runs(design);
  const BaseAssignment assignment = base_assignment(design);
  for (const auto& [pos, base] : assignment) {
    if (!pos.forward) continue;
    auto own = runs.find({pos.helix, pos.offset, true});
    auto p = partner(pos, own == runs.end() ? 1 : own->second, runs);
    if (!p) continue;
    auto it = assignment.find(*p);
    if (it == assignment.end() || !is_base(base) || !is_base(it->second)) continue;
    if (complement(base) != it->second) {
      out.push_back({pos.helix, pos.offset, pos.within});
    }
  }
  return out;
}

}  // namespace scadkit
