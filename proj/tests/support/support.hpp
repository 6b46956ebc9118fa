#pragma once

// Fixtures and reference oracles shared by unit and acceptance tests. The
// oracles work on raw JSON or plain containers and do not call into the
// library's own length, walk or pairing code.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "scadkit/codec.hpp"
#include "scadkit/edit.hpp"
#include "scadkit/model.hpp"

namespace scadkit::test {

inline std::string fixture_path(const std::string& name) { return std::string(SCADKIT_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string listing_text() { return read_text(fixture_path("listing.sc")); }
inline nlohmann::json listing_json() { return nlohmann::json::parse(listing_text()); }
inline Design listing() { return parse_design(listing_text()); }

inline constexpr const char* kMinimalText = R"({"grid":"none","helices":[],"strands":[]})";

// Two square-grid helices of 32 offsets, each with a forward and a reverse
// strand over [0,16).
inline Design fixture_a() {
  Design d;
  d.grid = Grid::square;
  for (int i = 0; i < 2; ++i) {
    Helix h;
    h.idx = i;
    h.max_offset = 32;
    h.grid_position = GridPosition{0, i};
    d.helices.push_back(h);
  }
  for (int h = 0; h < 2; ++h) {
    d.strands.push_back(make_strand(h, true, 0, 16));
    d.strands.push_back(make_strand(h, false, 0, 16));
  }
  return d;
}

// ---- raw JSON oracles ----------------------------------------------------

inline int oracle_domain_length(const nlohmann::json& dom) {
  if (dom.contains("loopout")) return dom["loopout"].get<int>();
  int n = dom["end"].get<int>() - dom["start"].get<int>();
  if (dom.contains("deletions")) n -= static_cast<int>(dom["deletions"].size());
  if (dom.contains("insertions")) {
    for (const auto& ins : dom["insertions"]) n += ins[1].get<int>();
  }
  return n;
}

inline int oracle_strand_length(const nlohmann::json& strand) {
  int n = 0;
  for (const auto& dom : strand["domains"]) n += oracle_domain_length(dom);
  return n;
}

struct RawBase {
  int helix;
  int offset;
  bool forward;
  int within;
  int run;
};

// Every base of the strand in 5'->3' order; loopout bases are nullopt.
inline std::vector<std::optional<RawBase>> oracle_walk(const nlohmann::json& strand) {
  std::vector<std::optional<RawBase>> out;
  for (const auto& dom : strand["domains"]) {
    if (dom.contains("loopout")) {
      for (int i = 0; i < dom["loopout"].get<int>(); ++i) out.emplace_back(std::nullopt);
      continue;
    }
    const int helix = dom["helix"].get<int>();
    const bool fwd = dom["forward"].get<bool>();
    const int start = dom["start"].get<int>();
    const int end = dom["end"].get<int>();
    std::set<int> deleted;
    std::map<int, int> inserted;
    if (dom.contains("deletions")) {
      for (const auto& o : dom["deletions"]) deleted.insert(o.get<int>());
    }
    if (dom.contains("insertions")) {
      for (const auto& ins : dom["insertions"]) inserted[ins[0].get<int>()] = ins[1].get<int>();
    }
    for (int k = 0; k < end - start; ++k) {
      const int o = fwd ? start + k : end - 1 - k;
      if (deleted.count(o)) continue;
      const int run = inserted.count(o) ? inserted[o] + 1 : 1;
      for (int w = 0; w < run; ++w) out.push_back(RawBase{helix, o, fwd, w, run});
    }
  }
  return out;
}

inline char oracle_complement(char c) {
  switch (c) {
    case 'A': return 'T';
    case 'T': return 'A';
    case 'C': return 'G';
    case 'G': return 'C';
    default: return '?';
  }
}

// Bases of `target` derived from the sequence of `source` by pairing each
// base with the antiparallel base at the same helix offset. Base w of a run
// of n pairs with base n-1-w of the opposite run when both runs agree.
inline std::string oracle_pair_sequence(const nlohmann::json& design, std::size_t target, std::size_t source,
                                        const std::string& source_seq) {
  std::map<std::tuple<int, int, bool, int>, std::pair<char, int>> placed;
  const auto src = oracle_walk(design["strands"][source]);
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i]) continue;
    const auto& b = *src[i];
    placed[{b.helix, b.offset, b.forward, b.within}] = {source_seq.at(i), b.run};
  }
  std::string out;
  for (const auto& b : oracle_walk(design["strands"][target])) {
    char c = '?';
    if (b) {
      auto it = placed.find({b->helix, b->offset, !b->forward, b->run - 1 - b->within});
      if (it != placed.end() && it->second.second == b->run) c = oracle_complement(it->second.first);
    }
    out += c;
  }
  return out;
}

// ---- model oracles -------------------------------------------------------

using Slot = std::tuple<int, int, bool>;  // helix, offset, forward

// Offsets covered by bound domains, deletions included.
inline std::multiset<Slot> occupancy(const Design& d) {
  std::multiset<Slot> out;
  for (const auto& s : d.strands) {
    for (const auto& dom : s.domains) {
      if (const auto* b = std::get_if<BoundDomain>(&dom)) {
        for (int o = b->start; o < b->end; ++o) out.insert({b->helix, o, b->forward});
      }
    }
  }
  return out;
}

// Junction check for designs built only from nicks and full crossovers:
// consecutive bound domains must be antiparallel on different helices and
// meet at the same offset.
inline std::optional<std::string> junction_problem(const Design& d) {
  for (std::size_t s = 0; s < d.strands.size(); ++s) {
    const BoundDomain* prev = nullptr;
    bool loop_between = false;
    for (const auto& dom : d.strands[s].domains) {
      const auto* b = std::get_if<BoundDomain>(&dom);
      if (!b) {
        loop_between = true;
        continue;
      }
      if (b->start >= b->end) return "strand " + std::to_string(s) + " has an empty domain";
      if (prev && !loop_between) {
        const int o3 = prev->forward ? prev->end - 1 : prev->start;
        const int o5 = b->forward ? b->start : b->end - 1;
        if (prev->helix == b->helix) return "strand " + std::to_string(s) + " jumps within one helix";
        if (prev->forward == b->forward) return "strand " + std::to_string(s) + " crossover is parallel";
        if (o3 != o5) return "strand " + std::to_string(s) + " crossover offsets differ";
      }
      prev = b;
      loop_between = false;
    }
  }
  return std::nullopt;
}

}  // namespace scadkit::test
