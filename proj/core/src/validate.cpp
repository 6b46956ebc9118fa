#include "scadkit/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>

namespace scadkit {
namespace {

std::string helix_path(std::size_t i) { return "helices[" + std::to_string(i) + "]"; }
std::string strand_path(std::size_t i) { return "strands[" + std::to_string(i) + "]"; }
std::string domain_path(std::size_t s, std::size_t d) {
  return strand_path(s) + ".domains[" + std::to_string(d) + "]";
}

class Checker {
 public:
  explicit Checker(const Design& design) : design_(design) {}

  ValidationReport run() {
    check_helices();
    check_view_order();
    check_modification_table();
    for (std::size_t s = 0; s < design_.strands.size(); ++s) check_strand(s);
    check_overlaps();
    check_modification_usage();
    return std::move(report_);
  }

 private:
  void error(std::string path, std::string message) {
    report_.errors.push_back({std::move(path), std::move(message)});
  }
  void warning(std::string path, std::string message) {
    report_.warnings.push_back({std::move(path), std::move(message)});
  }

  void check_helices() {
    std::set<int> seen;
    for (std::size_t i = 0; i < design_.helices.size(); ++i) {
      const Helix& h = design_.helices[i];
      const std::string path = helix_path(i);
      if (!seen.insert(h.idx).second) {
        error(path, "duplicate helix idx " + std::to_string(h.idx));
      }
      if (design_.grid != Grid::none) {
        if (!h.grid_position) error(path, "helix in a grid design needs grid_position");
        if (h.position) error(path, "helix in a grid design must not have position");
      } else {
        if (!h.position) error(path, "helix in a gridless design needs position");
        if (h.grid_position) error(path, "helix in a gridless design must not have grid_position");
      }
      if (!h.max_offset) {
        error(path, "max_offset is required");
      } else if (h.min_offset >= *h.max_offset) {
        error(path, "min_offset must be less than max_offset");
      }
      if (h.major_tick_distance && *h.major_tick_distance <= 0) {
        error(path + ".major_tick_distance", "must be positive");
      }
      if (h.major_tick_marks) {
        const auto& ticks = *h.major_tick_marks;
        for (std::size_t t = 0; t < ticks.size(); ++t) {
          if (t > 0 && ticks[t] <= ticks[t - 1]) {
            error(path + ".major_tick_marks", "tick marks must strictly increase");
            break;
          }
        }
        const int hi = h.max_offset.value_or(h.min_offset);
        for (int t : ticks) {
          if (t < h.min_offset || t > hi) {
            error(path + ".major_tick_marks",
                  "tick mark " + std::to_string(t) + " outside [min_offset, max_offset]");
            break;
          }
        }
      }
    }
  }

  void check_view_order() {
    if (!design_.helices_view_order) return;
    std::vector<int> order = *design_.helices_view_order;
    std::vector<int> idxs;
    for (const auto& h : design_.helices) idxs.push_back(h.idx);
    std::sort(order.begin(), order.end());
    std::sort(idxs.begin(), idxs.end());
    if (order != idxs) {
      error("helices_view_order", "must be a permutation of the helix idx values");
    }
  }

  void check_modification_table() {
    for (const auto& [id, mod] : design_.modifications) {
      const std::string path = "modifications_in_design." + id;
      if (mod.display_text.empty()) error(path, "display_text must be nonempty");
      if (mod.idt_text.empty()) error(path, "idt_text must be nonempty");
    }
  }

  void check_mod_ref(const std::string& path, const std::string& id,
                     ModificationLocation expected) {
    used_mods_.insert(id);
    auto it = design_.modifications.find(id);
    if (it == design_.modifications.end()) {
      error(path, "unknown modification id \"" + id + "\"");
    } else if (it->second.location != expected) {
      warning(path, "modification \"" + id + "\" is declared for a different location");
    }
  }

  void check_strand(std::size_t s) {
    const Strand& strand = design_.strands[s];
    const std::string path = strand_path(s);
    if (strand.domains.empty()) {
      error(path, "strand must have at least one domain");
      return;
    }
    if (!is_bound(strand.domains.front()) || !is_bound(strand.domains.back())) {
      error(path, "loopout cannot be first or last domain");
    }
    for (std::size_t d = 0; d < strand.domains.size(); ++d) {
      const Domain& dom = strand.domains[d];
      if (d > 0 && !is_bound(dom) && !is_bound(strand.domains[d - 1])) {
        error(domain_path(s, d), "two loopouts cannot be consecutive");
      }
      if (const auto* b = std::get_if<BoundDomain>(&dom)) {
        check_bound_domain(s, d, *b);
      } else if (std::get<Loopout>(dom).length < 1) {
        error(domain_path(s, d), "loopout length must be at least 1");
      }
    }

    const int length = strand_dna_length(strand);
    if (strand.sequence) {
      const std::string& seq = *strand.sequence;
      if (static_cast<int>(seq.size()) != length) {
        error(path + ".sequence", "sequence length " + std::to_string(seq.size()) +
                                      " does not match strand length " + std::to_string(length));
      }
      if (seq.find_first_not_of("ACGT?") != std::string::npos) {
        error(path + ".sequence", "sequence may only contain A, C, G, T and ?");
      } else if (seq.find('?') != std::string::npos) {
        warning(path + ".sequence", "sequence has unassigned bases");
      }
    }

    if (strand.modification_5p) {
      check_mod_ref(path + ".5prime_modification", *strand.modification_5p,
                    ModificationLocation::five_prime);
    }
    if (strand.modification_3p) {
      check_mod_ref(path + ".3prime_modification", *strand.modification_3p,
                    ModificationLocation::three_prime);
    }
    for (const auto& [index, id] : strand.modifications_internal) {
      const std::string p = path + ".internal_modifications." + std::to_string(index);
      check_mod_ref(p, id, ModificationLocation::internal);
      if (index < 0 || index >= length) error(p, "base index outside the strand");
    }
  }

  void check_bound_domain(std::size_t s, std::size_t d, const BoundDomain& b) {
    const std::string path = domain_path(s, d);
    const Helix* helix = design_.find_helix(b.helix);
    if (!helix) {
      error(path, "helix " + std::to_string(b.helix) + " does not exist");
    }
    if (b.start >= b.end) {
      error(path, "start must be less than end");
      return;
    }
    if (helix) {
      if (b.start < helix->min_offset) error(path, "start is below the helix min_offset");
      if (helix->max_offset && b.end > *helix->max_offset) {
        error(path, "end is beyond the helix max_offset");
      }
    }
    std::set<int> deleted;
    for (int o : b.deletions) {
      if (!b.contains(o)) error(path + ".deletions", "deletion " + std::to_string(o) + " outside domain");
      if (!deleted.insert(o).second) error(path + ".deletions", "duplicate deletion " + std::to_string(o));
    }
    std::set<int> inserted;
    for (const auto& ins : b.insertions) {
      const std::string o = std::to_string(ins.offset);
      if (!b.contains(ins.offset)) error(path + ".insertions", "insertion " + o + " outside domain");
      if (ins.length < 1) error(path + ".insertions", "insertion " + o + " must have length >= 1");
      if (!inserted.insert(ins.offset).second) error(path + ".insertions", "duplicate insertion " + o);
      if (deleted.count(ins.offset)) {
        error(path + ".insertions", "offset " + o + " is both a deletion and an insertion");
      }
    }
    if (domain_dna_length(b) < 1) error(path, "domain must contain at least one base");
    spans_[{b.helix, b.forward}].push_back({b.start, b.end, s, d});
  }

  void check_overlaps() {
    for (auto& [key, spans] : spans_) {
      std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
        return std::tie(a.start, a.end) < std::tie(b.start, b.end);
      });
      // Compare each span against the furthest-reaching one seen so far.
      std::size_t reach = 0;
      for (std::size_t i = 1; i < spans.size(); ++i) {
        if (spans[i].start < spans[reach].end) {
          error(domain_path(spans[i].strand, spans[i].domain),
                "overlaps " + domain_path(spans[reach].strand, spans[reach].domain) + " on helix " +
                    std::to_string(key.first) + (key.second ? " forward" : " reverse"));
        }
        if (spans[i].end > spans[reach].end) reach = i;
      }
    }
  }

  void check_modification_usage() {
    for (const auto& [id, mod] : design_.modifications) {
      if (!used_mods_.count(id)) warning("modifications_in_design." + id, "modification is unused");
    }
  }

  struct Span {
    int start;
    int end;
    std::size_t strand;
    std::size_t domain;
  };

  const Design& design_;
  ValidationReport report_;
  std::map<std::pair<int, bool>, std::vector<Span>> spans_;
  std::set<std::string> used_mods_;
};

}  // namespace

ValidationReport validate(const Design& design) { return Checker(design).run(); }

void require_valid(const Design& design) {
  ValidationReport report = validate(design);
  if (!report.ok()) throw InvalidDesign("design is invalid", std::move(report.errors));
}

}  // namespace scadkit
