#include "scadkit/edit.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "scadkit/error.hpp"
#include "scadkit/validate.hpp"

namespace scadkit {
namespace {

std::string where(int helix, int offset, bool forward) {
  return "helix " + std::to_string(helix) + (forward ? " forward" : " reverse") + " offset " +
         std::to_string(offset);
}

Design finish(Design design, const char* op) {
  ValidationReport report = validate(design);
  if (!report.ok()) throw EditError(std::string(op) + " would produce an invalid design", report.errors);
  return design;
}

void require_helix(const Design& design, int helix) {
  if (!design.find_helix(helix)) throw EditError("helix " + std::to_string(helix) + " does not exist");
}

struct DomainRef {
  std::size_t strand;
  std::size_t domain;
};

std::optional<DomainRef> domain_at(const Design& design, int helix, int offset, bool forward) {
  for (std::size_t s = 0; s < design.strands.size(); ++s) {
    const auto& domains = design.strands[s].domains;
    for (std::size_t d = 0; d < domains.size(); ++d) {
      const auto* b = std::get_if<BoundDomain>(&domains[d]);
      if (b && b->helix == helix && b->forward == forward && b->contains(offset)) return DomainRef{s, d};
    }
  }
  return std::nullopt;
}

/// Index of the first base placed at `offset` by the given domain.
std::size_t base_index_of(const Strand& strand, std::size_t domain_index, int offset) {
  std::size_t index = 0;
  for (std::size_t d = 0; d < domain_index; ++d) {
    index += static_cast<std::size_t>(domain_dna_length(strand.domains[d]));
  }
  for (const auto& [o, bases] : domain_base_offsets(std::get<BoundDomain>(strand.domains[domain_index]))) {
    if (o == offset) break;
    index += static_cast<std::size_t>(bases);
  }
  return index;
}

/// Splits `b` into the part left of `offset` and the part from `offset` on.
std::pair<BoundDomain, BoundDomain> split_domain(const BoundDomain& b, int offset) {
  BoundDomain left = b;
  BoundDomain right = b;
  left.end = offset;
  right.start = offset;
  left.deletions.clear();
  right.deletions.clear();
  left.insertions.clear();
  right.insertions.clear();
  for (int o : b.deletions) (o < offset ? left : right).deletions.push_back(o);
  for (const auto& ins : b.insertions) (ins.offset < offset ? left : right).insertions.push_back(ins);
  return {std::move(left), std::move(right)};
}

/// Concatenates offset-adjacent pieces; `left` lies at lower offsets.
BoundDomain merge_domains(const BoundDomain& left, const BoundDomain& right, const Json& extras) {
  BoundDomain m = left;
  m.end = right.end;
  m.deletions.insert(m.deletions.end(), right.deletions.begin(), right.deletions.end());
  m.insertions.insert(m.insertions.end(), right.insertions.begin(), right.insertions.end());
  m.extra_fields = extras;
  return m;
}

/// Joins the 3' end of strand `i3` to the 5' end of strand `i5`.
Design join_strands(Design design, std::size_t i3, std::size_t i5) {
  if (i3 == i5) throw EditError("joining a strand to itself would make it circular");
  const Strand& a = design.strands[i3];
  const Strand& b = design.strands[i5];
  if (a.modification_3p) throw EditError("3' end to be joined carries a modification");
  if (b.modification_5p) throw EditError("5' end to be joined carries a modification");

  Strand merged = a;
  merged.color = resolved_color(design, i3);
  merged.is_scaffold = a.is_scaffold || b.is_scaffold;
  merged.modification_3p = b.modification_3p;

  const int len_a = strand_dna_length(a);
  const int len_b = strand_dna_length(b);
  for (const auto& [index, id] : b.modifications_internal) merged.modifications_internal[index + len_a] = id;
  if (a.sequence || b.sequence) {
    merged.sequence = a.sequence.value_or(std::string(static_cast<std::size_t>(len_a), '?')) +
                      b.sequence.value_or(std::string(static_cast<std::size_t>(len_b), '?'));
  }

  auto* tail = std::get_if<BoundDomain>(&merged.domains.back());
  const auto* head = std::get_if<BoundDomain>(&b.domains.front());
  auto rest = b.domains.begin();
  if (tail && head && tail->helix == head->helix && tail->forward == head->forward) {
    if (tail->forward && tail->end == head->start) {
      *tail = merge_domains(*tail, *head, tail->extra_fields);
      ++rest;
    } else if (!tail->forward && head->end == tail->start) {
      *tail = merge_domains(*head, *tail, tail->extra_fields);
      ++rest;
    }
  }
  merged.domains.insert(merged.domains.end(), rest, b.domains.end());

  const std::size_t keep = std::min(i3, i5);
  const std::size_t drop = std::max(i3, i5);
  design.strands[keep] = std::move(merged);
  design.strands.erase(design.strands.begin() + static_cast<std::ptrdiff_t>(drop));
  return design;
}

struct StrandEnd {
  std::size_t strand;
  bool three_prime;
};

std::vector<StrandEnd> ends_at(const Design& design, int helix, int offset, bool forward) {
  std::vector<StrandEnd> ends;
  for (std::size_t s = 0; s < design.strands.size(); ++s) {
    const Strand& strand = design.strands[s];
    if (strand.domains.empty()) continue;
    const auto* first = std::get_if<BoundDomain>(&strand.domains.front());
    const auto* last = std::get_if<BoundDomain>(&strand.domains.back());
    if (first && first->helix == helix && first->forward == forward && first->offset_5p() == offset) {
      ends.push_back({s, false});
    }
    if (last && last->helix == helix && last->forward == forward && last->offset_3p() == offset) {
      ends.push_back({s, true});
    }
  }
  return ends;
}

void shift_after(std::map<int, std::string>& mods, std::size_t index, int delta) {
  std::map<int, std::string> out;
  for (auto& [i, id] : mods) {
    out[i > static_cast<int>(index) ? i + delta : i] = std::move(id);
  }
  mods = std::move(out);
}

template <typename Apply>
Design edit_domains_at(const Design& input, int helix, int offset, const char* op, Apply apply) {
  require_helix(input, helix);
  Design design = with_resolved_colors(input);
  bool touched = false;
  for (auto& strand : design.strands) {
    for (std::size_t d = 0; d < strand.domains.size(); ++d) {
      auto* b = std::get_if<BoundDomain>(&strand.domains[d]);
      if (!b || b->helix != helix || !b->contains(offset)) continue;
      apply(strand, d, *b);
      touched = true;
    }
  }
  if (!touched) throw EditError(std::string(op) + ": no domain at helix " + std::to_string(helix) +
                                " offset " + std::to_string(offset));
  return finish(std::move(design), op);
}

}  // namespace

Strand make_strand(int helix, bool forward, int start, int end) {
  Strand s;
  BoundDomain d;
  d.helix = helix;
  d.forward = forward;
  d.start = start;
  d.end = end;
  s.domains.push_back(std::move(d));
  return s;
}

Design add_strand(const Design& input, Strand strand) {
  Design design = with_resolved_colors(input);
  const std::size_t index = design.strands.size();
  design.strands.push_back(std::move(strand));
  design.strands[index].color = resolved_color(design, index);
  return finish(std::move(design), "add_strand");
}

Design add_nick(const Design& input, int helix, int offset, bool forward) {
  require_helix(input, helix);
  auto ref = domain_at(input, helix, offset, forward);
  if (!ref) throw EditError("add_nick: no domain at " + where(helix, offset, forward));
  const auto& target = std::get<BoundDomain>(input.strands[ref->strand].domains[ref->domain]);
  if (offset == target.start) {
    throw EditError("add_nick: no bond to break at " + where(helix, offset, forward));
  }

  Design design = with_resolved_colors(input);
  const Strand original = design.strands[ref->strand];
  auto [left, right] = split_domain(target, offset);
  BoundDomain piece_5p = forward ? left : right;
  BoundDomain piece_3p = forward ? right : left;

  Strand first = original;
  Strand second = original;
  first.domains.assign(original.domains.begin(),
                       original.domains.begin() + static_cast<std::ptrdiff_t>(ref->domain));
  first.domains.push_back(std::move(piece_5p));
  second.domains.clear();
  second.domains.push_back(std::move(piece_3p));
  second.domains.insert(second.domains.end(),
                        original.domains.begin() + static_cast<std::ptrdiff_t>(ref->domain) + 1,
                        original.domains.end());

  first.modification_3p.reset();
  second.modification_5p.reset();
  const int split = strand_dna_length(first);
  first.modifications_internal.clear();
  second.modifications_internal.clear();
  for (const auto& [index, id] : original.modifications_internal) {
    if (index < split) first.modifications_internal[index] = id;
    else second.modifications_internal[index - split] = id;
  }
  if (original.sequence) {
    first.sequence = original.sequence->substr(0, static_cast<std::size_t>(split));
    second.sequence = original.sequence->substr(static_cast<std::size_t>(split));
  }

  const auto at = design.strands.begin() + static_cast<std::ptrdiff_t>(ref->strand);
  *at = std::move(first);
  design.strands.insert(at + 1, std::move(second));
  return finish(std::move(design), "add_nick");
}

Design ligate(const Design& input, int helix, int offset, bool forward) {
  require_helix(input, helix);
  // The 3' end sits at offset-1 going forward, at offset going in reverse.
  const int three_prime_at = forward ? offset - 1 : offset;
  const int five_prime_at = forward ? offset : offset - 1;
  std::optional<std::size_t> i3, i5;
  for (const auto& e : ends_at(input, helix, three_prime_at, forward)) {
    if (e.three_prime) i3 = e.strand;
  }
  for (const auto& e : ends_at(input, helix, five_prime_at, forward)) {
    if (!e.three_prime) i5 = e.strand;
  }
  if (!i3 || !i5) throw EditError("ligate: no nick at " + where(helix, offset, forward));
  return finish(join_strands(with_resolved_colors(input), *i3, *i5), "ligate");
}

Design add_half_crossover(const Design& input, const CrossoverSpec& spec) {
  require_helix(input, spec.helix1);
  require_helix(input, spec.helix2);
  if (spec.helix1 == spec.helix2) throw EditError("crossover helices must differ");
  const bool forward2 = !spec.forward1;
  const auto ends1 = ends_at(input, spec.helix1, spec.offset1, spec.forward1);
  const auto ends2 = ends_at(input, spec.helix2, spec.offset1, forward2);
  for (const auto& e1 : ends1) {
    for (const auto& e2 : ends2) {
      if (e1.three_prime == e2.three_prime) continue;
      const std::size_t i3 = e1.three_prime ? e1.strand : e2.strand;
      const std::size_t i5 = e1.three_prime ? e2.strand : e1.strand;
      return finish(join_strands(with_resolved_colors(input), i3, i5), "add_half_crossover");
    }
  }
  throw EditError("add_half_crossover: no matching 3'/5' strand ends at " +
                  where(spec.helix1, spec.offset1, spec.forward1) + " and " +
                  where(spec.helix2, spec.offset1, forward2));
}

Design add_full_crossover(const Design& input, const CrossoverSpec& spec) {
  require_helix(input, spec.helix1);
  require_helix(input, spec.helix2);
  if (spec.helix1 == spec.helix2) throw EditError("crossover helices must differ");
  const int o = spec.offset1;
  Design design = input;
  for (auto [helix, forward] : {std::pair{spec.helix1, spec.forward1}, std::pair{spec.helix2, !spec.forward1}}) {
    auto right = domain_at(design, helix, o, forward);
    auto left = domain_at(design, helix, o - 1, forward);
    if (!right || !left) {
      throw EditError("add_full_crossover: no domains on both sides of " + where(helix, o, forward));
    }
    if (right->strand == left->strand && right->domain == left->domain) {
      design = add_nick(design, helix, o, forward);
    }
  }
  CrossoverSpec half = spec;
  half.half = true;
  half.offset1 = o - 1;
  design = add_half_crossover(design, half);
  half.offset1 = o;
  return add_half_crossover(design, half);
}

Design add_crossovers(const Design& design, std::span<const CrossoverSpec> specs) {
  Design out = design;
  for (const auto& spec : specs) {
    out = spec.half ? add_half_crossover(out, spec) : add_full_crossover(out, spec);
  }
  return out;
}

Design add_deletion(const Design& design, int helix, int offset) {
  return edit_domains_at(design, helix, offset, "add_deletion", [&](Strand& strand, std::size_t d, BoundDomain& b) {
    if (b.is_deleted(offset)) throw EditError("add_deletion: offset already deleted at " + where(helix, offset, b.forward));
    if (b.insertion_length(offset) > 0) {
      throw EditError("add_deletion: offset holds an insertion at " + where(helix, offset, b.forward));
    }
    const std::size_t base = base_index_of(strand, d, offset);
    if (strand.modifications_internal.count(static_cast<int>(base))) {
      throw EditError("add_deletion: base carries an internal modification at " + where(helix, offset, b.forward));
    }
    if (strand.sequence && base < strand.sequence->size()) strand.sequence->erase(base, 1);
    shift_after(strand.modifications_internal, base, -1);
    b.deletions.insert(std::upper_bound(b.deletions.begin(), b.deletions.end(), offset), offset);
  });
}

Design add_insertion(const Design& design, int helix, int offset, int length) {
  if (length < 1) throw EditError("add_insertion: length must be at least 1");
  return edit_domains_at(design, helix, offset, "add_insertion", [&](Strand& strand, std::size_t d, BoundDomain& b) {
    if (b.insertion_length(offset) > 0) {
      throw EditError("add_insertion: offset already has an insertion at " + where(helix, offset, b.forward));
    }
    if (b.is_deleted(offset)) throw EditError("add_insertion: offset is deleted at " + where(helix, offset, b.forward));
    const std::size_t base = base_index_of(strand, d, offset);
    if (strand.sequence && base < strand.sequence->size()) {
      strand.sequence->insert(base + 1, static_cast<std::size_t>(length), '?');
    }
    shift_after(strand.modifications_internal, base, length);
    auto pos = std::find_if(b.insertions.begin(), b.insertions.end(),
                            [&](const Insertion& i) { return i.offset > offset; });
    b.insertions.insert(pos, Insertion{offset, length});
  });
}

Design set_scaffold(const Design& input, std::size_t strand_index) {
  if (strand_index >= input.strands.size()) {
    throw EditError("set_scaffold: no strand " + std::to_string(strand_index));
  }
  Design design = input;
  Strand& s = design.strands[strand_index];
  s.is_scaffold = true;
  if (s.color && is_palette_color(*s.color)) s.color = kScaffoldColor;
  return finish(std::move(design), "set_scaffold");
}

Design copy_translate_strands(const Design& input, std::span<const std::size_t> strand_indices,
                              int delta_view_rows, int delta_offset) {
  const std::vector<int> order = view_order(input);
  std::map<int, int> row_of;
  for (std::size_t r = 0; r < order.size(); ++r) row_of[order[r]] = static_cast<int>(r);

  Design design = with_resolved_colors(input);
  std::vector<Finding> problems;
  std::vector<Strand> copies;
  for (std::size_t index : strand_indices) {
    const std::string path = "strands[" + std::to_string(index) + "]";
    if (index >= input.strands.size()) {
      problems.push_back({path, "strand does not exist"});
      continue;
    }
    Strand copy = design.strands[index];
    copy.sequence.reset();
    for (std::size_t d = 0; d < copy.domains.size(); ++d) {
      auto* b = std::get_if<BoundDomain>(&copy.domains[d]);
      if (!b) continue;
      const std::string dpath = path + ".domains[" + std::to_string(d) + "]";
      auto row = row_of.find(b->helix);
      const int target_row = row == row_of.end() ? -1 : row->second + delta_view_rows;
      if (row == row_of.end() || target_row < 0 || target_row >= static_cast<int>(order.size())) {
        problems.push_back({dpath, "no helix " + std::to_string(delta_view_rows) + " rows away"});
        continue;
      }
      const Helix& target = input.helix(order[static_cast<std::size_t>(target_row)]);
      b->helix = target.idx;
      b->start += delta_offset;
      b->end += delta_offset;
      for (int& o : b->deletions) o += delta_offset;
      for (auto& ins : b->insertions) ins.offset += delta_offset;
      if (b->start < target.min_offset || b->end > target.max_offset.value_or(b->end)) {
        problems.push_back({dpath, "translated domain [" + std::to_string(b->start) + ", " +
                                       std::to_string(b->end) + ") does not fit helix " +
                                       std::to_string(target.idx)});
      }
    }
    copies.push_back(std::move(copy));
  }
  if (!problems.empty()) throw EditError("copy_translate_strands: target out of bounds", problems);
  for (auto& c : copies) design.strands.push_back(std::move(c));
  return finish(std::move(design), "copy_translate_strands");
}

}  // namespace scadkit
