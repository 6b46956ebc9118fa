#include "scadkit/model.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace scadkit {

std::string_view to_string(Grid grid) {
  switch (grid) {
    case Grid::square: return "square";
    case Grid::honeycomb: return "honeycomb";
    case Grid::hex: return "hex";
    case Grid::none: return "none";
  }
  return "none";
}

std::optional<Grid> grid_from_string(std::string_view text) {
  if (text == "square") return Grid::square;
  if (text == "honeycomb") return Grid::honeycomb;
  if (text == "hex") return Grid::hex;
  if (text == "none") return Grid::none;
  return std::nullopt;
}

std::optional<Color> Color::from_hex(std::string_view text) {
  if (text.size() != 7 || text[0] != '#') return std::nullopt;
  std::uint32_t value = 0;
  for (char c : text.substr(1)) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else return std::nullopt;
    value = (value << 4) | static_cast<std::uint32_t>(digit);
  }
  return Color{value};
}

std::string Color::to_hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%06x", static_cast<unsigned>(rgb & 0xffffffu));
  return buf;
}

bool is_palette_color(Color color) {
  return std::find(std::begin(kDefaultPalette), std::end(kDefaultPalette), color) !=
         std::end(kDefaultPalette);
}

bool BoundDomain::is_deleted(int offset) const {
  return std::find(deletions.begin(), deletions.end(), offset) != deletions.end();
}

int BoundDomain::insertion_length(int offset) const {
  for (const auto& ins : insertions) {
    if (ins.offset == offset) return ins.length;
  }
  return 0;
}

const BoundDomain& Strand::first_bound() const {
  for (const auto& d : domains) {
    if (const auto* b = std::get_if<BoundDomain>(&d)) return *b;
  }
  throw std::logic_error("strand has no bound domain");
}

const BoundDomain& Strand::last_bound() const {
  for (auto it = domains.rbegin(); it != domains.rend(); ++it) {
    if (const auto* b = std::get_if<BoundDomain>(&*it)) return *b;
  }
  throw std::logic_error("strand has no bound domain");
}

const Helix* Design::find_helix(int idx) const {
  for (const auto& h : helices) {
    if (h.idx == idx) return &h;
  }
  return nullptr;
}

const Helix& Design::helix(int idx) const {
  if (const Helix* h = find_helix(idx)) return *h;
  throw std::out_of_range("no helix with idx " + std::to_string(idx));
}

std::vector<OffsetBases> domain_base_offsets(const BoundDomain& domain) {
  std::vector<OffsetBases> out;
  if (domain.end <= domain.start) return out;
  out.reserve(static_cast<std::size_t>(domain.end - domain.start));
  auto emit = [&](int offset) {
    int bases = 1;
    if (domain.is_deleted(offset)) bases = 0;
    else if (int len = domain.insertion_length(offset); len > 0) bases = len + 1;
    out.push_back({offset, bases});
  };
  if (domain.forward) {
    for (int o = domain.start; o < domain.end; ++o) emit(o);
  } else {
    for (int o = domain.end - 1; o >= domain.start; --o) emit(o);
  }
  return out;
}

int domain_dna_length(const BoundDomain& domain) {
  int total = domain.end - domain.start - static_cast<int>(domain.deletions.size());
  for (const auto& ins : domain.insertions) total += ins.length;
  return total;
}

int domain_dna_length(const Domain& domain) {
  if (const auto* b = std::get_if<BoundDomain>(&domain)) return domain_dna_length(*b);
  return std::get<Loopout>(domain).length;
}

int strand_dna_length(const Strand& strand) {
  int total = 0;
  for (const auto& d : strand.domains) total += domain_dna_length(d);
  return total;
}

std::vector<BaseSlot> strand_base_slots(const Strand& strand) {
  std::vector<BaseSlot> slots;
  slots.reserve(static_cast<std::size_t>(std::max(0, strand_dna_length(strand))));
  for (const auto& d : strand.domains) {
    if (const auto* b = std::get_if<BoundDomain>(&d)) {
      for (const auto& [offset, bases] : domain_base_offsets(*b)) {
        for (int k = 0; k < bases; ++k) {
          slots.push_back({BasePosition{b->helix, offset, b->forward, k}, bases});
        }
      }
    } else {
      const int len = std::get<Loopout>(d).length;
      for (int k = 0; k < len; ++k) slots.push_back({std::nullopt, 1});
    }
  }
  return slots;
}

Color resolved_color(const Design& design, std::size_t strand_index) {
  const Strand& s = design.strands.at(strand_index);
  if (s.color) return *s.color;
  if (s.is_scaffold) return kScaffoldColor;
  return kDefaultPalette[strand_index % std::size(kDefaultPalette)];
}

Design with_resolved_colors(Design design) {
  for (std::size_t i = 0; i < design.strands.size(); ++i) {
    design.strands[i].color = resolved_color(design, i);
  }
  return design;
}

bool semantically_equal(const Design& a, const Design& b) {
  return with_resolved_colors(a) == with_resolved_colors(b);
}

std::vector<int> view_order(const Design& design) {
  if (design.helices_view_order) return *design.helices_view_order;
  std::vector<int> order;
  order.reserve(design.helices.size());
  for (const auto& h : design.helices) order.push_back(h.idx);
  std::sort(order.begin(), order.end());
  return order;
}

int scaffold_count(const Design& design) {
  return static_cast<int>(std::count_if(design.strands.begin(), design.strands.end(),
                                        [](const Strand& s) { return s.is_scaffold; }));
}

}  // namespace scadkit
