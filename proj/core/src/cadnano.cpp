#include "scadkit/cadnano.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "scadkit/codec.hpp"
#include "scadkit/validate.hpp"

namespace scadkit::cadnano {
namespace {

std::string strand_path(std::size_t s) { return "strands[" + std::to_string(s) + "]"; }

/// cadnano's convention: scaffold runs forward on even helices.
bool parity_forward(int helix, bool scaffold) {
  const bool even = helix % 2 == 0;
  return scaffold ? even : !even;
}

struct Base {
  int helix;
  int offset;
  bool operator<(const Base& o) const { return std::tie(helix, offset) < std::tie(o.helix, o.offset); }
  bool operator==(const Base&) const = default;
};

}  // namespace

int pad_max_offset(int max_offset, Grid grid) {
  int unit = 0;
  if (grid == Grid::square) unit = 32;
  else if (grid == Grid::honeycomb) unit = 21;
  else throw ExportError("cadnano v2 supports only square and honeycomb grids, not " + std::string(to_string(grid)));
  if (max_offset <= 0) return 0;
  return (max_offset + unit - 1) / unit * unit;
}

std::vector<Finding> export_issues(const Design& design) {
  std::vector<Finding> issues;
  if (design.grid != Grid::square && design.grid != Grid::honeycomb) {
    issues.push_back({"grid", "cadnano v2 cannot encode a " + std::string(to_string(design.grid)) +
                                  " grid (only square and honeycomb)"});
  }
  for (std::size_t i = 0; i < design.helices.size(); ++i) {
    if (design.helices[i].min_offset < 0) {
      issues.push_back({"helices[" + std::to_string(i) + "]", "cadnano v2 cannot encode negative offsets"});
    }
  }
  for (std::size_t s = 0; s < design.strands.size(); ++s) {
    const Strand& strand = design.strands[s];
    const std::string path = strand_path(s);
    for (std::size_t d = 0; d < strand.domains.size(); ++d) {
      const std::string dpath = path + ".domains[" + std::to_string(d) + "]";
      const auto* b = std::get_if<BoundDomain>(&strand.domains[d]);
      if (!b) {
        issues.push_back({dpath, "cadnano v2 cannot encode a loopout"});
        continue;
      }
      if (b->forward != parity_forward(b->helix, strand.is_scaffold)) {
        issues.push_back({dpath, std::string(strand.is_scaffold ? "scaffold" : "staple") + " runs " +
                                     (b->forward ? "forward" : "reverse") + " on " +
                                     (b->helix % 2 == 0 ? "even" : "odd") + " helix " +
                                     std::to_string(b->helix) +
                                     "; cadnano v2 requires the scaffold forward on even helices and reverse on odd"});
      }
    }
    int offsets = 0;
    for (const auto& d : strand.domains) {
      if (const auto* b = std::get_if<BoundDomain>(&d)) offsets += b->end - b->start;
    }
    if (offsets == 1) {
      issues.push_back({path, "cadnano v2 cannot encode a strand covering a single offset"});
    }
    if (strand.modification_5p || strand.modification_3p || !strand.modifications_internal.empty()) {
      issues.push_back({path, "cadnano v2 cannot encode a modification"});
    }
  }
  return issues;
}

Document to_document(const Design& design, std::string name) {
  Document doc;
  doc.name = std::move(name);
  int max_offset = 0;
  for (const auto& h : design.helices) max_offset = std::max(max_offset, h.max_offset.value_or(0));
  const int length = design.helices.empty() ? 0 : pad_max_offset(max_offset, design.grid);
  const auto n = static_cast<std::size_t>(length);

  std::vector<const Helix*> helices;
  for (const auto& h : design.helices) helices.push_back(&h);
  std::sort(helices.begin(), helices.end(), [](const Helix* a, const Helix* b) { return a->idx < b->idx; });
  std::map<int, std::size_t> slot;
  for (const Helix* h : helices) {
    VStrand v;
    v.num = h->idx;
    if (h->grid_position) {
      v.row = h->grid_position->v;
      v.col = h->grid_position->h;
    }
    v.scaf.assign(n, kNoLink);
    v.stap.assign(n, kNoLink);
    v.skip.assign(n, 0);
    v.loop.assign(n, 0);
    slot[h->idx] = doc.vstrands.size();
    doc.vstrands.push_back(std::move(v));
  }

  for (std::size_t s = 0; s < design.strands.size(); ++s) {
    const Strand& strand = design.strands[s];
    std::vector<Base> walk;
    for (const auto& d : strand.domains) {
      const auto* b = std::get_if<BoundDomain>(&d);
      if (!b) continue;
      VStrand& v = doc.vstrands[slot.at(b->helix)];
      for (int o : b->deletions) v.skip[static_cast<std::size_t>(o)] = -1;
      for (const auto& ins : b->insertions) v.loop[static_cast<std::size_t>(ins.offset)] = ins.length;
      for (const auto& ob : domain_base_offsets(*b)) walk.push_back({b->helix, ob.offset});
    }
    auto links = [&](const Base& base) -> Link& {
      VStrand& v = doc.vstrands[slot.at(base.helix)];
      auto& arr = strand.is_scaffold ? v.scaf : v.stap;
      return arr[static_cast<std::size_t>(base.offset)];
    };
    for (std::size_t i = 0; i < walk.size(); ++i) {
      Link& l = links(walk[i]);
      if (i > 0) {
        l[0] = walk[i - 1].helix;
        l[1] = walk[i - 1].offset;
      }
      if (i + 1 < walk.size()) {
        l[2] = walk[i + 1].helix;
        l[3] = walk[i + 1].offset;
      }
    }
    if (!strand.is_scaffold && !walk.empty()) {
      doc.vstrands[slot.at(walk.front().helix)].stap_colors.push_back(
          {walk.front().offset, static_cast<int>(resolved_color(design, s).rgb)});
    }
  }
  for (auto& v : doc.vstrands) std::sort(v.stap_colors.begin(), v.stap_colors.end());
  return doc;
}

Json to_json(const Document& doc) {
  Json root = Json::object();
  root["name"] = doc.name;
  Json vstrands = Json::array();
  for (const auto& v : doc.vstrands) {
    Json jv = Json::object();
    jv["num"] = v.num;
    jv["row"] = v.row;
    jv["col"] = v.col;
    jv["scaf"] = v.scaf;
    jv["stap"] = v.stap;
    jv["loop"] = v.loop;
    jv["skip"] = v.skip;
    jv["stap_colors"] = v.stap_colors;
    jv["scafLoop"] = Json::array();
    jv["stapLoop"] = Json::array();
    vstrands.push_back(std::move(jv));
  }
  root["vstrands"] = std::move(vstrands);
  return root;
}

std::string export_cadnano_v2(const Design& design, std::string name) {
  require_valid(design);
  auto issues = export_issues(design);
  if (!issues.empty()) throw ExportError("design cannot be exported to cadnano v2", std::move(issues));
  return to_json(to_document(design, std::move(name))).dump();
}

namespace {

int get_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw FormatError(what + ": expected an integer");
  return v.get<int>();
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(where + ": missing \"" + key + "\"");
  return *it;
}

std::vector<Link> get_links(const Json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(where + ": expected an array");
  std::vector<Link> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Json& e = v[i];
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 4) throw FormatError(w + ": expected 4 integers");
    out.push_back({get_int(e[0], w), get_int(e[1], w), get_int(e[2], w), get_int(e[3], w)});
  }
  return out;
}

std::vector<int> get_ints(const Json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(where + ": expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_int(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Document document_from_json(const Json& root) {
  if (!root.is_object()) throw FormatError("cadnano document must be a JSON object");
  Document doc;
  if (auto it = root.find("name"); it != root.end() && it->is_string()) doc.name = it->get<std::string>();
  const Json& vstrands = member(root, "vstrands", "$");
  if (!vstrands.is_array()) throw FormatError("vstrands: expected an array");
  for (std::size_t i = 0; i < vstrands.size(); ++i) {
    const Json& jv = vstrands[i];
    const std::string w = "vstrands[" + std::to_string(i) + "]";
    if (!jv.is_object()) throw FormatError(w + ": expected an object");
    VStrand v;
    v.num = get_int(member(jv, "num", w), w + ".num");
    v.row = get_int(member(jv, "row", w), w + ".row");
    v.col = get_int(member(jv, "col", w), w + ".col");
    v.scaf = get_links(member(jv, "scaf", w), w + ".scaf");
    v.stap = get_links(member(jv, "stap", w), w + ".stap");
    v.skip = get_ints(member(jv, "skip", w), w + ".skip");
    v.loop = get_ints(member(jv, "loop", w), w + ".loop");
    if (auto it = jv.find("stap_colors"); it != jv.end()) {
      if (!it->is_array()) throw FormatError(w + ".stap_colors: expected an array");
      for (const auto& pair : *it) {
        if (!pair.is_array() || pair.size() != 2) throw FormatError(w + ".stap_colors: expected [offset, color] pairs");
        v.stap_colors.push_back({get_int(pair[0], w + ".stap_colors"), get_int(pair[1], w + ".stap_colors")});
      }
    }
    for (const char* key : {"scafLoop", "stapLoop"}) {
      if (auto it = jv.find(key); it != jv.end() && !(it->is_array() && it->empty())) {
        throw FormatError(w + "." + key + ": circular strands are not supported");
      }
    }
    doc.vstrands.push_back(std::move(v));
  }
  return doc;
}

namespace {

class Tracer {
 public:
  explicit Tracer(const Document& doc) : doc_(doc) {
    for (std::size_t i = 0; i < doc.vstrands.size(); ++i) {
      if (!index_.emplace(doc.vstrands[i].num, i).second) {
        throw FormatError("duplicate vstrand num " + std::to_string(doc.vstrands[i].num));
      }
    }
  }

  std::vector<Strand> trace(bool scaffold) {
    std::vector<Strand> strands;
    std::set<Base> visited;
    for (const auto& v : doc_.vstrands) {
      const auto& arr = scaffold ? v.scaf : v.stap;
      for (std::size_t o = 0; o < arr.size(); ++o) {
        const Link& l = arr[o];
        if (l == kNoLink || l[0] != -1 || l[1] != -1) continue;
        strands.push_back(walk({v.num, static_cast<int>(o)}, scaffold, visited));
      }
    }
    for (const auto& v : doc_.vstrands) {
      const auto& arr = scaffold ? v.scaf : v.stap;
      for (std::size_t o = 0; o < arr.size(); ++o) {
        if (arr[o] != kNoLink && !visited.count({v.num, static_cast<int>(o)})) {
          throw FormatError(std::string(scaffold ? "scaf" : "stap") + " strand through helix " +
                            std::to_string(v.num) + " offset " + std::to_string(o) +
                            " is circular; circular strands are not supported");
        }
      }
    }
    return strands;
  }

 private:
  const VStrand& vstrand(int num, const std::string& context) const {
    auto it = index_.find(num);
    if (it == index_.end()) throw FormatError(context + " refers to missing helix " + std::to_string(num));
    return doc_.vstrands[it->second];
  }

  const Link& link(const Base& b, bool scaffold, const std::string& context) const {
    const VStrand& v = vstrand(b.helix, context);
    const auto& arr = scaffold ? v.scaf : v.stap;
    if (b.offset < 0 || static_cast<std::size_t>(b.offset) >= arr.size()) {
      throw FormatError(context + " refers to offset " + std::to_string(b.offset) + " outside helix " +
                        std::to_string(b.helix));
    }
    return arr[static_cast<std::size_t>(b.offset)];
  }

  Strand walk(Base start, bool scaffold, std::set<Base>& visited) {
    std::vector<Base> bases;
    Base cur = start;
    for (;;) {
      if (!visited.insert(cur).second) {
        throw FormatError("strand revisits helix " + std::to_string(cur.helix) + " offset " +
                          std::to_string(cur.offset));
      }
      bases.push_back(cur);
      const std::string here = "helix " + std::to_string(cur.helix) + " offset " + std::to_string(cur.offset);
      const Link& l = link(cur, scaffold, here);
      if (l[2] == -1 && l[3] == -1) break;
      const Base next{l[2], l[3]};
      const Link& back = link(next, scaffold, here);
      if (back[0] != cur.helix || back[1] != cur.offset) {
        throw FormatError(here + ": 3' neighbor does not link back (dangling reference)");
      }
      cur = next;
    }

    Strand strand;
    strand.is_scaffold = scaffold;
    std::size_t i = 0;
    while (i < bases.size()) {
      const int helix = bases[i].helix;
      const bool forward = parity_forward(helix, scaffold);
      const int step = forward ? 1 : -1;
      std::size_t j = i + 1;
      while (j < bases.size() && bases[j].helix == helix && bases[j].offset == bases[j - 1].offset + step) ++j;
      BoundDomain d;
      d.helix = helix;
      d.forward = forward;
      const int a = bases[i].offset;
      const int b = bases[j - 1].offset;
      d.start = std::min(a, b);
      d.end = std::max(a, b) + 1;
      if (forward ? a > b : a < b) {
        throw FormatError("helix " + std::to_string(helix) + " offset " + std::to_string(a) +
                          ": strand direction breaks the scaffold/staple parity convention");
      }
      const VStrand& v = vstrand(helix, "domain");
      for (int o = d.start; o < d.end; ++o) {
        const auto uo = static_cast<std::size_t>(o);
        if (uo < v.skip.size() && v.skip[uo] == -1) d.deletions.push_back(o);
        if (uo < v.loop.size() && v.loop[uo] > 0) d.insertions.push_back({o, v.loop[uo]});
      }
      strand.domains.push_back(std::move(d));
      i = j;
    }

    if (scaffold) {
      strand.color = kScaffoldColor;
    } else {
      for (const auto& [offset, rgb] : vstrand(start.helix, "color").stap_colors) {
        if (offset == start.offset) strand.color = Color{static_cast<std::uint32_t>(rgb) & 0xffffffu};
      }
    }
    return strand;
  }

  const Document& doc_;
  std::map<int, std::size_t> index_;
};

}  // namespace

Design from_document(const Document& doc) {
  Design design;
  std::size_t length = 0;
  if (!doc.vstrands.empty()) length = doc.vstrands.front().scaf.size();
  for (const auto& v : doc.vstrands) {
    const std::string w = "vstrand " + std::to_string(v.num);
    if (v.scaf.size() != length || v.stap.size() != length || v.skip.size() != length ||
        v.loop.size() != length) {
      throw FormatError(w + ": scaf/stap/skip/loop arrays must all have length " + std::to_string(length));
    }
  }
  const auto L = static_cast<int>(length);
  design.grid = (L > 0 && L % 21 == 0 && L % 32 != 0) ? Grid::honeycomb : Grid::square;

  std::vector<const VStrand*> sorted;
  for (const auto& v : doc.vstrands) sorted.push_back(&v);
  std::sort(sorted.begin(), sorted.end(), [](const VStrand* a, const VStrand* b) { return a->num < b->num; });
  for (const VStrand* v : sorted) {
    Helix h;
    h.idx = v->num;
    h.max_offset = L;
    h.grid_position = GridPosition{v->col, v->row};
    design.helices.push_back(std::move(h));
  }

  Tracer tracer(doc);
  for (bool scaffold : {true, false}) {
    for (auto& s : tracer.trace(scaffold)) design.strands.push_back(std::move(s));
  }
  if (!doc.name.empty()) design.extra_fields["cadnano_name"] = doc.name;

  ValidationReport report = validate(design);
  if (!report.ok()) {
    std::string text = "imported cadnano design is invalid";
    for (const auto& f : report.errors) text += "\n  " + to_string(f);
    throw FormatError(text);
  }
  return design;
}

Design import_cadnano_v2(std::string_view text) {
  return from_document(document_from_json(parse_json_text(text)));
}

}  // namespace scadkit::cadnano
