#include "scadkit/codec.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <initializer_list>

#include "scadkit/error.hpp"
#include "scadkit/validate.hpp"

namespace scadkit {
namespace {

constexpr std::string_view kGrid = "grid";
constexpr std::string_view kHelices = "helices";
constexpr std::string_view kStrands = "strands";
constexpr std::string_view kModifications = "modifications_in_design";
constexpr std::string_view kViewOrder = "helices_view_order";

constexpr std::string_view kIdx = "idx";
constexpr std::string_view kMinOffset = "min_offset";
constexpr std::string_view kMaxOffset = "max_offset";
constexpr std::string_view kGridPosition = "grid_position";
constexpr std::string_view kPosition = "position";
constexpr std::string_view kPitch = "pitch";
constexpr std::string_view kRoll = "roll";
constexpr std::string_view kYaw = "yaw";
constexpr std::string_view kTickMarks = "major_tick_marks";
constexpr std::string_view kTickDistance = "major_tick_distance";

constexpr std::string_view kHelix = "helix";
constexpr std::string_view kForward = "forward";
constexpr std::string_view kStart = "start";
constexpr std::string_view kEnd = "end";
constexpr std::string_view kDeletions = "deletions";
constexpr std::string_view kInsertions = "insertions";
constexpr std::string_view kLoopout = "loopout";

constexpr std::string_view kColor = "color";
constexpr std::string_view kSequence = "sequence";
constexpr std::string_view kDomains = "domains";
constexpr std::string_view kIsScaffold = "is_scaffold";
constexpr std::string_view kMod5 = "5prime_modification";
constexpr std::string_view kMod3 = "3prime_modification";
constexpr std::string_view kModInternal = "internal_modifications";

constexpr std::string_view kDisplayText = "display_text";
constexpr std::string_view kIdtText = "idt_text";
constexpr std::string_view kLocation = "location";

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json* find(const Json& obj, std::string_view key) {
  auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

const Json& require_key(const Json& obj, std::string_view key, const std::string& path) {
  const Json* v = find(obj, key);
  if (!v) throw SchemaError(join(path, key), "required key is missing");
  return *v;
}

void expect_object(const Json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path, "expected an object");
}

void expect_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
}

int as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT_MAX)) throw SchemaError(path, "integer out of range");
    return static_cast<int>(u);
  }
  const auto i = v.get<std::int64_t>();
  if (i < INT_MIN || i > INT_MAX) throw SchemaError(path, "integer out of range");
  return static_cast<int>(i);
}

double as_real(const Json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

bool as_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw SchemaError(path, "expected a boolean");
  return v.get<bool>();
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

std::vector<int> as_int_list(const Json& v, const std::string& path) {
  expect_array(v, path);
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], index(path, i)));
  return out;
}

Json collect_extras(const Json& obj, std::initializer_list<std::string_view> known) {
  Json extras = Json::object();
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(known.begin(), known.end(), std::string_view(it.key())) == known.end()) {
      extras[it.key()] = it.value();
    }
  }
  return extras;
}

void emit_extras(Json& obj, const Json& extras) {
  if (!extras.is_object()) return;
  for (auto it = extras.begin(); it != extras.end(); ++it) obj[it.key()] = it.value();
}

Vec3 parse_position(const Json& v, const std::string& path) {
  Vec3 p;
  if (v.is_array()) {
    if (v.size() != 3) throw SchemaError(path, "position array must have 3 entries");
    p.x = as_real(v[0], index(path, 0));
    p.y = as_real(v[1], index(path, 1));
    p.z = as_real(v[2], index(path, 2));
  } else if (v.is_object()) {
    if (const Json* x = find(v, "x")) p.x = as_real(*x, join(path, "x"));
    if (const Json* y = find(v, "y")) p.y = as_real(*y, join(path, "y"));
    if (const Json* z = find(v, "z")) p.z = as_real(*z, join(path, "z"));
  } else {
    throw SchemaError(path, "expected a position object or 3-array");
  }
  return p;
}

Helix parse_helix(const Json& v, std::size_t list_index, const std::string& path) {
  expect_object(v, path);
  Helix h;
  h.idx = static_cast<int>(list_index);
  if (const Json* j = find(v, kIdx)) h.idx = as_int(*j, join(path, kIdx));
  if (const Json* j = find(v, kMinOffset)) h.min_offset = as_int(*j, join(path, kMinOffset));
  if (const Json* j = find(v, kMaxOffset)) h.max_offset = as_int(*j, join(path, kMaxOffset));
  if (const Json* j = find(v, kGridPosition)) {
    const std::string p = join(path, kGridPosition);
    expect_array(*j, p);
    if (j->size() != 2) throw SchemaError(p, "grid_position must have 2 entries");
    h.grid_position = GridPosition{as_int((*j)[0], index(p, 0)), as_int((*j)[1], index(p, 1))};
  }
  if (const Json* j = find(v, kPosition)) h.position = parse_position(*j, join(path, kPosition));
  if (const Json* j = find(v, kPitch)) h.pitch = as_real(*j, join(path, kPitch));
  if (const Json* j = find(v, kRoll)) h.roll = as_real(*j, join(path, kRoll));
  if (const Json* j = find(v, kYaw)) h.yaw = as_real(*j, join(path, kYaw));
  if (const Json* j = find(v, kTickMarks)) h.major_tick_marks = as_int_list(*j, join(path, kTickMarks));
  if (const Json* j = find(v, kTickDistance)) {
    h.major_tick_distance = as_int(*j, join(path, kTickDistance));
  }
  h.extra_fields = collect_extras(v, {kIdx, kMinOffset, kMaxOffset, kGridPosition, kPosition, kPitch,
                                      kRoll, kYaw, kTickMarks, kTickDistance});
  return h;
}

Domain parse_domain(const Json& v, const std::string& path) {
  expect_object(v, path);
  if (const Json* len = find(v, kLoopout)) {
    Loopout l;
    l.length = as_int(*len, join(path, kLoopout));
    l.extra_fields = collect_extras(v, {kLoopout});
    return l;
  }
  BoundDomain d;
  d.helix = as_int(require_key(v, kHelix, path), join(path, kHelix));
  d.forward = as_bool(require_key(v, kForward, path), join(path, kForward));
  d.start = as_int(require_key(v, kStart, path), join(path, kStart));
  d.end = as_int(require_key(v, kEnd, path), join(path, kEnd));
  if (const Json* j = find(v, kDeletions)) d.deletions = as_int_list(*j, join(path, kDeletions));
  if (const Json* j = find(v, kInsertions)) {
    const std::string p = join(path, kInsertions);
    expect_array(*j, p);
    for (std::size_t i = 0; i < j->size(); ++i) {
      const Json& pair = (*j)[i];
      const std::string pp = index(p, i);
      expect_array(pair, pp);
      if (pair.size() != 2) throw SchemaError(pp, "insertion must be [offset, length]");
      d.insertions.push_back({as_int(pair[0], index(pp, 0)), as_int(pair[1], index(pp, 1))});
    }
  }
  d.extra_fields = collect_extras(v, {kHelix, kForward, kStart, kEnd, kDeletions, kInsertions});
  return d;
}

Strand parse_strand(const Json& v, const std::string& path) {
  expect_object(v, path);
  Strand s;
  const std::string dpath = join(path, kDomains);
  const Json& domains = require_key(v, kDomains, path);
  expect_array(domains, dpath);
  for (std::size_t i = 0; i < domains.size(); ++i) {
    s.domains.push_back(parse_domain(domains[i], index(dpath, i)));
  }
  if (const Json* j = find(v, kColor)) {
    const std::string p = join(path, kColor);
    auto c = Color::from_hex(as_string(*j, p));
    if (!c) throw SchemaError(p, "expected a color of the form #rrggbb");
    s.color = c;
  }
  if (const Json* j = find(v, kIsScaffold)) s.is_scaffold = as_bool(*j, join(path, kIsScaffold));
  if (const Json* j = find(v, kSequence)) s.sequence = as_string(*j, join(path, kSequence));
  if (const Json* j = find(v, kMod5)) s.modification_5p = as_string(*j, join(path, kMod5));
  if (const Json* j = find(v, kMod3)) s.modification_3p = as_string(*j, join(path, kMod3));
  if (const Json* j = find(v, kModInternal)) {
    const std::string p = join(path, kModInternal);
    expect_object(*j, p);
    for (auto it = j->begin(); it != j->end(); ++it) {
      const std::string kp = join(p, it.key());
      int base = 0;
      try {
        std::size_t used = 0;
        base = std::stoi(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw SchemaError(kp, "internal modification key must be an integer base index");
      }
      s.modifications_internal[base] = as_string(it.value(), kp);
    }
  }
  s.extra_fields =
      collect_extras(v, {kColor, kSequence, kDomains, kIsScaffold, kMod5, kMod3, kModInternal});
  return s;
}

std::string_view location_text(ModificationLocation loc) {
  switch (loc) {
    case ModificationLocation::five_prime: return "5'";
    case ModificationLocation::three_prime: return "3'";
    case ModificationLocation::internal: return "internal";
  }
  return "internal";
}

Modification parse_modification(const Json& v, const std::string& path) {
  expect_object(v, path);
  Modification m;
  if (const Json* j = find(v, kDisplayText)) m.display_text = as_string(*j, join(path, kDisplayText));
  if (const Json* j = find(v, kIdtText)) m.idt_text = as_string(*j, join(path, kIdtText));
  const std::string lp = join(path, kLocation);
  const std::string loc = as_string(require_key(v, kLocation, path), lp);
  if (loc == "5'") m.location = ModificationLocation::five_prime;
  else if (loc == "3'") m.location = ModificationLocation::three_prime;
  else if (loc == "internal") m.location = ModificationLocation::internal;
  else throw SchemaError(lp, "expected \"5'\", \"3'\" or \"internal\"");
  m.extra_fields = collect_extras(v, {kDisplayText, kIdtText, kLocation});
  return m;
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // byte is the 1-based position of the offending character.
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size() + 1);
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(what, line, column);
  }
}

Design design_from_json(const Json& root) {
  expect_object(root, "$");
  Design d;
  if (const Json* j = find(root, kGrid)) {
    auto g = grid_from_string(as_string(*j, std::string(kGrid)));
    if (!g) throw SchemaError(std::string(kGrid), "expected square, honeycomb, hex or none");
    d.grid = *g;
  }
  if (const Json* j = find(root, kHelices)) {
    const std::string p(kHelices);
    expect_array(*j, p);
    for (std::size_t i = 0; i < j->size(); ++i) d.helices.push_back(parse_helix((*j)[i], i, index(p, i)));
  }
  if (const Json* j = find(root, kStrands)) {
    const std::string p(kStrands);
    expect_array(*j, p);
    for (std::size_t i = 0; i < j->size(); ++i) d.strands.push_back(parse_strand((*j)[i], index(p, i)));
  }
  if (const Json* j = find(root, kModifications)) {
    const std::string p(kModifications);
    expect_object(*j, p);
    for (auto it = j->begin(); it != j->end(); ++it) {
      d.modifications[it.key()] = parse_modification(it.value(), join(p, it.key()));
    }
  }
  if (const Json* j = find(root, kViewOrder)) {
    d.helices_view_order = as_int_list(*j, std::string(kViewOrder));
  }
  d.extra_fields = collect_extras(root, {kGrid, kHelices, kStrands, kModifications, kViewOrder});
  return d;
}

Design parse_design(std::string_view text) { return design_from_json(parse_json_text(text)); }

Json design_to_json(const Design& design) {
  Json root = Json::object();
  root[std::string(kGrid)] = to_string(design.grid);

  Json helices = Json::array();
  for (std::size_t i = 0; i < design.helices.size(); ++i) {
    const Helix& h = design.helices[i];
    Json jh = Json::object();
    if (h.idx != static_cast<int>(i)) jh[std::string(kIdx)] = h.idx;
    if (h.min_offset != 0) jh[std::string(kMinOffset)] = h.min_offset;
    if (h.max_offset) jh[std::string(kMaxOffset)] = *h.max_offset;
    if (h.grid_position) jh[std::string(kGridPosition)] = {h.grid_position->h, h.grid_position->v};
    if (h.position) {
      jh[std::string(kPosition)] = {{"x", h.position->x}, {"y", h.position->y}, {"z", h.position->z}};
    }
    if (h.pitch != 0.0) jh[std::string(kPitch)] = h.pitch;
    if (h.roll != 0.0) jh[std::string(kRoll)] = h.roll;
    if (h.yaw != 0.0) jh[std::string(kYaw)] = h.yaw;
    if (h.major_tick_marks) jh[std::string(kTickMarks)] = *h.major_tick_marks;
    if (h.major_tick_distance) jh[std::string(kTickDistance)] = *h.major_tick_distance;
    emit_extras(jh, h.extra_fields);
    helices.push_back(std::move(jh));
  }
  root[std::string(kHelices)] = std::move(helices);

  if (design.helices_view_order) root[std::string(kViewOrder)] = *design.helices_view_order;

  if (!design.modifications.empty()) {
    Json mods = Json::object();
    for (const auto& [id, m] : design.modifications) {
      Json jm = Json::object();
      jm[std::string(kDisplayText)] = m.display_text;
      jm[std::string(kIdtText)] = m.idt_text;
      jm[std::string(kLocation)] = location_text(m.location);
      emit_extras(jm, m.extra_fields);
      mods[id] = std::move(jm);
    }
    root[std::string(kModifications)] = std::move(mods);
  }

  Json strands = Json::array();
  for (std::size_t i = 0; i < design.strands.size(); ++i) {
    const Strand& s = design.strands[i];
    Json js = Json::object();
    js[std::string(kColor)] = resolved_color(design, i).to_hex();
    if (s.sequence) js[std::string(kSequence)] = *s.sequence;
    Json domains = Json::array();
    for (const auto& dom : s.domains) {
      Json jd = Json::object();
      if (const auto* b = std::get_if<BoundDomain>(&dom)) {
        jd[std::string(kHelix)] = b->helix;
        jd[std::string(kForward)] = b->forward;
        jd[std::string(kStart)] = b->start;
        jd[std::string(kEnd)] = b->end;
        if (!b->deletions.empty()) jd[std::string(kDeletions)] = b->deletions;
        if (!b->insertions.empty()) {
          Json ins = Json::array();
          for (const auto& in : b->insertions) ins.push_back({in.offset, in.length});
          jd[std::string(kInsertions)] = std::move(ins);
        }
        emit_extras(jd, b->extra_fields);
      } else {
        const auto& l = std::get<Loopout>(dom);
        jd[std::string(kLoopout)] = l.length;
        emit_extras(jd, l.extra_fields);
      }
      domains.push_back(std::move(jd));
    }
    js[std::string(kDomains)] = std::move(domains);
    if (s.is_scaffold) js[std::string(kIsScaffold)] = true;
    if (s.modification_5p) js[std::string(kMod5)] = *s.modification_5p;
    if (s.modification_3p) js[std::string(kMod3)] = *s.modification_3p;
    if (!s.modifications_internal.empty()) {
      Json internal = Json::object();
      for (const auto& [base, id] : s.modifications_internal) internal[std::to_string(base)] = id;
      js[std::string(kModInternal)] = std::move(internal);
    }
    emit_extras(js, s.extra_fields);
    strands.push_back(std::move(js));
  }
  root[std::string(kStrands)] = std::move(strands);

  emit_extras(root, design.extra_fields);
  return root;
}

std::string serialize_design(const Design& design, int indent) {
  require_valid(design);
  return design_to_json(design).dump(indent);
}

}  // namespace scadkit
