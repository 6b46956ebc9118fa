#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace scadkit {

/// Opaque JSON values carried through parse/serialize untouched.
using Json = nlohmann::ordered_json;

enum class Grid { square, honeycomb, hex, none };

std::string_view to_string(Grid grid);
std::optional<Grid> grid_from_string(std::string_view text);

struct Color {
  std::uint32_t rgb = 0;  // 0xRRGGBB

  static std::optional<Color> from_hex(std::string_view text);
  std::string to_hex() const;

  bool operator==(const Color&) const = default;
};

inline constexpr Color kScaffoldColor{0x0066cc};

/// Staple colors assigned by strand index when a strand has no explicit color.
inline constexpr Color kDefaultPalette[] = {
    Color{0xf74308}, Color{0x57bb00}, Color{0x888888}, Color{0x32b86c},
    Color{0x333333}, Color{0x320096}, Color{0x03b6a2}, Color{0x7300de},
};

bool is_palette_color(Color color);

struct GridPosition {
  int h = 0;
  int v = 0;

  bool operator==(const GridPosition&) const = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Vec3&) const = default;
};

struct Helix {
  int idx = 0;
  int min_offset = 0;
  std::optional<int> max_offset;
  std::optional<GridPosition> grid_position;
  std::optional<Vec3> position;
  double pitch = 0.0;
  double roll = 0.0;
  double yaw = 0.0;
  std::optional<std::vector<int>> major_tick_marks;
  std::optional<int> major_tick_distance;
  Json extra_fields = Json::object();

  bool operator==(const Helix&) const = default;
};

struct Insertion {
  int offset = 0;
  int length = 1;

  bool operator==(const Insertion&) const = default;
};

/// Contiguous run of a strand on one helix in one direction. Offsets are
/// half-open: `start` inclusive, `end` exclusive.
struct BoundDomain {
  int helix = 0;
  bool forward = true;
  int start = 0;
  int end = 0;
  std::vector<int> deletions;
  std::vector<Insertion> insertions;
  Json extra_fields = Json::object();

  bool operator==(const BoundDomain&) const = default;

  int offset_5p() const { return forward ? start : end - 1; }
  int offset_3p() const { return forward ? end - 1 : start; }
  bool contains(int offset) const { return start <= offset && offset < end; }
  bool is_deleted(int offset) const;
  /// 0 when `offset` carries no insertion.
  int insertion_length(int offset) const;
};

struct Loopout {
  int length = 1;
  Json extra_fields = Json::object();

  bool operator==(const Loopout&) const = default;
};

using Domain = std::variant<BoundDomain, Loopout>;

struct Strand {
  std::vector<Domain> domains;
  /// Absent means "default": scaffold color for scaffolds, otherwise the
  /// palette entry for the strand's index.
  std::optional<Color> color;
  bool is_scaffold = false;
  std::optional<std::string> sequence;
  std::optional<std::string> modification_5p;
  std::optional<std::string> modification_3p;
  /// Base index within the strand -> modification id.
  std::map<int, std::string> modifications_internal;
  Json extra_fields = Json::object();

  bool operator==(const Strand&) const = default;

  const BoundDomain& first_bound() const;
  const BoundDomain& last_bound() const;
};

enum class ModificationLocation { five_prime, three_prime, internal };

struct Modification {
  std::string display_text;
  std::string idt_text;
  ModificationLocation location = ModificationLocation::five_prime;
  Json extra_fields = Json::object();

  bool operator==(const Modification&) const = default;
};

struct Design {
  Grid grid = Grid::square;
  std::vector<Helix> helices;
  std::vector<Strand> strands;
  std::map<std::string, Modification> modifications;
  std::optional<std::vector<int>> helices_view_order;
  Json extra_fields = Json::object();

  bool operator==(const Design&) const = default;

  const Helix* find_helix(int idx) const;
  const Helix& helix(int idx) const;  // throws std::out_of_range
};

inline bool is_bound(const Domain& d) { return std::holds_alternative<BoundDomain>(d); }

/// One entry per offset of a bound domain, in 5'->3' order.
struct OffsetBases {
  int offset = 0;
  int bases = 1;  // 0 deletion, length+1 insertion, otherwise 1

  bool operator==(const OffsetBases&) const = default;
};

std::vector<OffsetBases> domain_base_offsets(const BoundDomain& domain);
int domain_dna_length(const BoundDomain& domain);
int domain_dna_length(const Domain& domain);
int strand_dna_length(const Strand& strand);

/// Location of one base on a helix; `within` indexes the length+1 bases at an
/// insertion offset in 5'->3' order and is 0 elsewhere.
struct BasePosition {
  int helix = 0;
  int offset = 0;
  bool forward = true;
  int within = 0;

  auto operator<=>(const BasePosition&) const = default;
};

/// One slot per base of the strand in 5'->3' order; loopout bases have no
/// helix position. `run` is the number of bases sharing the offset.
struct BaseSlot {
  std::optional<BasePosition> position;
  int run = 1;
};

std::vector<BaseSlot> strand_base_slots(const Strand& strand);

Color resolved_color(const Design& design, std::size_t strand_index);

/// Copy of `design` with every strand's default color made explicit.
Design with_resolved_colors(Design design);

/// Field-by-field equality treating absent-with-default colors as equal to
/// their resolved value.
bool semantically_equal(const Design& a, const Design& b);

/// Helix idx values in display order (helices_view_order, else ascending idx).
std::vector<int> view_order(const Design& design);

int scaffold_count(const Design& design);

}  // namespace scadkit
