#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "scadkit/error.hpp"
#include "scadkit/model.hpp"

namespace scadkit::cadnano {

/// [5' neighbor helix, 5' neighbor offset, 3' neighbor helix, 3' neighbor
/// offset]; -1 entries mean "no neighbor".
using Link = std::array<int, 4>;
inline constexpr Link kNoLink{-1, -1, -1, -1};

struct VStrand {
  int num = 0;
  int row = 0;
  int col = 0;
  std::vector<Link> scaf;
  std::vector<Link> stap;
  std::vector<int> skip;  // 0 or -1
  std::vector<int> loop;  // insertion length, 0 when none
  std::vector<std::array<int, 2>> stap_colors;  // [offset, 0xRRGGBB]
};

struct Document {
  std::string name;
  std::vector<VStrand> vstrands;
};

/// Smallest multiple of 32 (square) or 21 (honeycomb) that is >= max_offset.
/// Throws ExportError for other grids.
int pad_max_offset(int max_offset, Grid grid);

/// Reasons the design cannot be written as cadnano v2; empty when it can.
std::vector<Finding> export_issues(const Design& design);

Document to_document(const Design& design, std::string name = "exported-design");
Json to_json(const Document& doc);

/// Throws InvalidDesign for invalid input and ExportError listing every
/// unrepresentable feature (grid, loopouts, modifications, scaffold parity).
std::string export_cadnano_v2(const Design& design, std::string name = "exported-design");

Document document_from_json(const Json& root);
Design from_document(const Document& doc);

/// Traces strands through the neighbor arrays. The `name` field is kept in
/// the design's extra fields under "cadnano_name".
Design import_cadnano_v2(std::string_view text);

}  // namespace scadkit::cadnano
