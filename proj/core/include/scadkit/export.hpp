#pragma once

#include <string>
#include <vector>

#include "scadkit/error.hpp"
#include "scadkit/geometry.hpp"
#include "scadkit/model.hpp"

namespace scadkit {

struct IdtOptions {
  std::string scale = "25nm";
  std::string purification = "STD";
};

/// Text output plus non-fatal problems found while producing it.
struct TextExport {
  std::string text;
  std::vector<Finding> warnings;
};

/// Explicit `name` extra field when present, else `ST0[24]1[39]` / `SCAF...`
/// built from the 5'- and 3'-end helix and offset.
std::string strand_name(const Strand& strand);

/// `name,sequence` CSV (RFC 4180), one row per strand in design order.
/// Missing or partially unassigned sequences are written with '?' and
/// reported as warnings.
TextExport export_sequences_csv(const Design& design);

/// Sequence with IDT modification codes spliced in. Throws ExportError for
/// unassigned bases or modifications without an IDT code.
std::string idt_sequence(const Design& design, std::size_t strand_index);

/// `name,sequence,scale,purification` per non-scaffold strand.
std::string export_idt_bulk(const Design& design, const IdtOptions& options = {});

/// `plate,well,name,sequence` CSV filling 96-well plates column-major.
std::string export_idt_plate(const Design& design, const IdtOptions& options = {});

/// Well label for the i-th strand on a plate (0 -> A1, 8 -> A2).
std::string plate_well(std::size_t index_on_plate);

enum class View { main, side };

struct RenderOptions {
  View view = View::main;
  double base_width_px = 10.0;
  bool show_sequences = false;
  GeometryParams geometry;
};

/// Pixels per nm used for the side view at a given base width.
double side_view_scale(const RenderOptions& options);

/// SVG 1.1 document. Every drawn feature carries a class attribute:
/// `helix`, `domain`, `arrowhead` (one per strand at its 3' end),
/// `crossover`, `loopout`, `deletion`, `insertion`, `major-tick`, and
/// `helix-circle` in the side view.
std::string render_svg(const Design& design, const RenderOptions& options = {});

}  // namespace scadkit
