#include <sstream>

#include "scadkit/export.hpp"

namespace scadkit {
namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string row;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) row += ',';
    row += csv_field(f);
    first = false;
  }
  row += "\r\n";
  return row;
}

std::string strand_path(std::size_t s) { return "strands[" + std::to_string(s) + "]"; }

const Modification& lookup(const Design& design, const std::string& id, const std::string& path) {
  auto it = design.modifications.find(id);
  if (it == design.modifications.end()) throw ExportError(path + ": unknown modification \"" + id + "\"");
  if (it->second.idt_text.empty()) throw ExportError(path + ": modification \"" + id + "\" has no IDT code");
  return it->second;
}

}  // namespace

std::string strand_name(const Strand& strand) {
  if (auto it = strand.extra_fields.find("name"); it != strand.extra_fields.end() && it->is_string()) {
    return it->get<std::string>();
  }
  const BoundDomain& first = strand.first_bound();
  const BoundDomain& last = strand.last_bound();
  return std::string(strand.is_scaffold ? "SCAF" : "ST") + std::to_string(first.helix) + "[" +
         std::to_string(first.offset_5p()) + "]" + std::to_string(last.helix) + "[" +
         std::to_string(last.offset_3p()) + "]";
}

TextExport export_sequences_csv(const Design& design) {
  TextExport out;
  out.text = csv_row({"name", "sequence"});
  for (std::size_t s = 0; s < design.strands.size(); ++s) {
    const Strand& strand = design.strands[s];
    std::string seq;
    if (strand.sequence) {
      seq = *strand.sequence;
      if (seq.find('?') != std::string::npos) {
        out.warnings.push_back({strand_path(s), "sequence has unassigned bases"});
      }
    } else {
      seq.assign(static_cast<std::size_t>(strand_dna_length(strand)), '?');
      out.warnings.push_back({strand_path(s), "strand has no sequence"});
    }
    out.text += csv_row({strand_name(strand), seq});
  }
  return out;
}

std::string idt_sequence(const Design& design, std::size_t strand_index) {
  const Strand& strand = design.strands.at(strand_index);
  const std::string path = strand_path(strand_index);
  if (!strand.sequence) throw ExportError(path + ": strand has no sequence");
  const std::string& seq = *strand.sequence;
  if (seq.find('?') != std::string::npos) throw ExportError(path + ": sequence has unassigned bases");

  std::string out;
  if (strand.modification_5p) out += lookup(design, *strand.modification_5p, path).idt_text;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out += seq[i];
    if (auto it = strand.modifications_internal.find(static_cast<int>(i));
        it != strand.modifications_internal.end()) {
      out += lookup(design, it->second, path).idt_text;
    }
  }
  if (strand.modification_3p) out += lookup(design, *strand.modification_3p, path).idt_text;
  return out;
}

std::string export_idt_bulk(const Design& design, const IdtOptions& options) {
  std::string out;
  for (std::size_t s = 0; s < design.strands.size(); ++s) {
    if (design.strands[s].is_scaffold) continue;
    out += csv_row({strand_name(design.strands[s]), idt_sequence(design, s), options.scale,
                    options.purification});
  }
  return out;
}

std::string plate_well(std::size_t index_on_plate) {
  const char row = static_cast<char>('A' + index_on_plate % 8);
  return std::string(1, row) + std::to_string(index_on_plate / 8 + 1);
}

std::string export_idt_plate(const Design& design, const IdtOptions& /*options*/) {
  constexpr std::size_t kWells = 96;
  std::string out = csv_row({"plate", "well", "name", "sequence"});
  std::size_t n = 0;
  for (std::size_t s = 0; s < design.strands.size(); ++s) {
    if (design.strands[s].is_scaffold) continue;
    out += csv_row({"plate_" + std::to_string(n / kWells + 1), plate_well(n % kWells),
                    strand_name(design.strands[s]), idt_sequence(design, s)});
    ++n;
  }
  return out;
}

}  // namespace scadkit
