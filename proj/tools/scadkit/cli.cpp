#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "scadkit/cadnano.hpp"
#include "scadkit/codec.hpp"
#include "scadkit/export.hpp"
#include "scadkit/sequence.hpp"
#include "scadkit/validate.hpp"

namespace scadkit::cli {
namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(path + ": read failed");
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(out_path + ": cannot open for writing");
  file << text;
  file.close();
  if (!file) throw IoError(out_path + ": write failed");
}

// Accepts either a scadnano design or a cadnano v2 document.
Design load(const std::string& path) {
  const std::string text = read_file(path);
  const Json root = parse_json_text(text);
  if (root.is_object() && root.contains("vstrands")) return cadnano::import_cadnano_v2(text);
  return design_from_json(root);
}

void print_findings(const std::vector<Finding>& findings, const std::string& fallback, std::ostream& err,
                    const char* prefix = "") {
  for (const auto& f : findings) {
    err << (f.path.empty() ? fallback : f.path) << ": " << prefix << f.message << '\n';
  }
}

// Loads and validates; returns nullopt after printing errors.
std::optional<Design> load_valid(const std::string& path, std::ostream& err) {
  Design design = load(path);
  const ValidationReport report = validate(design);
  if (!report.ok()) {
    print_findings(report.errors, path, err);
    return std::nullopt;
  }
  return design;
}

struct Options {
  std::string input;
  std::string output;
  bool strict = false;
  std::string to;
  std::string format = "csv";
  std::string scale = IdtOptions{}.scale;
  std::string purification = IdtOptions{}.purification;
  std::string view = "main";
  double base_width = RenderOptions{}.base_width_px;
  std::optional<std::size_t> strand;
  std::optional<std::string> seq;
  bool m13 = false;
  long long rotation = 0;
};

int cmd_validate(const Options& o, std::ostream& err) {
  const Design design = load(o.input);
  const ValidationReport report = validate(design);
  print_findings(report.errors, o.input, err);
  print_findings(report.warnings, o.input, err, "warning: ");
  if (!report.ok()) return kInvalid;
  if (o.strict && !report.warnings.empty()) return kInvalid;
  return kOk;
}

int cmd_convert(const Options& o, std::ostream& out, std::ostream& err) {
  auto design = load_valid(o.input, err);
  if (!design) return kInvalid;
  if (o.to == "cadnano") {
    emit(cadnano::export_cadnano_v2(*design) + "\n", o.output, out);
  } else {
    emit(serialize_design(*design) + "\n", o.output, out);
  }
  return kOk;
}

int cmd_export(const Options& o, std::ostream& out, std::ostream& err) {
  auto design = load_valid(o.input, err);
  if (!design) return kInvalid;
  const IdtOptions idt{o.scale, o.purification};
  if (o.format == "csv") {
    TextExport csv = export_sequences_csv(*design);
    print_findings(csv.warnings, o.input, err, "warning: ");
    emit(csv.text, o.output, out);
  } else if (o.format == "idt-bulk") {
    emit(export_idt_bulk(*design, idt), o.output, out);
  } else {
    emit(export_idt_plate(*design, idt), o.output, out);
  }
  return kOk;
}

int cmd_render(const Options& o, std::ostream& out, std::ostream& err) {
  auto design = load_valid(o.input, err);
  if (!design) return kInvalid;
  RenderOptions options;
  options.view = o.view == "side" ? View::side : View::main;
  options.base_width_px = o.base_width;
  emit(render_svg(*design, options), o.output, out);
  return kOk;
}

int cmd_assign(const Options& o, std::ostream& out, std::ostream& err) {
  auto design = load_valid(o.input, err);
  if (!design) return kInvalid;
  Design result;
  if (o.m13) {
    result = assign_m13(*design, o.rotation);
  } else {
    if (*o.strand >= design->strands.size()) {
      err << "--strand: index " << *o.strand << " out of range (design has " << design->strands.size()
          << " strands)\n";
      return kUsage;
    }
    result = assign_dna(*design, *o.strand, *o.seq);
  }
  emit(serialize_design(result) + "\n", o.output, out);
  return kOk;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream& err) {
  auto design = load_valid(o.input, err);
  if (!design) return kInvalid;
  int scaffold = 0;
  int staples = 0;
  long long total = 0;
  for (const auto& s : design->strands) {
    const int len = strand_dna_length(s);
    total += len;
    if (s.is_scaffold) scaffold += len;
    else ++staples;
  }
  std::ostringstream text;
  text << "helices: " << design->helices.size() << '\n'
       << "strands: " << design->strands.size() << '\n'
       << "scaffold length: " << scaffold << '\n'
       << "staples: " << staples << '\n'
       << "total bases: " << total << '\n';
  emit(text.str(), "", out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"scadnano design toolkit", "scadkit"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check a design and list findings");
  validate_cmd->add_option("IN", o.input, "Design file")->required();
  validate_cmd->add_flag("--strict", o.strict, "Fail on warnings too");

  auto* convert_cmd = app.add_subcommand("convert", "Convert between scadnano and cadnano v2");
  convert_cmd->add_option("IN", o.input, "Input file")->required();
  convert_cmd->add_option("--to", o.to, "Target format")
      ->required()
      ->check(CLI::IsMember({"cadnano", "scadnano"}));
  convert_cmd->add_option("-o,--output", o.output, "Output file");

  auto* export_cmd = app.add_subcommand("export-seqs", "Export strand sequences");
  export_cmd->add_option("IN", o.input, "Design file")->required();
  export_cmd->add_option("--format", o.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "idt-bulk", "idt-plate"}));
  export_cmd->add_option("-o,--output", o.output, "Output file");
  export_cmd->add_option("--scale", o.scale, "IDT synthesis scale")->capture_default_str();
  export_cmd->add_option("--purification", o.purification, "IDT purification")->capture_default_str();

  auto* render_cmd = app.add_subcommand("render", "Draw an SVG figure");
  render_cmd->add_option("IN", o.input, "Design file")->required();
  render_cmd->add_option("--view", o.view, "main or side")
      ->capture_default_str()
      ->check(CLI::IsMember({"main", "side"}));
  render_cmd->add_option("-o,--output", o.output, "Output SVG file");
  render_cmd->add_option("--base-width", o.base_width, "Pixels per base")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* assign_cmd = app.add_subcommand("assign-seq", "Assign DNA and propagate complements");
  assign_cmd->add_option("IN", o.input, "Design file")->required();
  auto* strand_opt = assign_cmd->add_option("--strand", o.strand, "Strand index");
  auto* seq_opt = assign_cmd->add_option("--seq", o.seq, "Sequence text");
  auto* m13_opt = assign_cmd->add_flag("--m13", o.m13, "Assign M13mp18 to the scaffold");
  auto* rot_opt = assign_cmd->add_option("--rotation", o.rotation, "M13 start offset");
  strand_opt->needs(seq_opt);
  seq_opt->needs(strand_opt);
  m13_opt->excludes(strand_opt)->excludes(seq_opt);
  rot_opt->needs(m13_opt);
  assign_cmd->add_option("-o,--output", o.output, "Output file");

  auto* stats_cmd = app.add_subcommand("stats", "Print design statistics");
  stats_cmd->add_option("IN", o.input, "Design file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (assign_cmd->parsed() && !o.m13 && !o.strand) {
      throw CLI::RequiredError("assign-seq needs --strand N --seq TEXT or --m13");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, err);
    if (convert_cmd->parsed()) return cmd_convert(o, out, err);
    if (export_cmd->parsed()) return cmd_export(o, out, err);
    if (render_cmd->parsed()) return cmd_render(o, out, err);
    if (assign_cmd->parsed()) return cmd_assign(o, out, err);
    if (stats_cmd->parsed()) return cmd_stats(o, out, err);
  } catch (const IoError& e) {
    err << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    err << o.input << ": " << e.what() << '\n';
    return kIoError;
  } catch (const SchemaError& e) {
    err << e.what() << '\n';
    return kIoError;
  } catch (const FormatError& e) {
    err << o.input << ": " << e.what() << '\n';
    return kIoError;
  } catch (const FindingsError& e) {
    print_findings(e.findings(), o.input, err);
    return kInvalid;
  } catch (const Error& e) {
    err << o.input << ": " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}

}  // namespace scadkit::cli
