// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "rectangle.hpp"
#include "scadkit/cadnano.hpp"
#include "scadkit/codec.hpp"
#include "scadkit/edit.hpp"
#include "scadkit/export.hpp"
#include "scadkit/geometry.hpp"
#include "scadkit/sequence.hpp"
#include "scadkit/validate.hpp"
#include "support.hpp"
#include "svg_count.hpp"

using namespace scadkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  Outcome outcome(std::string detail) const {
    if (failed_ == 0) return {true, std::move(detail)};
    std::string text = std::to_string(failed_) + " check(s) failed:";
    for (const auto& f : failures_) text += " [" + f + "]";
    return {false, text};
  }

 private:
  std::vector<std::string> failures_;
  int failed_ = 0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << s << " s";
  return out.str();
}

Outcome golden_listing() {
  const auto t0 = Clock::now();
  Check c;
  const std::string text = test::listing_text();
  const auto raw = nlohmann::json::parse(text);
  const Design d = parse_design(text);
  const ValidationReport report = validate(d);
  c.expect(report.errors.empty(), "validation errors");

  const std::string once = serialize_design(d);
  const Design again = parse_design(once);
  c.expect(semantically_equal(d, again), "parse(serialize(d)) differs from d");
  c.expect(serialize_design(again) == once, "second serialization differs");

  const std::vector<int> published{69, 32, 34};
  std::string lengths;
  for (std::size_t s = 0; s < raw["strands"].size(); ++s) {
    const int listed = static_cast<int>(raw["strands"][s]["sequence"].get<std::string>().size());
    const int oracle = test::oracle_strand_length(raw["strands"][s]);
    const int lib = strand_dna_length(d.strands[s]);
    c.expect(listed == published[s], "listed length");
    c.expect(oracle == listed, "oracle length");
    c.expect(lib == listed, "library length for strand " + std::to_string(s));
    lengths += (s ? "/" : "") + std::to_string(lib);
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 1.0, "took " + fmt_seconds(elapsed));
  return c.outcome("lengths " + lengths + ", 0 errors, idempotent, " + fmt_seconds(elapsed));
}

Outcome complement_consistency() {
  Check c;
  const auto raw = test::listing_json();
  Design bare = test::listing();
  for (auto& s : bare.strands) s.sequence.reset();
  const std::string scaffold = raw["strands"][0]["sequence"];
  const Design assigned = assign_dna(bare, 0, scaffold);
  for (std::size_t s = 1; s < raw["strands"].size(); ++s) {
    const std::string published = raw["strands"][s]["sequence"];
    c.expect(assigned.strands[s].sequence == published, "staple " + std::to_string(s) + " differs");
    c.expect(test::oracle_pair_sequence(raw, s, 0, scaffold) == published, "oracle disagrees on staple");
  }
  const auto mm = find_mismatches(test::listing());
  c.expect(mm.empty(), std::to_string(mm.size()) + " mismatches in the published design");
  return c.outcome("both staples regenerated exactly, 0 mismatches");
}

Outcome padding_rule() {
  Check c;
  const int a = cadnano::pad_max_offset(48, Grid::square);
  const int b = cadnano::pad_max_offset(48, Grid::honeycomb);
  const int e = cadnano::pad_max_offset(21, Grid::honeycomb);
  c.expect(a == 64, "square 48");
  c.expect(b == 63, "honeycomb 48");
  c.expect(e == 21, "honeycomb 21");
  return c.outcome("(48,square)=" + std::to_string(a) + " (48,honeycomb)=" + std::to_string(b) +
                   " (21,honeycomb)=" + std::to_string(e));
}

Outcome cadnano_roundtrip() {
  constexpr int kDesigns = 600;
  const auto t0 = Clock::now();
  Check c;
  std::mt19937 rng(20240601);
  int crossovers = 0, deletions = 0, insertions = 0, sequenced = 0;
  for (int i = 0; i < kDesigns; ++i) {
    const Design d = test::random_exportable(rng);
    bool has_x = false, has_del = false, has_ins = false, has_seq = false;
    for (const auto& s : d.strands) {
      has_x = has_x || s.domains.size() > 1;
      has_seq = has_seq || s.sequence.has_value();
      for (const auto& dom : s.domains) {
        const auto& b = std::get<BoundDomain>(dom);
        has_del = has_del || !b.deletions.empty();
        has_ins = has_ins || !b.insertions.empty();
      }
    }
    crossovers += has_x;
    deletions += has_del;
    insertions += has_ins;
    sequenced += has_seq;
    try {
      const Design back = cadnano::import_cadnano_v2(cadnano::export_cadnano_v2(d));
      c.expect(test::roundtrip_normal_form(back) == test::roundtrip_normal_form(d),
               "design " + std::to_string(i) + " differs after round trip");
    } catch (const std::exception& e) {
      c.expect(false, "design " + std::to_string(i) + ": " + e.what());
    }
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 30.0, "took " + fmt_seconds(elapsed));
  return c.outcome(std::to_string(kDesigns) + " designs equal after import(export(d)); with crossovers " +
                   std::to_string(crossovers) + ", deletions " + std::to_string(deletions) + ", insertions " +
                   std::to_string(insertions) + ", sequences dropped " + std::to_string(sequenced) + "; " +
                   fmt_seconds(elapsed));
}

// Random FIX_A-like start: 2-4 stacked helices, each with a forward and a
// reverse strand over a shared window.
Design random_fixture(std::mt19937& rng) {
  Design d;
  d.grid = Grid::square;
  const int n = test::uniform(rng, 2, 4);
  const int len = test::uniform(rng, 32, 64);
  const int start = test::uniform(rng, 0, 4);
  const int end = test::uniform(rng, len / 2, len);
  for (int h = 0; h < n; ++h) {
    Helix helix;
    helix.idx = h;
    helix.max_offset = len;
    helix.grid_position = GridPosition{0, h};
    d.helices.push_back(helix);
    d.strands.push_back(make_strand(h, true, start, end));
    d.strands.push_back(make_strand(h, false, start, end));
  }
  return d;
}

Outcome edit_oracle() {
  constexpr int kSequences = 600;
  constexpr int kOpsPerSequence = 25;
  Check c;
  std::mt19937 rng(77);
  std::map<std::string, int> applied;
  int rejected = 0, rejoins = 0;
  for (int seq = 0; seq < kSequences; ++seq) {
    Design d = random_fixture(rng);
    const auto occ = test::occupancy(d);
    const int n = static_cast<int>(d.helices.size());
    const int len = *d.helices[0].max_offset;
    std::map<std::pair<int, int>, int> weight;  // (helix, offset) -> bases
    auto expected_bases = [&] {
      long long total = 0;
      for (const auto& [h, o, f] : occ) {
        auto it = weight.find({h, o});
        total += it == weight.end() ? 1 : it->second;
      }
      return total;
    };

    for (int op = 0; op < kOpsPerSequence; ++op) {
      const int h = test::uniform(rng, 0, n - 1);
      const int o = test::uniform(rng, 0, len);
      const bool f = test::uniform(rng, 0, 1) == 1;
      const int kind = test::uniform(rng, 0, 3);
      const std::string tag = "seq " + std::to_string(seq) + " op " + std::to_string(op);
      Design next;
      try {
        switch (kind) {
          case 0:
            next = add_nick(d, h, o, f);
            break;
          case 1: {
            const int h2 = h + 1 < n && (h == 0 || test::uniform(rng, 0, 1)) ? h + 1 : h - 1;
            next = add_full_crossover(d, {h, h2, o, f, false});
            break;
          }
          case 2:
            next = add_deletion(d, h, o);
            break;
          default:
            next = add_insertion(d, h, o, test::uniform(rng, 1, 4));
            break;
        }
      } catch (const EditError&) {
        ++rejected;
        continue;
      }
      static const char* names[] = {"nick", "full crossover", "deletion", "insertion"};
      ++applied[names[kind]];
      if (kind == 2) weight[{h, o}] = 0;
      if (kind == 3) {
        const BoundDomain* any = nullptr;
        for (const auto& s : next.strands) {
          for (const auto& dom : s.domains) {
            const auto& b = std::get<BoundDomain>(dom);
            if (b.helix == h && b.contains(o)) any = &b;
          }
        }
        weight[{h, o}] = any ? any->insertion_length(o) + 1 : 1;
      }

      c.expect(validate(next).ok(), tag + ": result does not validate");
      c.expect(test::occupancy(next) == occ, tag + ": occupancy changed");
      const auto junction = test::junction_problem(next);
      c.expect(!junction, tag + ": " + junction.value_or(""));
      long long total = 0;
      for (const auto& s : next.strands) total += strand_dna_length(s);
      c.expect(total == expected_bases(), tag + ": base count " + std::to_string(total) + " vs oracle " +
                                              std::to_string(expected_bases()));
      if (kind == 0) {
        const Design back = ligate(next, h, o, f);
        c.expect(semantically_equal(back, d), tag + ": rejoin does not restore the design");
        ++rejoins;
      }
      d = std::move(next);
    }
  }
  std::string detail = std::to_string(kSequences) + " sequences x " + std::to_string(kOpsPerSequence) + " ops;";
  for (const auto& [name, count] : applied) detail += " " + name + " " + std::to_string(count);
  detail += "; rejected " + std::to_string(rejected) + "; nick/rejoin identities " + std::to_string(rejoins);
  return c.outcome(detail);
}

Outcome rectangle_integration() {
  const auto t0 = Clock::now();
  Check c;
  const Design d = test::rectangle();
  const double elapsed = seconds_since(t0);
  c.expect(validate(d).ok(), "rectangle does not validate");
  c.expect(scaffold_count(d) == 1, "expected one scaffold");
  int scaffold = 0, staples = 0;
  long long staple_total = 0;
  bool unknown = false;
  for (const auto& s : d.strands) {
    const int len = strand_dna_length(s);
    if (s.is_scaffold) {
      scaffold = len;
      continue;
    }
    ++staples;
    staple_total += len;
    unknown = unknown || !s.sequence || s.sequence->find('?') != std::string::npos;
  }
  c.expect(d.helices.size() == 24, "helix count");
  c.expect(scaffold <= static_cast<int>(kM13Length), "scaffold longer than M13");
  c.expect(!unknown, "a staple has unassigned bases");
  c.expect(staple_total == scaffold, "staple total " + std::to_string(staple_total) + " != scaffold " +
                                         std::to_string(scaffold));
  c.expect(find_mismatches(d).empty(), "mismatched pairs");
  // Regression values from the reference implementation running the same script.
  c.expect(staples == 216, "staple count " + std::to_string(staples));
  c.expect(scaffold == 6768, "scaffold length " + std::to_string(scaffold));
  c.expect(elapsed < 5.0, "took " + fmt_seconds(elapsed));
  return c.outcome("24 helices, scaffold " + std::to_string(scaffold) + " nt, " + std::to_string(staples) +
                   " staples summing to " + std::to_string(staple_total) + " nt, no '?', " + fmt_seconds(elapsed));
}

Outcome geometry() {
  constexpr double kTol = 1e-9;
  Check c;
  const std::map<Grid, int> degree{{Grid::square, 4}, {Grid::hex, 6}, {Grid::honeycomb, 3}};
  int pairs = 0;
  for (const auto& [grid, deg] : degree) {
    std::vector<std::pair<GridPosition, Position3D>> sites;
    for (int h = -6; h <= 6; ++h) {
      for (int v = -6; v <= 6; ++v) sites.push_back({{h, v}, grid_to_position(grid, {h, v})});
    }
    double nearest = 1e300;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      for (std::size_t j = i + 1; j < sites.size(); ++j) {
        const Position3D& a = sites[i].second;
        const Position3D& b = sites[j].second;
        nearest = std::min(nearest, std::hypot(a.x - b.x, a.y - b.y, a.z - b.z));
      }
    }
    c.expect(std::abs(nearest - 2.5) < kTol, std::string(to_string(grid)) + " nearest distance");
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const auto [h, v] = sites[i].first;
      if (std::abs(h) > 4 || std::abs(v) > 4) continue;
      int neighbors = 0;
      for (std::size_t j = 0; j < sites.size(); ++j) {
        if (i == j) continue;
        const Position3D& a = sites[i].second;
        const Position3D& b = sites[j].second;
        const double dist = std::hypot(a.x - b.x, a.y - b.y);
        if (dist < 2.5 + 1e-6) {
          ++neighbors;
          ++pairs;
          c.expect(std::abs(dist - 2.5) < kTol, "adjacent pair not at 2.5 nm");
        }
      }
      c.expect(neighbors == deg, std::string(to_string(grid)) + " site degree " + std::to_string(neighbors));
    }
  }

  Helix h;
  h.max_offset = 64;
  for (bool fwd : {true, false}) {
    c.expect(std::abs(angle_difference(backbone_angle(h, 21, fwd), backbone_angle(h, 0, fwd))) < kTol,
             "backbone angle period");
  }

  double worst = 0.0;
  for (Grid grid : {Grid::square, Grid::honeycomb, Grid::hex}) {
    Design d = test::fixture_a();
    d.grid = grid;
    d.helices[1].grid_position = GridPosition{1, 0};
    for (auto& helix : d.helices) helix.max_offset = 64;
    for (int offset = 0; offset < 64; offset += 5) {
      for (bool fwd : {true, false}) {
        Design rolled = d;
        rolled.helices[1].roll = unstrain_roll_at_crossover(d, 0, offset, fwd, 1);
        const Position3D a = helix_center(rolled, rolled.helices[0]);
        const Position3D b = helix_center(rolled, rolled.helices[1]);
        // Angle of the center-to-center vector: 0 is up, clockwise, y down.
        const double target = std::atan2(a.x - b.x, -(a.y - b.y)) * 180.0 / M_PI;
        const double mismatch = angle_difference(backbone_angle(rolled.helices[1], offset, !fwd), target);
        worst = std::max(worst, mismatch);
      }
    }
  }
  c.expect(worst < kTol, "unstrained roll mismatch");
  std::ostringstream detail;
  detail << pairs << " adjacent site pairs at 2.5 nm in 3 grids; period 21 holds; max roll mismatch " << worst
         << " deg";
  return c.outcome(detail.str());
}

Outcome unknown_fields() {
  Check c;
  auto raw = test::listing_json();
  raw["strands"][1]["label"] = "x";
  raw["lab_notebook"] = {{"page", 12}, {"tags", {"rect", nullptr, 3.5}}, {"nested", {{"deep", {1, {2, 3}}}}}};
  const Json out = Json::parse(serialize_design(parse_design(raw.dump())));
  c.expect(out["strands"][1].contains("label") && out["strands"][1]["label"] == "x", "strand label");
  c.expect(out.contains("lab_notebook") && nlohmann::json::parse(out["lab_notebook"].dump()) == raw["lab_notebook"],
           "design-level subtree");
  return c.outcome("strand \"label\" and design-level subtree preserved verbatim");
}

Outcome exports() {
  Check c;
  const auto raw = test::listing_json();
  const Design d = test::listing();
  const std::string bulk = export_idt_bulk(d);
  const std::string spliced = raw["modifications_in_design"]["/5Biosg/"]["idt_text"].get<std::string>() +
                              raw["strands"][2]["sequence"].get<std::string>();
  c.expect(bulk.find("," + spliced + ",") != std::string::npos, "spliced field missing");

  auto svg = test::summarize_svg(render_svg(d));
  int deletions = 0, insertions = 0, loopouts = 0;
  for (const auto& s : raw["strands"]) {
    for (const auto& dom : s["domains"]) {
      if (dom.contains("deletions")) deletions += static_cast<int>(dom["deletions"].size());
      if (dom.contains("insertions")) insertions += static_cast<int>(dom["insertions"].size());
      if (dom.contains("loopout")) ++loopouts;
    }
  }
  const int strands = static_cast<int>(raw["strands"].size());
  c.expect(svg.classes["arrowhead"] == strands && strands == 3, "arrowheads");
  c.expect(svg.classes["deletion"] == deletions && deletions == 2, "X glyphs");
  c.expect(svg.classes["loopout"] == loopouts && loopouts == 1, "loopout arcs");
  c.expect(svg.classes["insertion"] == insertions, "carets");
  std::ostringstream detail;
  detail << "bulk has \"" << spliced.substr(0, 11) << "...\"; SVG arrowheads " << svg.classes["arrowhead"]
         << ", X glyphs " << svg.classes["deletion"] << ", carets " << svg.classes["insertion"]
         << " (one per insertion entry per domain; the listing has " << insertions << "), loopout arcs "
         << svg.classes["loopout"];
  return c.outcome(detail.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden listing parse/validate/idempotence", golden_listing},
      {"complement consistency", complement_consistency},
      {"cadnano padding rule", padding_rule},
      {"cadnano round trip property", cadnano_roundtrip},
      {"edit-op oracle property", edit_oracle},
      {"24-helix rectangle integration", rectangle_integration},
      {"geometry", geometry},
      {"unknown-field preservation", unknown_fields},
      {"exports", exports},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " acceptance criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
