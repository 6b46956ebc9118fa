#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "scadkit/export.hpp"

namespace scadkit {
namespace {

std::string num(double v) {
  if (std::abs(v) < 5e-4) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<int> major_ticks(const Helix& h) {
  const int max = h.max_offset.value_or(h.min_offset);
  if (h.major_tick_marks) return *h.major_tick_marks;
  const int step = h.major_tick_distance.value_or(8);
  std::vector<int> ticks;
  if (step <= 0) return ticks;
  for (int t = h.min_offset; t <= max; t += step) ticks.push_back(t);
  return ticks;
}

struct Point {
  double x;
  double y;
};

class MainView {
 public:
  MainView(const Design& design, const RenderOptions& options)
      : design_(design), bw_(options.base_width_px), margin_(2 * options.base_width_px), options_(options) {
    const double px_per_nm = 3 * bw_ / options.geometry.helix_spacing;
    for (const auto& row : main_view_layout(design, options.geometry)) {
      top_[row.helix] = margin_ + row.y * px_per_nm;
      bottom_ = std::max(bottom_, top_[row.helix] + 2 * bw_);
    }
    min_offset_ = std::numeric_limits<int>::max();
    max_offset_ = std::numeric_limits<int>::min();
    for (const auto& h : design.helices) {
      min_offset_ = std::min(min_offset_, h.min_offset);
      max_offset_ = std::max(max_offset_, h.max_offset.value_or(h.min_offset));
    }
    if (design.helices.empty()) min_offset_ = max_offset_ = 0;
  }

  std::string render() {
    const double width = 2 * margin_ + (max_offset_ - min_offset_) * bw_;
    const double height = design_.helices.empty() ? 2 * margin_ : bottom_ + margin_;
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
         << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
         << "\">\n";
    for (const auto& row : view_order(design_)) draw_helix(design_.helix(row));
    for (std::size_t s = 0; s < design_.strands.size(); ++s) draw_strand(s);
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  double x(int offset) const { return margin_ + (offset - min_offset_) * bw_; }
  double track_y(const BoundDomain& d) const { return top_.at(d.helix) + (d.forward ? 0.5 : 1.5) * bw_; }
  Point cell(const BoundDomain& d, int offset) const { return {x(offset) + bw_ / 2, track_y(d)}; }

  void draw_helix(const Helix& h) {
    const double top = top_.at(h.idx);
    const int max = h.max_offset.value_or(h.min_offset);
    out_ << "  <g class=\"helix-group\" data-idx=\"" << h.idx << "\">\n";
    out_ << "    <rect class=\"helix\" x=\"" << num(x(h.min_offset)) << "\" y=\"" << num(top) << "\" width=\""
         << num((max - h.min_offset) * bw_) << "\" height=\"" << num(2 * bw_)
         << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
    out_ << "    <line class=\"helix-axis\" x1=\"" << num(x(h.min_offset)) << "\" y1=\"" << num(top + bw_)
         << "\" x2=\"" << num(x(max)) << "\" y2=\"" << num(top + bw_)
         << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    for (int t : major_ticks(h)) {
      out_ << "    <line class=\"major-tick\" x1=\"" << num(x(t)) << "\" y1=\"" << num(top) << "\" x2=\""
           << num(x(t)) << "\" y2=\"" << num(top + 2 * bw_) << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    }
    out_ << "    <text class=\"helix-label\" x=\"" << num(x(h.min_offset) - bw_) << "\" y=\"" << num(top + bw_)
         << "\" font-size=\"" << num(bw_) << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << h.idx
         << "</text>\n";
    out_ << "  </g>\n";
  }

  void draw_strand(std::size_t s) {
    const Strand& strand = design_.strands[s];
    const std::string color = resolved_color(design_, s).to_hex();
    out_ << "  <g class=\"strand\" data-strand=\"" << s << "\">\n";
    out_ << "    <title>" << escape(strand_name(strand)) << "</title>\n";

    std::size_t base = 0;
    const std::string* seq = strand.sequence ? &*strand.sequence : nullptr;
    const BoundDomain* prev = nullptr;
    int pending_loopout = -1;
    for (const auto& dom : strand.domains) {
      if (const auto* l = std::get_if<Loopout>(&dom)) {
        pending_loopout = l->length;
        base += static_cast<std::size_t>(l->length);
        continue;
      }
      const auto& d = std::get<BoundDomain>(dom);
      if (prev) {
        const Point from = cell(*prev, prev->offset_3p());
        const Point to = cell(d, d.offset_5p());
        if (pending_loopout >= 0) draw_loopout(from, to, pending_loopout, color);
        else draw_crossover(from, to, color);
      }
      pending_loopout = -1;
      draw_domain(d, color);
      base = draw_bases(d, seq, base);
      prev = &d;
    }
    draw_arrowhead(strand.last_bound(), color);
    out_ << "  </g>\n";
  }

  void draw_domain(const BoundDomain& d, const std::string& color) {
    const double y = track_y(d);
    out_ << "    <line class=\"domain\" x1=\"" << num(x(d.start) + bw_ / 4) << "\" y1=\"" << num(y) << "\" x2=\""
         << num(x(d.end) - bw_ / 4) << "\" y2=\"" << num(y) << "\" stroke=\"" << color
         << "\" stroke-width=\"" << num(bw_ / 3) << "\" stroke-linecap=\"round\"/>\n";
    const double r = bw_ / 3;
    for (int o : d.deletions) {
      const Point c = cell(d, o);
      out_ << "    <g class=\"deletion\" stroke=\"#ff0000\" stroke-width=\"1.5\">"
           << "<line x1=\"" << num(c.x - r) << "\" y1=\"" << num(c.y - r) << "\" x2=\"" << num(c.x + r)
           << "\" y2=\"" << num(c.y + r) << "\"/>"
           << "<line x1=\"" << num(c.x - r) << "\" y1=\"" << num(c.y + r) << "\" x2=\"" << num(c.x + r)
           << "\" y2=\"" << num(c.y - r) << "\"/></g>\n";
    }
    for (const auto& ins : d.insertions) {
      const Point c = cell(d, ins.offset);
      // Carets open away from the helix axis.
      const double dir = d.forward ? -1.0 : 1.0;
      const double tip = c.y + dir * bw_ * 0.9;
      out_ << "    <g class=\"insertion\">"
           << "<path d=\"M " << num(c.x - r) << ' ' << num(c.y) << " L " << num(c.x) << ' ' << num(tip) << " L "
           << num(c.x + r) << ' ' << num(c.y) << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1\"/>"
           << "<text x=\"" << num(c.x) << "\" y=\"" << num(tip + dir * bw_ * 0.3) << "\" font-size=\""
           << num(bw_ * 0.8) << "\" text-anchor=\"middle\">" << ins.length << "</text></g>\n";
    }
  }

  std::size_t draw_bases(const BoundDomain& d, const std::string* seq, std::size_t base) {
    for (const auto& [offset, bases] : domain_base_offsets(d)) {
      if (seq && options_.show_sequences && bases > 0 && base < seq->size()) {
        const Point c = cell(d, offset);
        out_ << "    <text class=\"base\" x=\"" << num(c.x) << "\" y=\"" << num(c.y) << "\" font-size=\""
             << num(bw_ * 0.8) << "\" text-anchor=\"middle\" dominant-baseline=\"middle\""
             << (d.forward ? "" : " transform=\"rotate(180 " + num(c.x) + ' ' + num(c.y) + ")\"") << '>'
             << (*seq)[base] << "</text>\n";
      }
      base += static_cast<std::size_t>(bases);
    }
    return base;
  }

  void draw_crossover(Point from, Point to, const std::string& color) {
    out_ << "    <polyline class=\"crossover\" points=\"" << num(from.x) << ',' << num(from.y) << ' '
         << num(to.x) << ',' << num(to.y) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
         << num(bw_ / 4) << "\"/>\n";
  }

  void draw_loopout(Point from, Point to, int length, const std::string& color) {
    const double bulge = bw_ * (1.5 + 0.25 * length);
    const double cx = std::min(from.x, to.x) - bulge;
    out_ << "    <path class=\"loopout\" d=\"M " << num(from.x) << ' ' << num(from.y) << " C " << num(cx) << ' '
         << num(from.y) << ' ' << num(cx) << ' ' << num(to.y) << ' ' << num(to.x) << ' ' << num(to.y)
         << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(bw_ / 4) << "\"/>\n";
    out_ << "    <text class=\"loopout-label\" x=\"" << num(cx) << "\" y=\"" << num((from.y + to.y) / 2)
         << "\" font-size=\"" << num(bw_) << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << length
         << "</text>\n";
  }

  void draw_arrowhead(const BoundDomain& d, const std::string& color) {
    const double y = track_y(d);
    const double h = bw_ / 2;
    const double tip = d.forward ? x(d.end) : x(d.start);
    const double back = d.forward ? tip - bw_ : tip + bw_;
    out_ << "    <polygon class=\"arrowhead\" points=\"" << num(tip) << ',' << num(y) << ' ' << num(back) << ','
         << num(y - h) << ' ' << num(back) << ',' << num(y + h) << "\" fill=\"" << color << "\"/>\n";
  }

  const Design& design_;
  double bw_;
  double margin_;
  const RenderOptions& options_;
  std::map<int, double> top_;
  double bottom_ = 0.0;
  int min_offset_;
  int max_offset_;
  std::ostringstream out_;
};

std::string render_side(const Design& design, const RenderOptions& options) {
  const double scale = side_view_scale(options);
  const double radius = options.geometry.helix_spacing / 2 * scale;
  const double margin = 2 * options.base_width_px;
  struct Site {
    int idx;
    Position3D p;
  };
  std::vector<Site> sites;
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  for (const auto& h : design.helices) {
    const Position3D p = helix_center(design, h, options.geometry);
    if (sites.empty()) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
    sites.push_back({h.idx, p});
  }
  const double ox = margin + radius - min_x * scale;
  const double oy = margin + radius - min_y * scale;
  const double width = sites.empty() ? 2 * margin : 2 * (margin + radius) + (max_x - min_x) * scale;
  const double height = sites.empty() ? 2 * margin : 2 * (margin + radius) + (max_y - min_y) * scale;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
  for (const auto& site : sites) {
    const double cx = ox + site.p.x * scale;
    const double cy = oy + site.p.y * scale;
    out << "  <circle class=\"helix-circle\" data-idx=\"" << site.idx << "\" cx=\"" << num(cx) << "\" cy=\""
        << num(cy) << "\" r=\"" << num(radius) << "\" fill=\"#eeeeee\" stroke=\"#666666\" stroke-width=\"1\"/>\n";
    out << "  <text class=\"helix-label\" x=\"" << num(cx) << "\" y=\"" << num(cy) << "\" font-size=\""
        << num(radius * 0.8) << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << site.idx
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

double side_view_scale(const RenderOptions& options) { return 4 * options.base_width_px; }

std::string render_svg(const Design& design, const RenderOptions& options) {
  if (!(options.base_width_px > 0)) throw ExportError("base_width_px must be positive");
  options.geometry.check();
  if (options.view == View::side) return render_side(design, options);
  return MainView(design, options).render();
}

}  // namespace scadkit
