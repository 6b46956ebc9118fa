#include "scadkit/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "scadkit/error.hpp"

namespace scadkit {
namespace {

double wrap_degrees(double angle) {
  double a = std::fmod(angle, 360.0);
  if (a < 0) a += 360.0;
  // fmod can return 360 - epsilon rounding to 360 after the add.
  if (a >= 360.0) a -= 360.0;
  return a;
}

int floor_mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

void GeometryParams::check() const {
  if (!(helix_spacing > 0)) throw GeometryError("helix_spacing must be positive");
  if (!(bases_per_turn > 0)) throw GeometryError("bases_per_turn must be positive");
  if (!(minor_groove_offset > 0 && minor_groove_offset < 360)) {
    throw GeometryError("minor_groove_offset must lie strictly between 0 and 360");
  }
}

Position3D grid_to_position(Grid grid, GridPosition gp, const GeometryParams& params) {
  const double s = params.helix_spacing;
  const double h = gp.h;
  const double v = gp.v;
  switch (grid) {
    case Grid::square:
      return {h * s, v * s, 0.0};
    case Grid::hex:
      return {(h + floor_mod(gp.v, 2) / 2.0) * s, v * std::numbers::sqrt3 / 2.0 * s, 0.0};
    case Grid::honeycomb: {
      // Every other site of a hex lattice rotated by 90 degrees; the
      // vertical stagger alternates with column parity.
      const double x = h * std::numbers::sqrt3 / 2.0 * s;
      const int vm = floor_mod(gp.v, 2);
      const double y = floor_mod(gp.h, 2) == 0 ? (v * 3 + vm) / 2.0 * s : (v * 3 - vm + 1) / 2.0 * s;
      return {x, y, 0.0};
    }
    case Grid::none:
      break;
  }
  throw GeometryError("grid_to_position requires a lattice grid, not none");
}

Position3D helix_center(const Design& design, const Helix& helix, const GeometryParams& params) {
  if (design.grid == Grid::none) {
    if (!helix.position) {
      throw GeometryError("helix " + std::to_string(helix.idx) + " has no position");
    }
    return *helix.position;
  }
  if (!helix.grid_position) {
    throw GeometryError("helix " + std::to_string(helix.idx) + " has no grid_position");
  }
  return grid_to_position(design.grid, *helix.grid_position, params);
}

std::vector<LayoutRow> main_view_layout(const Design& design, const GeometryParams& params) {
  std::vector<LayoutRow> rows;
  double y = 0.0;
  std::optional<Position3D> prev;
  for (int idx : view_order(design)) {
    const Position3D c = helix_center(design, design.helix(idx), params);
    if (prev) y += std::hypot(c.x - prev->x, c.y - prev->y, c.z - prev->z);
    rows.push_back({idx, y});
    prev = c;
  }
  return rows;
}

double backbone_angle(const Helix& helix, int offset, bool forward, const GeometryParams& params) {
  const int max = helix.max_offset.value_or(offset + 1);
  if (offset < helix.min_offset || offset >= max) {
    throw GeometryError("offset " + std::to_string(offset) + " outside helix " +
                        std::to_string(helix.idx) + " offset window");
  }
  const double turns = static_cast<double>(offset - helix.min_offset) / params.bases_per_turn;
  double angle = helix.roll + 360.0 * turns;
  if (!forward) angle += params.minor_groove_offset;
  return wrap_degrees(angle);
}

double azimuth(const Position3D& from, const Position3D& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (std::hypot(dx, dy) == 0.0) throw GeometryError("helix centers coincide in the side view");
  // Screen y grows downward, so "up" is -y; atan2(dx, -dy) is clockwise from up.
  return wrap_degrees(std::atan2(dx, -dy) * 180.0 / std::numbers::pi);
}

double unstrain_roll_at_crossover(const Design& design, int helix_a, int offset_a, bool forward_a,
                                  int helix_b, const GeometryParams& params) {
  const Helix& a = design.helix(helix_a);
  const Helix& b = design.helix(helix_b);
  // Window checks for both helices.
  backbone_angle(a, offset_a, forward_a, params);
  Helix unrolled = b;
  unrolled.roll = 0.0;
  const double base = backbone_angle(unrolled, offset_a, !forward_a, params);
  const double target = azimuth(helix_center(design, b, params), helix_center(design, a, params));
  return wrap_degrees(target - base);
}

double angle_difference(double a, double b) {
  const double d = wrap_degrees(a - b);
  return d > 180.0 ? 360.0 - d : d;
}

}  // namespace scadkit
