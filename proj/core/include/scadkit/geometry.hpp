#pragma once

#include <utility>
#include <vector>

#include "scadkit/error.hpp"
#include "scadkit/model.hpp"

namespace scadkit {

/// Side-view coordinates in nm: x to the right, y downward, z out of the
/// screen in the main view.
using Position3D = Vec3;

struct GeometryParams {
  double helix_spacing = 2.5;        // nm between neighboring helix centers
  double bases_per_turn = 10.5;
  double minor_groove_offset = 150;  // degrees from forward to reverse backbone

  /// Throws GeometryError when a parameter is out of range.
  void check() const;
};

/// Lattice site to 3D center (z = 0). Nearest neighbors are exactly
/// `helix_spacing` apart in every grid; honeycomb sites have three
/// neighbors, hex six, square four.
Position3D grid_to_position(Grid grid, GridPosition grid_position,
                            const GeometryParams& params = {});

/// Helix center from its grid position, or its free position when gridless.
Position3D helix_center(const Design& design, const Helix& helix,
                        const GeometryParams& params = {});

struct LayoutRow {
  int helix = 0;
  double y = 0.0;  // nm, first row at 0

  bool operator==(const LayoutRow&) const = default;
};

/// Vertical main-view coordinates: rows follow view order and each row sits
/// below the previous one by the 3D distance between their centers.
std::vector<LayoutRow> main_view_layout(const Design& design, const GeometryParams& params = {});

/// Backbone angle in [0, 360): 0 points up in the side view, increasing
/// clockwise. The forward backbone has angle `roll` at min_offset.
double backbone_angle(const Helix& helix, int offset, bool forward,
                      const GeometryParams& params = {});

/// Side-view direction from `from` to `to` in the same convention as
/// backbone_angle. Throws GeometryError for coincident centers.
double azimuth(const Position3D& from, const Position3D& to);

/// Roll for `helix_b` that points its backbone at (offset_a, !forward_a)
/// straight at the center of `helix_a`.
double unstrain_roll_at_crossover(const Design& design, int helix_a, int offset_a, bool forward_a,
                                  int helix_b, const GeometryParams& params = {});

/// Smallest absolute difference between two angles, in [0, 180].
double angle_difference(double a, double b);

}  // namespace scadkit
