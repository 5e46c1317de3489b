#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "acn/grid.hpp"

namespace acn {

struct Polyline {
  std::vector<Vec2> points;
  bool closed = false;
  bool front_on_boundary = false;
  bool back_on_boundary = false;
};

/// Zero level set of u by marching squares over the quads between
/// neighbouring ring centres, plus an outer layer closed by the boundary
/// trace at r = R (so open curves end on the boundary). The disk inside
/// the first ring is a fan of triangles around a pole node carrying the
/// ring mean. Ambiguous quads are
/// split by the sign of the quad average. Throws std::runtime_error
/// ("no interface") if u has no sign change.
std::vector<Polyline> zero_level_set(const ScalarField& u);

/// Mean over rays of the first outward u = 0 crossing (concentric use);
/// empty if no ray crosses.
std::optional<double> radius_estimate(const ScalarField& u);

struct ContactAngle {
  Vec2 point;
  double degrees = 0.0;
  std::size_t fitted_points = 0;
};

/// Angle between the boundary and a least-squares line through the
/// level-set vertices with r >= R - band at each boundary-touching end.
/// Measured from the boundary tangent on the u > 0 side, so 90 degrees is
/// perpendicular contact.
std::vector<ContactAngle> contact_angles(const ScalarField& u, const std::vector<Polyline>& lines,
                                         double band);

/// Mean x2 coordinate of all level-set vertices (position of a near-flat
/// chord).
double mean_height(const std::vector<Polyline>& lines);

/// CSV with header x,y,segment.
void write_interface_csv(std::ostream& os, const std::vector<Polyline>& lines);

}  // namespace acn
