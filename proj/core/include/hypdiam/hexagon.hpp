#pragma once

// The right-angled hexagon with three alternating sides of length ell/2, its
// derived constants, and the three reflections generating the orbit lattice.

#include <array>

#include "hypdiam/hyp_core.hpp"

namespace hypdiam {

inline constexpr double kMinEll = 0.1;
inline constexpr double kMaxEll = 60.0;

struct HexagonGeometry {
  double ell = 0.0;      // cuff length
  double s = 0.0;        // long side, ell / 2
  double t = 0.0;        // short side (half a seam)
  double c_ell = 0.0;    // distance from the center to the long sides
  double c_prime = 0.0;  // distance from the center to the short sides
  double rho = 0.0;      // circumradius about the center
  double closing_residual = 0.0;

  Point center;  // always the base point (1, 0, 0)
  // Counterclockwise from vertex 0. Side i joins vertex i to vertex i+1; even
  // sides are long (s), odd sides short (t).
  std::array<Point, 6> vertices;
  std::array<GeodesicSegment, 6> sides;
  // reflections[k] is the reflection in long side 2k.
  std::array<Isometry, 3> reflections;

  const GeodesicSegment& long_side(int k) const { return sides[2 * k]; }
  const GeodesicSegment& short_side(int k) const { return sides[2 * k + 1]; }
};

/// Builds H_ell centered at the base point with 3-fold symmetry. The short side
/// is found by closing the right-angled chain s, t, s, t, s, t (bisection on
/// t), then checked against cosh t = cosh(ell/2) / (cosh(ell/2) - 1).
/// Throws InputError outside [0.1, 60] and ConsistencyError if the chain does
/// not close within 1e-6.
HexagonGeometry build_hexagon(double ell);

/// Length of the shortest disconnecting geodesic of the doubled hexagon, 2t.
double seam_length(const HexagonGeometry& hex);

/// Max distance from the center to the hexagon (attained at a vertex).
double circumradius(const HexagonGeometry& hex);

/// Upper bound on the distance from the pants midpoint to any point of the
/// pants (the hexagon doubled across its short sides).
double pants_radius(const HexagonGeometry& hex);

/// Residuals of the hexagon's defining identities, for self-checks.
struct HexagonResiduals {
  double max_angle_defect = 0.0;     // max |cos(interior angle)|
  double long_side_error = 0.0;      // max |len - ell/2|
  double short_side_spread = 0.0;    // max - min short side length
  double long_distance_spread = 0.0;   // spread of d(center, long side) about c_ell
  double short_distance_spread = 0.0;  // spread of d(center, short side) about c_prime
  double cosh_identity_error = 0.0;  // relative error of cosh t (cosh s - 1) = cosh s
  double inscribed_margin = 0.0;     // min(c_ell, c_prime) - log(3)/2
};

HexagonResiduals hexagon_residuals(const HexagonGeometry& hex);

/// The closed-form value of cosh t for cuff length ell.
double cosh_short_side(double ell);

}  // namespace hypdiam
