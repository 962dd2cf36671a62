#pragma once

// The orbit of the hexagon center under the group generated by reflections in
// the three long sides. Reduced words in the generators are in bijection with
// orbit points, and the hexagons they label form a trivalent tree: the
// children of w are w r_j for j != last letter of w, and the child's hexagon is
// w H reflected across the side w s_j.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hypdiam/errors.hpp"
#include "hypdiam/hexagon.hpp"
#include "hypdiam/hyp_core.hpp"

namespace hypdiam {

inline constexpr std::int64_t kDefaultNodeBudget = 100'000'000;
/// Distances within this of a ball or shell boundary count as on it.
inline constexpr double kTieTolerance = 1e-9;

/// One orbit point, reached by a reduced word.
struct TreeNode {
  int word_last = -1;  // generator index 0..2, -1 at the root
  int depth = 0;
  Isometry isometry;
  Point point;
  double side_distance = 0.0;  // distance from the center to the separating side
  double distance = 0.0;       // distance from the center to point
  std::int64_t index = 0;      // visit order
  std::int64_t parent = -1;
};

struct BallCensus {
  double ell = 0.0;
  double radius = 0.0;
  std::int64_t count = 0;        // #{d <= R}
  std::int64_t shell_count = 0;  // #{R - 2C <= d < R}
  std::int64_t nodes_expanded = 0;
  std::vector<std::pair<double, std::int64_t>> histogram;  // unit-width buckets by lower edge
};

/// Thrown when the node budget runs out; `partial` holds what was counted.
class CensusBudgetExceeded : public ResourceError {
 public:
  CensusBudgetExceeded(const std::string& what, BallCensus partial)
      : ResourceError(what), partial(std::move(partial)) {}
  BallCensus partial;
};

struct EnumerationOptions {
  std::int64_t node_budget = kDefaultNodeBudget;
  /// Called for every visited node in nondecreasing side_distance order.
  std::function<void(const TreeNode&)> on_node;
};

/// The child hexagon across long side `side` of the tile placed by `tile`, and
/// the distance from the center to that side.
struct OrbitStep {
  Isometry child;
  double side_distance;
};

OrbitStep step_across(const HexagonGeometry& hex, const Isometry& tile, int side);

/// Best-first enumeration of the closed ball of radius R about the center.
/// A subtree is skipped iff its separating side is farther than R, which is
/// exact: every descendant's geodesic from the center crosses that side.
BallCensus enumerate_ball(const HexagonGeometry& hex, double radius, const EnumerationOptions& options = {});
BallCensus enumerate_ball(double ell, double radius, const EnumerationOptions& options = {});

/// N(R) by listing every reduced word short enough to possibly land within R,
/// with no side-distance pruning. A word of length n >= 1 crosses n long-side
/// lines, consecutive ones at least t apart, so d(o, w o) >= 2C + (n - 1) t.
/// Throws ResourceError past `node_budget` words.
std::int64_t brute_force_count(const HexagonGeometry& hex, double radius,
                               std::int64_t node_budget = kDefaultNodeBudget);

/// #{y : R - 2C <= d(o, y) < R}.
std::int64_t shell_census(const HexagonGeometry& hex, double radius);
std::int64_t shell_census(double ell, double radius);

/// Every orbit point within a radius, kept compactly so counts at any smaller
/// radius and ancestor relations can be queried afterwards.
class OrbitTree {
 public:
  struct Record {
    double distance;
    double side_distance;
    std::int32_t parent;
    std::int16_t depth;
    std::int8_t word_last;
  };

  OrbitTree(const HexagonGeometry& hex, double max_radius, std::int64_t node_budget = kDefaultNodeBudget);

  double ell() const { return ell_; }
  double c_ell() const { return c_ell_; }
  double max_radius() const { return max_radius_; }
  std::int64_t nodes_expanded() const { return nodes_expanded_; }

  /// Visited nodes in visit order; parents precede children.
  const std::vector<Record>& records() const { return records_; }

  /// N(R) = #{d <= R}; R must not exceed max_radius(). Negative R gives 0.
  std::int64_t count_within(double radius) const;
  /// #{R - 2C <= d < R}.
  std::int64_t shell_count(double radius) const;

 private:
  double ell_;
  double c_ell_;
  double max_radius_;
  std::int64_t nodes_expanded_ = 0;
  std::vector<Record> records_;
  std::vector<double> sorted_distances_;
};

/// Outcome of checking the counting statements on a radius grid.
struct CountingReport {
  double ell = 0.0;
  double c_ell = 0.0;
  std::vector<double> radii;
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> shells;
  std::int64_t submult_checked = 0;
  std::int64_t submult_violations = 0;   // N(R+r) > (20/3) e^{8C+ell} N(R) N(r)
  std::int64_t ancestor_checked = 0;
  std::int64_t ancestor_violations = 0;  // far point without an ancestor in S_R
  std::int64_t area_violations = 0;      // N(T) > 5 e^T
  std::int64_t sandwich_checked = 0;
  std::int64_t sandwich_violations = 0;  // not #S_R <= N(R) <= 2 #S_R, for R >= 2C
  std::vector<std::pair<double, double>> submult_failures;  // (R, r)

  bool all_ok() const {
    return submult_violations == 0 && ancestor_violations == 0 && area_violations == 0 &&
           sandwich_violations == 0;
  }
};

/// The constant (20/3) e^{8C + ell} of the sub-multiplicativity bound.
double submult_constant(const HexagonGeometry& hex);

/// Grid points k * step + offset, offset irrational so no radius ties a
/// lattice distance exactly.
std::vector<double> radius_grid(double max_radius, double step);
inline constexpr double kGridOffset = 4.142135623730950e-4;  // (sqrt 2 - 1) / 1000

CountingReport verify_counting_bounds(const HexagonGeometry& hex, double max_radius, double grid_step);
CountingReport verify_counting_bounds(const OrbitTree& tree, const HexagonGeometry& hex, double grid_step);

struct GrowthEstimate {
  double raw_rate = 0.0;         // log N(R_max) / R_max
  double certified_upper = 0.0;  // min_R (log N(R) + log(20/3) + 8C + ell) / R
  double argmin_radius = 0.0;
};

/// Brackets the growth exponent. Throws InputError when R_max is below two
/// shells (4C).
GrowthEstimate delta_estimate(const HexagonGeometry& hex, double max_radius);
GrowthEstimate delta_estimate(const OrbitTree& tree, const HexagonGeometry& hex, double max_radius);

}  // namespace hypdiam
