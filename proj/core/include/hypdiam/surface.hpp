#pragma once

// Zero-twist surfaces glued from copies of the pants along a PantsGraph, and a
// distance oracle between pants midpoints that walks the covering tree of
// pants. The walk is the orbit tree of the lattice module, with each node also
// carrying the graph vertex whose pants it covers.

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "hypdiam/errors.hpp"
#include "hypdiam/graph.hpp"
#include "hypdiam/hexagon.hpp"
#include "hypdiam/lattice.hpp"

namespace hypdiam {

/// Ribbon convention. At the root, local half-edge a sits on long side a. A
/// pants entered through local half-edge b across long side sigma, at depth k,
/// puts local a on side sigma + (-1)^k (a - b) mod 3: counterclockwise in its
/// own frame, which the reflections flip at odd depth.
int ribbon_side(int entry_local, int entry_side, int depth, int local);

class Surface {
 public:
  /// Checks the Euler count V - E = -(g - 1). Propagates hexagon errors.
  Surface(PantsGraph graph, const HexagonGeometry& hex);

  const PantsGraph& graph() const { return graph_; }
  const HexagonGeometry& hex() const { return hex_; }
  int genus() const { return graph_.genus(); }
  double ell() const { return hex_.ell; }

 private:
  PantsGraph graph_;
  HexagonGeometry hex_;
};

Surface assemble_surface(PantsGraph graph, double ell);

/// max(1, 4 log log g).
double auto_ell(int genus);

/// log g + 25 log log g.
double theorem_budget(int genus);

/// Default walk cap: log g + 25 log log g + 8, clamped to [8, 30] (the sum
/// is negative at g = 2).
double default_rcap(int genus);

struct CoverWalkNode {
  TreeNode node;
  int covered_vertex = 0;
  int entry_half_edge = -1;  // -1 at the root
};

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

struct MidpointDistances {
  int source = 0;
  double r_cap = 0.0;
  std::vector<double> distance;  // kUnreached if no lift lies within r_cap
  std::int64_t nodes_expanded = 0;
  int unreached = 0;

  bool complete() const { return unreached == 0; }
  double eccentricity() const;
};

struct WalkOptions {
  std::int64_t node_budget = kDefaultNodeBudget;
  /// Stop as soon as no unvisited lift can improve any distance. With this off
  /// the walk runs until the frontier passes r_cap, visiting every lift whose
  /// separating side lies within it.
  bool stop_when_settled = true;
  std::function<void(const CoverWalkNode&)> on_node;
};

/// First-hit distances d(o, x) over lifts x of each vertex's midpoint with
/// d <= r_cap. Throws RangeError for r_cap outside [0, 30] and ResourceError
/// when the node budget runs out.
MidpointDistances midpoint_distances_from(const Surface& surface, int source, double r_cap,
                                          const WalkOptions& options = {});

struct DiameterOptions {
  double r_cap = -1.0;  // negative: default_rcap(g)
  int max_retries = 2;  // cap doublings (bounded by 30) when a vertex is unreached
  /// Walk from every vertex instead of pruning sources with eccentricity
  /// bounds. Both give the same diameter; only this one makes every
  /// eccentricity exact.
  bool exhaustive = false;
  int threads = 1;
  std::int64_t node_budget = kDefaultNodeBudget;
};

struct DiameterReport {
  int genus = 0;
  double ell = 0.0;
  double r_cap = 0.0;  // cap the final pass ran with
  double midpoint_diameter = 0.0;
  double padded_diameter = 0.0;
  double bavard = 0.0;
  double theorem_budget = 0.0;
  // Bracket of each vertex's eccentricity; equal for walked sources and
  // everywhere in exhaustive mode.
  std::vector<double> eccentricity_lower;
  std::vector<double> eccentricity_upper;
  int sources_walked = 0;
  std::int64_t nodes_expanded = 0;
};

/// Thrown when some vertex stays unreached at the largest permitted cap.
class IncompleteDiameter : public ResourceError {
 public:
  IncompleteDiameter(const std::string& what, std::vector<double> achieved)
      : ResourceError(what), achieved_eccentricities(std::move(achieved)) {}
  std::vector<double> achieved_eccentricities;  // kUnreached where unknown
};

/// Throws DomainError for a disconnected graph.
DiameterReport diameter_estimate(const Surface& surface, const DiameterOptions& options = {});

/// arccosh(1 / (sqrt 3 tan(pi / (12 g - 6)))).
double bavard_bound(int genus);

/// (cosh D - 1) / (2 (g - 1)).
double thickness_upper_bound(int genus, double diameter);

}  // namespace hypdiam
