#include "hypdiam/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace hypdiam {

namespace {

struct FrontierEntry {
  double key;
  std::int64_t seq;
  Isometry tile;
  std::int32_t parent;
  std::int16_t depth;
  std::int8_t word_last;
};

struct LaterFirst {
  bool operator()(const FrontierEntry& a, const FrontierEntry& b) const {
    return a.key != b.key ? a.key > b.key : a.seq > b.seq;
  }
};

void check_radius(double radius) {
  if (!(radius >= 0.0)) {
    throw InputError("radius must be nonnegative");
  }
  if (radius > kMaxRadius) {
    throw RangeError("radius " + std::to_string(radius) + " exceeds the supported maximum of 30");
  }
}

// Visits, in nondecreasing key order, every orbit node whose separating side
// lies within `radius`. `visit` receives the node and its index.
template <class Visit>
std::int64_t best_first(const HexagonGeometry& hex, double radius, std::int64_t budget, Visit&& visit) {
  std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, LaterFirst> frontier;
  std::int64_t seq = 0;
  frontier.push(FrontierEntry{0.0, seq++, Isometry{}, -1, 0, -1});
  std::int64_t visited = 0;
  while (!frontier.empty()) {
    const FrontierEntry e = frontier.top();
    frontier.pop();
    if (e.key > radius + kTieTolerance) {
      break;
    }
    if (visited >= budget) {
      return -1;
    }
    const std::int64_t index = visited++;
    visit(e, index);
    for (int j = 0; j < 3; ++j) {
      if (j == e.word_last) {
        continue;
      }
      OrbitStep step = step_across(hex, e.tile, j);
      if (step.side_distance <= radius + kTieTolerance) {
        frontier.push(FrontierEntry{step.side_distance, seq++, step.child, static_cast<std::int32_t>(index),
                                    static_cast<std::int16_t>(e.depth + 1), static_cast<std::int8_t>(j)});
      }
    }
  }
  return visited;
}

}  // namespace

OrbitStep step_across(const HexagonGeometry& hex, const Isometry& tile, int side) {
  // Measured in the tile's own frame, where the side has small coordinates:
  // d(o, tile(side)) = d(tile^-1 o, side), and tile^-1 o = J (row 0 of tile).
  const Point pulled = Point::from_ambient(Vec3{tile(0, 0), -tile(0, 1), -tile(0, 2)});
  return OrbitStep{tile * hex.reflections[side], distance_point_to_segment(pulled, hex.long_side(side))};
}

BallCensus enumerate_ball(const HexagonGeometry& hex, double radius, const EnumerationOptions& options) {
  check_radius(radius);
  BallCensus census;
  census.ell = hex.ell;
  census.radius = radius;
  const double inner = radius - 2.0 * hex.c_ell - kTieTolerance;
  const double outer = radius - kTieTolerance;
  std::vector<std::int64_t> buckets;
  auto visit = [&](const FrontierEntry& e, std::int64_t index) {
    const Point p = e.tile.image_of_origin();
    const double d = distance_from_origin(p);
    if (d <= radius + kTieTolerance) {
      ++census.count;
      const auto b = static_cast<std::size_t>(d);
      if (buckets.size() <= b) {
        buckets.resize(b + 1, 0);
      }
      ++buckets[b];
    }
    if (d >= inner && d < outer) {
      ++census.shell_count;
    }
    if (options.on_node) {
      options.on_node(TreeNode{e.word_last, e.depth, e.tile, p, e.key, d, index, e.parent});
    }
  };
  const std::int64_t visited = best_first(hex, radius, options.node_budget, visit);
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    census.histogram.emplace_back(static_cast<double>(b), buckets[b]);
  }
  if (visited < 0) {
    census.nodes_expanded = options.node_budget;
    throw CensusBudgetExceeded("enumerate_ball: node budget of " + std::to_string(options.node_budget) +
                                   " exhausted",
                               census);
  }
  census.nodes_expanded = visited;
  return census;
}

BallCensus enumerate_ball(double ell, double radius, const EnumerationOptions& options) {
  return enumerate_ball(build_hexagon(ell), radius, options);
}

std::int64_t brute_force_count(const HexagonGeometry& hex, double radius, std::int64_t node_budget) {
  check_radius(radius);
  const double reach = radius + kTieTolerance - 2.0 * hex.c_ell;
  const int max_length = reach < 0.0 ? 0 : 1 + static_cast<int>(std::floor(reach / hex.t));
  std::int64_t count = 0;
  std::int64_t words = 0;
  struct Word {
    Isometry tile;
    int length;
    int last;
  };
  std::vector<Word> stack{{Isometry{}, 0, -1}};
  while (!stack.empty()) {
    const Word w = stack.back();
    stack.pop_back();
    if (++words > node_budget) {
      throw ResourceError("brute_force_count: node budget exhausted");
    }
    if (distance_from_origin(w.tile.image_of_origin()) <= radius + kTieTolerance) {
      ++count;
    }
    if (w.length == max_length) {
      continue;
    }
    for (int j = 0; j < 3; ++j) {
      if (j != w.last) {
        stack.push_back(Word{w.tile * hex.reflections[j], w.length + 1, j});
      }
    }
  }
  return count;
}

std::int64_t shell_census(const HexagonGeometry& hex, double radius) {
  return enumerate_ball(hex, radius).shell_count;
}

std::int64_t shell_census(double ell, double radius) { return shell_census(build_hexagon(ell), radius); }

OrbitTree::OrbitTree(const HexagonGeometry& hex, double max_radius, std::int64_t node_budget)
    : ell_(hex.ell), c_ell_(hex.c_ell), max_radius_(max_radius) {
  check_radius(max_radius);
  auto visit = [&](const FrontierEntry& e, std::int64_t) {
    const double d = distance_from_origin(e.tile.image_of_origin());
    records_.push_back(Record{d, e.key, e.parent, e.depth, e.word_last});
  };
  const std::int64_t visited = best_first(hex, max_radius, node_budget, visit);
  if (visited < 0) {
    throw ResourceError("OrbitTree: node budget of " + std::to_string(node_budget) + " exhausted");
  }
  nodes_expanded_ = visited;
  sorted_distances_.reserve(records_.size());
  for (const Record& r : records_) {
    if (r.distance <= max_radius_ + kTieTolerance) {
      sorted_distances_.push_back(r.distance);
    }
  }
  std::sort(sorted_distances_.begin(), sorted_distances_.end());
}

std::int64_t OrbitTree::count_within(double radius) const {
  if (radius < 0.0) {
    return 0;
  }
  if (radius > max_radius_) {
    throw RangeError("OrbitTree::count_within: radius beyond the enumerated ball");
  }
  return std::upper_bound(sorted_distances_.begin(), sorted_distances_.end(), radius + kTieTolerance) - sorted_distances_.begin();
}

std::int64_t OrbitTree::shell_count(double radius) const {
  if (radius > max_radius_) {
    throw RangeError("OrbitTree::shell_count: radius beyond the enumerated ball");
  }
  const auto lo = std::lower_bound(sorted_distances_.begin(), sorted_distances_.end(),
                                   radius - 2.0 * c_ell_ - kTieTolerance);
  const auto hi = std::lower_bound(sorted_distances_.begin(), sorted_distances_.end(), radius - kTieTolerance);
  return hi - lo;
}

double submult_constant(const HexagonGeometry& hex) {
  return 20.0 / 3.0 * std::exp(8.0 * hex.c_ell + hex.ell);
}

std::vector<double> radius_grid(double max_radius, double step) {
  if (!(step > 0.0)) {
    throw InputError("radius_grid: step must be positive");
  }
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double r = k * step + kGridOffset;
    if (r > max_radius) {
      break;
    }
    grid.push_back(r);
  }
  return grid;
}

CountingReport verify_counting_bounds(const OrbitTree& tree, const HexagonGeometry& hex, double grid_step) {
  CountingReport rep;
  rep.ell = hex.ell;
  rep.c_ell = hex.c_ell;
  rep.radii = radius_grid(tree.max_radius(), grid_step);
  const double k = submult_constant(hex);
  for (double r : rep.radii) {
    rep.counts.push_back(tree.count_within(r));
    rep.shells.push_back(tree.shell_count(r));
  }
  const std::size_t n = rep.radii.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double sum = rep.radii[i] + rep.radii[j];
      if (sum > tree.max_radius()) {
        break;
      }
      ++rep.submult_checked;
      const double lhs = static_cast<double>(tree.count_within(sum));
      const double rhs = k * static_cast<double>(rep.counts[i]) * static_cast<double>(rep.counts[j]);
      if (!(lhs <= rhs)) {
        ++rep.submult_violations;
        rep.submult_failures.emplace_back(rep.radii[i], rep.radii[j]);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rep.radii[i];
    if (static_cast<double>(rep.counts[i]) > 5.0 * std::exp(r)) {
      ++rep.area_violations;
    }
    if (r >= 2.0 * hex.c_ell) {
      ++rep.sandwich_checked;
      if (!(rep.shells[i] <= rep.counts[i] && rep.counts[i] <= 2 * rep.shells[i])) {
        ++rep.sandwich_violations;
      }
    }
  }
  // Every enumerated point farther than R - 2C has an ancestor (itself
  // included) in S_R. Parents precede children in the records.
  const auto& recs = tree.records();
  std::vector<char> has_shell_ancestor(recs.size());
  for (double r : rep.radii) {
    const double inner = r - 2.0 * hex.c_ell - kTieTolerance;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const double d = recs[i].distance;
      if (d > tree.max_radius() + kTieTolerance) {
        has_shell_ancestor[i] = 0;
        continue;
      }
      const bool in_shell = d >= inner && d < r - kTieTolerance;
      has_shell_ancestor[i] = in_shell || (recs[i].parent >= 0 && has_shell_ancestor[recs[i].parent]);
      if (d > inner) {
        ++rep.ancestor_checked;
        if (!has_shell_ancestor[i]) {
          ++rep.ancestor_violations;
        }
      }
    }
  }
  return rep;
}

CountingReport verify_counting_bounds(const HexagonGeometry& hex, double max_radius, double grid_step) {
  return verify_counting_bounds(OrbitTree(hex, max_radius), hex, grid_step);
}

GrowthEstimate delta_estimate(const OrbitTree& tree, const HexagonGeometry& hex, double max_radius) {
  if (!(max_radius >= 4.0 * hex.c_ell)) {
    throw InputError("delta_estimate: R_max must cover at least two shells (4 C_ell)");
  }
  GrowthEstimate est;
  est.raw_rate = std::log(static_cast<double>(tree.count_within(max_radius))) / max_radius;
  const double correction = std::log(20.0 / 3.0) + 8.0 * hex.c_ell + hex.ell;
  std::vector<double> sample = radius_grid(max_radius, 0.25);
  sample.push_back(max_radius);
  est.certified_upper = HUGE_VAL;
  for (double r : sample) {
    if (r < 2.0 * hex.c_ell) {
      continue;
    }
    const double bound = (std::log(static_cast<double>(tree.count_within(r))) + correction) / r;
    if (bound < est.certified_upper) {
      est.certified_upper = bound;
      est.argmin_radius = r;
    }
  }
  return est;
}

GrowthEstimate delta_estimate(const HexagonGeometry& hex, double max_radius) {
  if (!(max_radius >= 4.0 * hex.c_ell)) {
    throw InputError("delta_estimate: R_max must cover at least two shells (4 C_ell)");
  }
  return delta_estimate(OrbitTree(hex, max_radius), hex, max_radius);
}

}  // namespace hypdiam
