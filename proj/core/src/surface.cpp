#include "hypdiam/surface.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "parallel.hpp"

namespace hypdiam {

namespace {

// A frontier entry. Its tile is parent tile * reflection[entry_side], formed
// only when the entry is expanded. Keys are sinh(side distance), which orders
// like the distance and needs no transcendental calls.
struct Frontier {
  double key;
  std::int32_t parent;  // index into the expanded rows, -1 at the root
  std::int32_t vertex;
  std::int32_t entry_half_edge;
  std::int16_t depth;
  std::int8_t entry_side;  // -1 at the root
};

// Monotone bucket queue for nonnegative keys that never decrease along a
// path. A bucket is a range of the key's bit pattern (exponent plus four
// mantissa bits, a relative width of 1/16), popped last-in first-out.
class BucketQueue {
 public:
  BucketQueue() : buckets_(kBuckets) {}

  void clear() {
    for (std::size_t i = cursor_; i < buckets_.size() && size_ > 0; ++i) {
      size_ -= buckets_[i].size();
      buckets_[i].clear();
    }
    cursor_ = 0;
    size_ = 0;
  }

  void push(const Frontier& f) {
    buckets_[std::max(cursor_, index(f.key))].push_back(f);
    ++size_;
  }

  bool empty() const { return size_ == 0; }

  /// Smallest key any queued entry can have; the queue must be nonempty.
  double floor_key() {
    advance();
    return cursor_ == 0 ? 0.0 : std::bit_cast<double>(static_cast<std::uint64_t>(cursor_ - 1 + kBase) << kShift);
  }

  Frontier pop() {
    advance();
    const Frontier f = buckets_[cursor_].back();
    buckets_[cursor_].pop_back();
    --size_;
    return f;
  }

 private:
  static constexpr int kShift = 48;
  static constexpr double kTiny = 0x1.0p-20;
  static inline const std::uint64_t kBase = std::bit_cast<std::uint64_t>(kTiny) >> kShift;
  static constexpr std::size_t kBuckets = 1200;

  static std::size_t index(double key) {
    if (!(key >= kTiny)) {
      return 0;
    }
    const std::uint64_t i = (std::bit_cast<std::uint64_t>(key) >> kShift) - kBase + 1;
    return std::min<std::size_t>(i, kBuckets - 1);
  }

  void advance() {
    while (buckets_[cursor_].empty()) {
      ++cursor_;
    }
  }

  std::vector<std::vector<Frontier>> buckets_;
  std::size_t cursor_ = 0;
  std::size_t size_ = 0;
};

struct SideData {
  Vec3 a, b, normal;
  double ab;
};

// sinh of distance_point_to_segment(p, side) for p on the hyperboloid.
inline double sinh_side_distance(const Vec3& p, const SideData& side) {
  const double pa = lorentz(p, side.a);
  const double pb = lorentz(p, side.b);
  if (pb <= side.ab * pa && pa <= side.ab * pb) {
    return std::abs(lorentz(p, side.normal));
  }
  const double c = std::min(pa, pb);
  return std::sqrt(std::max(0.0, (c - 1.0) * (c + 1.0)));
}

// Eccentricities agreeing to this are treated as equal when pruning sources.
constexpr double kBoundSlack = 1e-9;

}  // namespace

int ribbon_side(int entry_local, int entry_side, int depth, int local) {
  if (entry_side < 0) {
    return local;
  }
  const int sign = depth % 2 == 0 ? 1 : -1;
  return ((entry_side + sign * (local - entry_local)) % 3 + 3) % 3;
}

Surface::Surface(PantsGraph graph, const HexagonGeometry& hex) : graph_(std::move(graph)), hex_(hex) {
  const int euler = graph_.num_vertices() - graph_.num_edges();
  if (euler != -(graph_.genus() - 1)) {
    throw ConsistencyError("Surface: Euler count " + std::to_string(euler) + " does not match genus " +
                           std::to_string(graph_.genus()));
  }
}

Surface assemble_surface(PantsGraph graph, double ell) { return Surface(std::move(graph), build_hexagon(ell)); }

double auto_ell(int genus) { return std::max(1.0, 4.0 * std::log(std::log(static_cast<double>(genus)))); }

double theorem_budget(int genus) {
  const double lg = std::log(static_cast<double>(genus));
  return lg + 25.0 * std::log(lg);
}

double default_rcap(int genus) { return std::clamp(theorem_budget(genus) + 8.0, 8.0, kMaxRadius); }

double MidpointDistances::eccentricity() const {
  double e = 0.0;
  for (double d : distance) {
    e = std::max(e, d);
  }
  return e;
}

namespace {

// Buffers reused across the walks of one sweep.
struct WalkWorkspace {
  std::vector<Vec3> rows;
  std::vector<Isometry> tiles;
  BucketQueue queue;
  std::vector<double> best;
};

// Settles the vertices flagged in `targets` (all when null): stops once their
// distances are exact, or, with settled_below set, once every target has a
// lift within `threshold`, in which case those distances are upper bounds
// only. Other vertices keep whatever upper bound the walk found.
MidpointDistances walk_cover(const Surface& surface, int source, double r_cap, const WalkOptions& options,
                             double threshold, WalkWorkspace& ws, bool* settled_below,
                             const std::vector<char>* targets = nullptr) {
  if (!(r_cap >= 0.0 && r_cap <= kMaxRadius)) {
    throw RangeError("midpoint_distances_from: r_cap must lie in [0, 30]");
  }
  const PantsGraph& graph = surface.graph();
  const HexagonGeometry& hex = surface.hex();
  if (source < 0 || source >= graph.num_vertices()) {
    throw InputError("midpoint_distances_from: no such vertex");
  }
  MidpointDistances out;
  out.source = source;
  out.r_cap = r_cap;
  const int n = graph.num_vertices();
  // First-hit distances are tracked as cosh d, the (0,0) entry of the tile.
  std::vector<double>& best = ws.best;
  best.assign(n, kUnreached);
  int unreached = n;
  int open_targets = unreached;
  if (targets != nullptr) {
    open_targets = static_cast<int>(std::count(targets->begin(), targets->end(), 1));
  }
  const auto is_target = [&](int w) { return targets == nullptr || (*targets)[w] != 0; };
  double worst = 0.0;  // max cosh d over targets once all are reached
  double stop_key = kUnreached;  // sinh(acosh(worst) - inradius)
  if (settled_below != nullptr) {
    *settled_below = false;
  }

  // Every center beyond a side is at least the inradius from its line, so a
  // subtree lies at distance >= side_distance + inradius. Settling and pruning
  // use that bound.
  const double inradius = std::min(hex.c_ell, hex.c_prime);
  std::array<SideData, 3> sides;
  for (int k = 0; k < 3; ++k) {
    const GeodesicSegment& seg = hex.long_side(k);
    sides[k] = SideData{seg.a.coords(), seg.b.coords(), seg.normal, lorentz(seg.a.coords(), seg.b.coords())};
  }
  std::vector<Vec3>& rows = ws.rows;
  std::vector<Isometry>& tiles = ws.tiles;
  BucketQueue& queue = ws.queue;
  rows.clear();
  tiles.clear();
  queue.clear();
  queue.push(Frontier{0.0, -1, source, -1, 0, -1});

  const double limit = r_cap + kTieTolerance;
  const double cosh_limit = std::cosh(limit);
  const double key_limit = std::sinh(limit);
  const double key_prune = options.stop_when_settled ? std::sinh(std::max(0.0, limit - inradius)) : key_limit;
  const double cosh_threshold = threshold < 0.0 ? -1.0 : std::cosh(threshold);
  std::int64_t visited = 0;
  while (!queue.empty()) {
    if (options.stop_when_settled && open_targets == 0 && queue.floor_key() >= stop_key) {
      break;
    }
    const Frontier node = queue.pop();
    if (node.key > key_limit) {
      continue;
    }
    if (options.stop_when_settled && open_targets == 0) {
      if (node.key >= stop_key) {
        continue;
      }
      if (worst <= cosh_threshold) {
        if (settled_below != nullptr) {
          *settled_below = true;
        }
        break;
      }
    }
    if (visited >= options.node_budget) {
      throw ResourceError("midpoint_distances_from: node budget of " + std::to_string(options.node_budget) +
                          " exhausted");
    }
    const auto id = static_cast<std::int32_t>(visited++);
    // Only row 0 of the tile is needed: it holds cosh d(o, tile o) and, up to
    // signs, tile^-1 o. Full tiles are formed only for the node stream.
    if (node.parent < 0) {
      rows.push_back(Vec3{1.0, 0.0, 0.0});
    } else {
      const Vec3& r = rows[node.parent];
      const Isometry& m = hex.reflections[node.entry_side];
      rows.push_back(Vec3{r.x0 * m(0, 0) + r.x1 * m(1, 0) + r.x2 * m(2, 0),
                          r.x0 * m(0, 1) + r.x1 * m(1, 1) + r.x2 * m(2, 1),
                          r.x0 * m(0, 2) + r.x1 * m(1, 2) + r.x2 * m(2, 2)});
    }
    const Vec3 row = rows.back();
    const double x0 = std::max(1.0, row.x0);
    if (x0 <= cosh_limit && x0 < best[node.vertex]) {
      const double old = best[node.vertex];
      best[node.vertex] = x0;
      if (old == kUnreached) {
        --unreached;
      }
      if (is_target(node.vertex)) {
        if (old == kUnreached) {
          --open_targets;
        }
        if (open_targets == 0 && old >= worst) {
          worst = 0.0;
          for (int w = 0; w < n; ++w) {
            if (is_target(w)) {
              worst = std::max(worst, best[w]);
            }
          }
          stop_key = std::sinh(std::acosh(worst) - inradius);
        }
      }
    }
    if (options.on_node) {
      tiles.push_back(node.parent < 0 ? Isometry{} : tiles[node.parent] * hex.reflections[node.entry_side]);
      const Isometry& tile = tiles.back();
      const Point p = tile.image_of_origin();
      options.on_node(CoverWalkNode{
          TreeNode{node.entry_side, node.depth, tile, p, std::asinh(node.key), distance_from_origin(p), id,
                   node.parent},
          node.vertex, node.entry_half_edge});
    }

    // tile^-1 o, against which the untransformed sides are measured.
    const Vec3 pulled{row.x0, -row.x1, -row.x2};
    const int entry_local = node.entry_half_edge < 0 ? -1 : PantsGraph::local_of(node.entry_half_edge);
    for (int local = 0; local < 3; ++local) {
      if (local == entry_local) {
        continue;
      }
      const int side = ribbon_side(entry_local, node.entry_side, node.depth, local);
      const double child_key = sinh_side_distance(pulled, sides[side]);
      if (child_key > key_prune) {
        continue;
      }
      const std::int32_t partner = graph.partner(3 * node.vertex + local);
      queue.push(Frontier{child_key, id, PantsGraph::vertex_of(partner), partner,
                          static_cast<std::int16_t>(node.depth + 1), static_cast<std::int8_t>(side)});
    }
  }
  out.distance.resize(n);
  for (int w = 0; w < n; ++w) {
    out.distance[w] = best[w] == kUnreached ? kUnreached : std::acosh(best[w]);
  }
  out.nodes_expanded = visited;
  out.unreached = targets == nullptr ? unreached : open_targets;
  return out;
}

}  // namespace

MidpointDistances midpoint_distances_from(const Surface& surface, int source, double r_cap,
                                          const WalkOptions& options) {
  WalkWorkspace ws;
  return walk_cover(surface, source, r_cap, options, -1.0, ws, nullptr);
}

namespace {

struct SweepResult {
  double diameter = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;
  int walked = 0;
  std::int64_t nodes = 0;
  bool complete = true;
};

SweepResult exhaustive_sweep(const Surface& surface, double r_cap, const DiameterOptions& options) {
  const int n = surface.graph().num_vertices();
  SweepResult res;
  std::vector<MidpointDistances> walks(n);
  WalkOptions walk;
  walk.node_budget = options.node_budget;
  detail::parallel_for(n, options.threads,
                       [&](int v) { walks[v] = midpoint_distances_from(surface, v, r_cap, walk); });
  res.lower.resize(n);
  res.upper.resize(n);
  for (int v = 0; v < n; ++v) {
    const double e = walks[v].complete() ? walks[v].eccentricity() : kUnreached;
    res.lower[v] = res.upper[v] = e;
    res.complete = res.complete && walks[v].complete();
    res.diameter = std::max(res.diameter, e);
    res.nodes += walks[v].nodes_expanded;
  }
  res.walked = n;
  return res;
}

// Exact diameter of the midpoint metric without walking to the full
// eccentricity from every vertex. D is the largest exactly known distance so
// far. A pair is certified once a lift within D joins its ends (from either
// side, as the metric is symmetric); such a pair can never raise the
// diameter. Each walk only has to settle its source's uncertified partners,
// either showing they all lie within D or computing them exactly, so later
// walks end early. A few double-sweep sources go first to push D up fast.
SweepResult certified_sweep(const Surface& surface, double r_cap, const DiameterOptions& options) {
  const int n = surface.graph().num_vertices();
  SweepResult res;
  res.lower.assign(n, 0.0);
  res.upper.assign(n, kUnreached);
  std::vector<std::vector<char>> certified(n, std::vector<char>(n, 0));
  std::vector<int> open(n, n - 1);
  for (int v = 0; v < n; ++v) {
    certified[v][v] = 1;
  }
  WalkOptions walk;
  walk.node_budget = options.node_budget;
  WalkWorkspace ws;
  constexpr int kDoubleSweeps = 4;
  int next = 0;
  int sweep_source = 0;
  for (int round = 0;; ++round) {
    int v = sweep_source;
    if (round >= kDoubleSweeps || open[v] == 0) {
      while (next < n && open[next] == 0) {
        ++next;
      }
      if (next == n) {
        break;
      }
      v = next;
    }
    std::vector<char> targets(n);
    for (int w = 0; w < n; ++w) {
      targets[w] = certified[v][w] ? 0 : 1;
    }
    bool below = false;
    const double threshold = round == 0 ? -1.0 : res.diameter + kBoundSlack;
    const MidpointDistances dist = walk_cover(surface, v, r_cap, walk, threshold, ws, &below, &targets);
    ++res.walked;
    res.nodes += dist.nodes_expanded;
    if (!dist.complete()) {
      res.complete = false;
      return res;
    }
    if (!below) {
      // Every target distance is exact.
      for (int w = 0; w < n; ++w) {
        if (targets[w]) {
          res.diameter = std::max(res.diameter, dist.distance[w]);
          res.lower[w] = std::max(res.lower[w], dist.distance[w]);
          res.lower[v] = std::max(res.lower[v], dist.distance[w]);
        }
      }
    }
    double far = -1.0;
    for (int w = 0; w < n; ++w) {
      const double d = dist.distance[w];
      if (!certified[v][w] && d <= res.diameter + kBoundSlack) {
        certified[v][w] = certified[w][v] = 1;
        --open[v];
        --open[w];
      }
      if (targets[w] && d != kUnreached && d > far) {
        far = d;
        sweep_source = w;
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    res.upper[v] = res.diameter;
  }
  return res;
}

}  // namespace

DiameterReport diameter_estimate(const Surface& surface, const DiameterOptions& options) {
  const PantsGraph& graph = surface.graph();
  if (!is_connected(graph)) {
    throw DomainError("diameter_estimate: the gluing graph is disconnected");
  }
  DiameterReport rep;
  rep.genus = graph.genus();
  rep.ell = surface.ell();
  rep.bavard = bavard_bound(rep.genus);
  rep.theorem_budget = theorem_budget(rep.genus);
  double r_cap = options.r_cap < 0.0 ? default_rcap(rep.genus) : options.r_cap;
  if (r_cap > kMaxRadius) {
    throw RangeError("diameter_estimate: r_cap exceeds 30");
  }
  for (int attempt = 0;; ++attempt) {
    SweepResult res = options.exhaustive ? exhaustive_sweep(surface, r_cap, options)
                                         : certified_sweep(surface, r_cap, options);
    rep.nodes_expanded += res.nodes;
    rep.sources_walked += res.walked;
    if (res.complete) {
      rep.r_cap = r_cap;
      rep.midpoint_diameter = res.diameter;
      rep.padded_diameter = res.diameter + 2.0 * pants_radius(surface.hex());
      rep.eccentricity_lower = std::move(res.lower);
      rep.eccentricity_upper = std::move(res.upper);
      return rep;
    }
    if (attempt >= options.max_retries || r_cap >= kMaxRadius) {
      throw IncompleteDiameter("diameter_estimate: vertices unreached within r_cap " + std::to_string(r_cap),
                               std::move(res.upper));
    }
    r_cap = std::min(kMaxRadius, 2.0 * r_cap);
  }
}

double bavard_bound(int genus) {
  if (genus < 2) {
    throw InputError("bavard_bound: genus must be at least 2");
  }
  const double pi = std::acos(-1.0);
  return std::acosh(1.0 / (std::sqrt(3.0) * std::tan(pi / (12.0 * genus - 6.0))));
}

double thickness_upper_bound(int genus, double diameter) {
  if (genus < 2 || !(diameter >= 0.0)) {
    throw InputError("thickness_upper_bound: need g >= 2 and D >= 0");
  }
  return (std::cosh(diameter) - 1.0) / (2.0 * (genus - 1));
}

}  // namespace hypdiam
