#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "hypdiam/errors.hpp"
#include "hypdiam/random.hpp"
#include "hypdiam/surface.hpp"

using namespace hypdiam;

namespace {

PantsGraph theta() { return PantsGraph(2, {3, 4, 5, 0, 1, 2}); }
PantsGraph dumbbell() { return PantsGraph(2, {1, 0, 3, 2, 5, 4}); }

PantsGraph connected_sample(int genus, std::uint64_t seed) {
  for (;; ++seed) {
    PantsGraph g = sample_configuration_model(genus, seed);
    if (is_connected(g)) {
      return g;
    }
  }
}

// First-hit distances over every cover word of at most max_depth letters. The
// pants covered by a word is tracked directly: a pants entered through local
// cuff b across side sigma at depth k has side j on local cuff
// b + (-1)^k (j - sigma) mod 3, and local cuff a on side a at the root.
std::vector<double> brute_force_distances(const Surface& s, int source, int max_depth) {
  const HexagonGeometry& h = s.hex();
  std::vector<double> best(s.graph().num_vertices(), kUnreached);
  struct Item {
    Isometry m;
    int vertex;
    int entry_local;
    int entry_side;
    int depth;
  };
  std::vector<Item> stack{{Isometry(), source, -1, -1, 0}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    best[it.vertex] = std::min(best[it.vertex], distance(h.center, it.m.image_of_origin()));
    if (it.depth == max_depth) {
      continue;
    }
    for (int j = 0; j < 3; ++j) {
      if (j == it.entry_side) {
        continue;
      }
      int local = j;
      if (it.entry_side >= 0) {
        const int sign = it.depth % 2 == 0 ? 1 : -1;
        local = ((it.entry_local + sign * (j - it.entry_side)) % 3 + 3) % 3;
      }
      const int partner = s.graph().partner(3 * it.vertex + local);
      stack.push_back({it.m * h.reflections[j], partner / 3, partner % 3, j, it.depth + 1});
    }
  }
  return best;
}

}  // namespace

TEST(Surface, RibbonConvention) {
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ(ribbon_side(-1, -1, 0, a), a);
  }
  // The entry cuff always sits on the entry side.
  for (int b = 0; b < 3; ++b) {
    for (int sigma = 0; sigma < 3; ++sigma) {
      for (int k = 1; k < 4; ++k) {
        EXPECT_EQ(ribbon_side(b, sigma, k, b), sigma);
      }
    }
  }
  EXPECT_EQ(ribbon_side(0, 1, 1, 1), 0);
  EXPECT_EQ(ribbon_side(0, 1, 2, 1), 2);
}

TEST(Surface, Formulas) {
  EXPECT_DOUBLE_EQ(auto_ell(2), 1.0);
  EXPECT_NEAR(auto_ell(1024), 4 * std::log(std::log(1024.0)), 1e-12);
  EXPECT_NEAR(theorem_budget(64), std::log(64.0) + 25 * std::log(std::log(64.0)), 1e-12);
  EXPECT_DOUBLE_EQ(default_rcap(2048), 30.0);
  EXPECT_NEAR(bavard_bound(2), 1.8551, 5e-5);
  EXPECT_LT(bavard_bound(100), bavard_bound(101));
  EXPECT_NEAR(thickness_upper_bound(5, 3.0), (std::cosh(3.0) - 1) / 8, 1e-12);
}

TEST(Surface, TripleEdgeIsTwoApothems) {
  const Surface s(theta(), build_hexagon(4.0));
  const MidpointDistances d = midpoint_distances_from(s, 0, 10.0);
  ASSERT_TRUE(d.complete());
  EXPECT_DOUBLE_EQ(d.distance[0], 0.0);
  EXPECT_NEAR(d.distance[1], 2 * s.hex().c_ell, 1e-12);
  const DiameterReport r = diameter_estimate(s);
  EXPECT_NEAR(r.midpoint_diameter, 2 * s.hex().c_ell, 1e-12);
  EXPECT_NEAR(r.padded_diameter, r.midpoint_diameter + 2 * pants_radius(s.hex()), 1e-12);
}

TEST(Surface, LoopsAndBridge) {
  const Surface s(dumbbell(), build_hexagon(4.0));
  const MidpointDistances d = midpoint_distances_from(s, 1, 10.0);
  EXPECT_DOUBLE_EQ(d.distance[1], 0.0);
  EXPECT_NEAR(d.distance[0], 2 * s.hex().c_ell, 1e-12);
  EXPECT_NEAR(diameter_estimate(s).midpoint_diameter, 2 * s.hex().c_ell, 1e-12);
}

TEST(Surface, MatchesDepthEightBruteForce) {
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int genus = 2 + trial % 2;
    const double ell = trial % 4 < 2 ? auto_ell(genus) : 2.0 + trial % 5;
    const PantsGraph g = sample_configuration_model(genus, derive_seed(99, genus, trial));
    const Surface s(g, build_hexagon(ell));
    for (int v = 0; v < g.num_vertices(); ++v) {
      const std::vector<double> oracle = brute_force_distances(s, v, 8);
      const MidpointDistances d = midpoint_distances_from(s, v, 20.0);
      for (int w = 0; w < g.num_vertices(); ++w) {
        if (std::isinf(oracle[w])) {
          EXPECT_FALSE(std::isfinite(d.distance[w]));
          continue;
        }
        EXPECT_NEAR(d.distance[w], oracle[w], 1e-9) << "trial " << trial << " " << v << "->" << w;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Surface, DistancesAreSymmetric) {
  const Surface s(connected_sample(12, 4), build_hexagon(3.0));
  const int n = s.graph().num_vertices();
  std::vector<std::vector<double>> d;
  for (int v = 0; v < n; ++v) {
    d.push_back(midpoint_distances_from(s, v, 25.0).distance);
  }
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      EXPECT_NEAR(d[v][w], d[w][v], 1e-9);
    }
  }
}

// With settling off, the walk visits exactly the orbit points of the ball.
TEST(Surface, LiftCountIsOrbitCount) {
  const Surface s(connected_sample(20, 1), build_hexagon(5.0));
  const double r = 7.0;
  std::int64_t within = 0;
  WalkOptions opts;
  opts.stop_when_settled = false;
  opts.on_node = [&](const CoverWalkNode& n) { within += n.node.distance <= r + kTieTolerance; };
  midpoint_distances_from(s, 0, r, opts);
  EXPECT_EQ(within, enumerate_ball(s.hex(), r).count);
}

TEST(Surface, RelabelInvariance) {
  const PantsGraph g = connected_sample(15, 8);
  const int n = g.num_vertices();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(2);
  rng.shuffle(perm);
  std::vector<std::int32_t> m(g.num_half_edges());
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const int p = g.partner(h);
    m[3 * perm[h / 3] + h % 3] = 3 * perm[p / 3] + p % 3;
  }
  const HexagonGeometry hex = build_hexagon(4.0);
  const DiameterReport a = diameter_estimate(Surface(g, hex));
  const DiameterReport b = diameter_estimate(Surface(PantsGraph(15, m), hex));
  EXPECT_NEAR(a.midpoint_diameter, b.midpoint_diameter, 1e-9);
  for (int v = 0; v < n; ++v) {
    const auto dv = midpoint_distances_from(Surface(g, hex), v, 20.0).distance;
    const auto dp = midpoint_distances_from(Surface(PantsGraph(15, m), hex), perm[v], 20.0).distance;
    for (int w = 0; w < n; ++w) {
      EXPECT_NEAR(dv[w], dp[perm[w]], 1e-9);
    }
  }
}

TEST(Surface, CapMonotonicity) {
  const Surface s(connected_sample(40, 3), build_hexagon(auto_ell(40)));
  const MidpointDistances full = midpoint_distances_from(s, 0, 25.0);
  ASSERT_TRUE(full.complete());
  int prev_unreached = s.graph().num_vertices();
  for (double cap : {1.0, 2.0, 4.0, 6.0, 8.0, 12.0}) {
    const MidpointDistances d = midpoint_distances_from(s, 0, cap);
    EXPECT_LE(d.unreached, prev_unreached);
    prev_unreached = d.unreached;
    for (std::size_t w = 0; w < d.distance.size(); ++w) {
      if (full.distance[w] <= cap) {
        EXPECT_NEAR(d.distance[w], full.distance[w], 1e-9);
      } else {
        EXPECT_EQ(d.distance[w], kUnreached);
      }
    }
  }
}

TEST(Surface, ExhaustiveEqualsCertified) {
  for (int genus : {10, 30}) {
    const Surface s(connected_sample(genus, 5), build_hexagon(auto_ell(genus)));
    DiameterOptions ex;
    ex.exhaustive = true;
    const DiameterReport a = diameter_estimate(s);
    const DiameterReport b = diameter_estimate(s, ex);
    EXPECT_NEAR(a.midpoint_diameter, b.midpoint_diameter, 1e-9);
    EXPECT_EQ(b.sources_walked, s.graph().num_vertices());
    EXPECT_LE(a.sources_walked, b.sources_walked);
    for (int v = 0; v < s.graph().num_vertices(); ++v) {
      EXPECT_LE(a.eccentricity_lower[v], b.eccentricity_lower[v] + 1e-9);
      EXPECT_GE(a.eccentricity_upper[v], b.eccentricity_upper[v] - 1e-9);
      EXPECT_NEAR(b.eccentricity_lower[v], b.eccentricity_upper[v], 1e-12);
    }
    ex.threads = 2;
    EXPECT_EQ(diameter_estimate(s, ex).midpoint_diameter, b.midpoint_diameter);
  }
}

TEST(Surface, BavardBelowPadded) {
  const Surface s(connected_sample(64, 2), build_hexagon(auto_ell(64)));
  const DiameterReport r = diameter_estimate(s);
  EXPECT_LE(r.bavard, r.padded_diameter);
  EXPECT_DOUBLE_EQ(r.bavard, bavard_bound(64));
  EXPECT_GE(thickness_upper_bound(64, r.padded_diameter), 1.0);
}

TEST(Surface, Errors) {
  const PantsGraph split(3, {3, 4, 5, 0, 1, 2, 9, 10, 11, 6, 7, 8});
  EXPECT_THROW(diameter_estimate(Surface(split, build_hexagon(2.0))), DomainError);

  const Surface s(connected_sample(30, 1), build_hexagon(2.0));
  EXPECT_THROW(midpoint_distances_from(s, 0, 31.0), RangeError);
  EXPECT_THROW(midpoint_distances_from(s, 0, -1.0), RangeError);

  DiameterOptions tight;
  tight.r_cap = 0.5;
  tight.max_retries = 0;
  try {
    diameter_estimate(s, tight);
    FAIL() << "expected IncompleteDiameter";
  } catch (const IncompleteDiameter& e) {
    EXPECT_EQ(e.achieved_eccentricities.size(), static_cast<std::size_t>(s.graph().num_vertices()));
  }

  WalkOptions budget;
  budget.node_budget = 5;
  EXPECT_THROW(midpoint_distances_from(s, 0, 20.0, budget), ResourceError);
}
