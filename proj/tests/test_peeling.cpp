#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hypdiam/errors.hpp"
#include "hypdiam/peeling.hpp"
#include "hypdiam/random.hpp"
#include "hypdiam/stats.hpp"

using namespace hypdiam;

TEST(Peeling, Validation) {
  EXPECT_THROW(explore(2, 1, 4.0, 0.4, 3), InputError);
  EXPECT_THROW(explore(10, 1, 4.0, 1.0 / 3, 3), InputError);
  EXPECT_THROW(explore(10, 1, 4.0, 0.5, 3), InputError);
  EXPECT_THROW(explore(10, 1, 4.0, 0.4, 2), InputError);
  EXPECT_THROW(explore(10, 1, 0.01, 0.4, 3), InputError);
  EXPECT_THROW(phase_statistics(10, 4.0, 0.4, 3, 0, 1), InputError);
}

TEST(Peeling, PhaseLengths) {
  EXPECT_EQ(tau1_of(1026, 0.4), 2);
  EXPECT_EQ(tau2_of(1026), static_cast<int>(std::sqrt(25 * 1025 * std::log(1025.0))));
  EXPECT_EQ(tau2_of(4), 9);  // clamped to 3g - 3
  EXPECT_EQ(tau1_of(10001, 0.35), 3);  // 10000^0.15 = 3.98
}

TEST(Peeling, StartsAtApothem) {
  const HexagonGeometry h = build_hexagon(5.0);
  const ExplorationTrace tr = explore(50, 3, h, 0.4, 3);
  EXPECT_NEAR(tr.r_at[0], h.c_ell, 1e-12);
  EXPECT_EQ(tr.total_steps, 147);
  EXPECT_EQ(tr.r_at.size(), 148u);
  EXPECT_EQ(tr.steps.size(), 147u);
}

TEST(Peeling, Deterministic) {
  const ExplorationTrace a = explore(40, 77, 4.0, 0.4, 3);
  const ExplorationTrace b = explore(40, 77, 4.0, 0.4, 3);
  EXPECT_EQ(a.matching, b.matching);
  EXPECT_EQ(a.r_at, b.r_at);
}

TEST(Peeling, FinalMatchingIsValid) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ExplorationTrace tr = explore(25, seed, 3.0, 0.4, 3);
    const PantsGraph g = tr.graph();  // validates the involution
    EXPECT_EQ(g.genus(), 25);
    for (const ExplorationStep& st : tr.steps) {
      EXPECT_EQ(tr.matching[st.chosen], st.partner);
    }
  }
}

// A step is bad exactly when its partner already belongs to the component;
// at step 1 that is the base pants itself.
TEST(Peeling, FirstStepBadMarking) {
  int bad = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const ExplorationTrace tr = explore(5, seed, 2.0, 0.4, 3);
    const ExplorationStep& s = tr.steps.front();
    EXPECT_EQ(PantsGraph::vertex_of(s.chosen), tr.base_vertex);
    EXPECT_EQ(s.was_bad, PantsGraph::vertex_of(s.partner) == tr.base_vertex);
    EXPECT_EQ(s.type, StepType::kNormal);
    bad += s.was_bad;
  }
  // Two of the other 23 cuffs sit on the base pants.
  EXPECT_NEAR(bad / 400.0, 2.0 / 23, 0.04);
}

TEST(Peeling, PartnerOfFirstCuffIsUniform) {
  std::vector<std::int64_t> counts(12, 0);
  const int n = 11000;
  for (int i = 0; i < n; ++i) {
    const ExplorationTrace tr = explore(3, derive_seed(5, 3, i), 4.0, 0.4, 3);
    ++counts[tr.steps.front().partner];
  }
  const int chosen = explore(3, 0, 4.0, 0.4, 3).steps.front().chosen;
  EXPECT_EQ(counts[chosen], 0);
  counts.erase(counts.begin() + chosen);
  const double stat = chi_square_statistic(counts, std::vector<double>(11, n / 11.0));
  EXPECT_LT(stat, chi_square_critical(1e-3, 10));
}

TEST(Peeling, CleanPrefixInvariants) {
  const HexagonGeometry h = build_hexagon(std::max(1.0, 4 * std::log(std::log(200.0))));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ExplorationTrace tr = explore(200, seed, h, 0.4, 3);
    for (const ExplorationStep& st : tr.steps) {
      if (tr.bad_before(st.index) > 0) {
        break;
      }
      EXPECT_EQ(st.open_cuffs, st.index + 3);
      EXPECT_EQ(st.pants_in_component, st.index + 1);
      EXPECT_GE(tr.r_at[st.index], tr.r_at[st.index - 1]);
      // The new pants hangs off the nearest cuff, so R grows by at most one
      // hexagon's worth.
      EXPECT_LE(tr.r_at[st.index], tr.r_at[st.index - 1] + h.rho + h.c_ell + 1e-9);
    }
    int b1 = 0, b2 = 0;
    for (const ExplorationStep& st : tr.steps) {
      b1 += st.was_bad && st.index <= tr.tau1;
      b2 += st.was_bad && st.index > tr.tau1 && st.index <= tr.tau2;
    }
    EXPECT_EQ(tr.bad_phase1, b1);
    EXPECT_EQ(tr.bad_phase2, b2);
  }
}

TEST(Peeling, ClosedEarlyUsesDisconnectedSteps) {
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    const ExplorationTrace tr = explore(4, seed, 2.0, 0.4, 3);
    if (!tr.closed_early) {
      continue;
    }
    found = true;
    for (const ExplorationStep& st : tr.steps) {
      if (st.index > tr.closed_at) {
        EXPECT_EQ(st.type, StepType::kDisconnected);
        EXPECT_EQ(st.r_t, tr.r_at[tr.closed_at]);
      }
    }
    LatticeCounter census(build_hexagon(2.0));
    const AuditReport rep = audit_inequalities(tr, census);
    EXPECT_EQ(rep.status, AuditStatus::kSkippedClosedEarly);
    EXPECT_EQ(rep.find("phase1"), nullptr);
  }
  EXPECT_TRUE(found);
}

TEST(Peeling, AuditSkipsOnBadSteps) {
  bool found = false;
  for (std::uint64_t seed = 0; seed < 500 && !found; ++seed) {
    const ExplorationTrace tr = explore(4, seed, 2.0, 0.4, 3);
    if (tr.closed_early || tr.bad_phase2 <= std::pow(std::log(3.0), 3)) {
      continue;
    }
    found = true;
    LatticeCounter census(build_hexagon(2.0));
    const AuditReport rep = audit_inequalities(tr, census);
    EXPECT_EQ(rep.status, AuditStatus::kSkippedBadSteps);
    EXPECT_EQ(rep.find("final"), nullptr);
    EXPECT_FALSE(rep.note.empty());
  }
  EXPECT_TRUE(found);
}

TEST(Peeling, AuditsAtModerateGenus) {
  const HexagonGeometry h = build_hexagon(std::max(1.0, 4 * std::log(std::log(256.0))));
  LatticeCounter census(h);
  int audited = 0, final_pass = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const ExplorationTrace tr = explore(256, derive_seed(1, 256, trial), h, 0.4, 3);
    const AuditReport rep = audit_inequalities(tr, census);
    if (const InequalityCheck* r6k = rep.find("r6k")) {
      EXPECT_TRUE(r6k->pass) << "trial " << trial;
      EXPECT_DOUBLE_EQ(r6k->rhs, 37 * h.c_ell);
    }
    if (rep.status == AuditStatus::kAudited) {
      ++audited;
      ASSERT_NE(rep.find("final"), nullptr);
      final_pass += rep.find("final")->pass;
      EXPECT_TRUE(rep.find("phase1")->pass);
      EXPECT_TRUE(rep.find("phase2")->pass);
      EXPECT_EQ(rep.min_slack(), std::min({rep.find("phase1")->slack, rep.find("phase2")->slack,
                                           rep.find("final")->slack, rep.find("r6k") ? rep.find("r6k")->slack
                                                                                      : INFINITY}));
    }
  }
  EXPECT_GT(audited, 0);
  EXPECT_GE(final_pass, 0.95 * audited);
}

TEST(Peeling, LatticeCounter) {
  const HexagonGeometry h = build_hexagon(3.0);
  LatticeCounter c(h);
  EXPECT_EQ(c.count(-0.5), 0);
  EXPECT_EQ(c.count(-1e-300), 0);
  for (double r : {0.0, 2 * h.c_ell, 5.0, 9.5, 12.0, 3.0}) {
    EXPECT_EQ(c.count(r), enumerate_ball(h, r).count) << r;
  }
  EXPECT_THROW(c.count(30.5), RangeError);
}

TEST(Peeling, PhaseStatistics) {
  const PhaseStatistics st = phase_statistics(130, 4.0, 0.4, 3, 40, 1, 2);
  EXPECT_EQ(st.trials, 40);
  EXPECT_NEAR(st.phase1_bound, std::pow(129.0, -2.4) / 6, 1e-15);
  EXPECT_NEAR(st.phase2_threshold, std::pow(std::log(129.0), 3), 1e-12);
  EXPECT_LE(st.phase1_interval.lo, static_cast<double>(st.phase1_events) / 40);
  EXPECT_GE(st.phase1_interval.hi, static_cast<double>(st.phase1_events) / 40);
  const PhaseStatistics again = phase_statistics(130, 4.0, 0.4, 3, 40, 1, 1);
  EXPECT_EQ(again.phase1_events, st.phase1_events);
  EXPECT_EQ(again.phase2_events, st.phase2_events);
}
