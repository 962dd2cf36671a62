#pragma once

// The exploration that glues a random surface together around one pants. At
// each step the open cuff of the base component nearest the base point is
// glued to a uniformly random free cuff; once the component has no open cuff,
// two uniformly random free cuffs are glued. Either way the final matching is
// a uniform configuration-model sample.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypdiam/graph.hpp"
#include "hypdiam/hexagon.hpp"
#include "hypdiam/lattice.hpp"
#include "hypdiam/stats.hpp"

namespace hypdiam {

enum class StepType { kNormal, kDisconnected };

struct ExplorationStep {
  int index = 0;    // 1-based
  int chosen = 0;   // half-edge
  int partner = 0;  // half-edge
  bool was_bad = false;
  StepType type = StepType::kNormal;
  double r_t = 0.0;            // R after this step
  int pants_in_component = 1;  // pants of the base component after this step
  int open_cuffs = 3;          // open cuffs of the base component after this step
};

struct ExplorationTrace {
  int genus = 0;
  double ell = 0.0;
  double epsilon = 0.0;
  int k = 0;
  int tau1 = 0;
  int tau2 = 0;
  int total_steps = 0;  // 3g - 3
  int base_vertex = 0;
  std::vector<ExplorationStep> steps;
  /// r_at[t] for t = 0..total_steps. Once the base component has no open
  /// cuff the last value is held.
  std::vector<double> r_at;
  int bad_phase1 = 0;  // bad steps t in [1, tau1]
  int bad_phase2 = 0;  // bad steps t in [tau1 + 1, tau2]
  bool closed_early = false;  // base component ran out of open cuffs before the end
  int closed_at = -1;         // step after which that happened
  /// First step after which the base component holds all 2g - 2 pants, -1 if
  /// never. Indexing by pants count instead of by gluing stops here.
  int spanning_step = -1;
  std::vector<int> matching;  // final partner of every half-edge

  double r_6k() const;
  double r_tau1() const;
  double r_tau2() const;
  /// Bad steps among the first t.
  int bad_before(int t) const;
  PantsGraph graph() const;
};

/// floor((g-1)^(1/2 - epsilon)) and floor(sqrt(25 (g-1) log(g-1))), clamped
/// to [0, 3g - 3].
int tau1_of(int genus, double epsilon);
int tau2_of(int genus);

/// Throws InputError unless g >= 3, 1/3 < epsilon < 1/2, k >= 3 and ell is a
/// valid hexagon parameter.
ExplorationTrace explore(int genus, std::uint64_t seed, const HexagonGeometry& hex, double epsilon, int k);
ExplorationTrace explore(int genus, std::uint64_t seed, double ell, double epsilon, int k);

/// N(R) on demand, enumerating the orbit once to the largest radius asked for.
class LatticeCounter {
 public:
  explicit LatticeCounter(const HexagonGeometry& hex) : hex_(hex) {}

  /// 0 for negative R. Throws RangeError past 30 and ResourceError if the
  /// enumeration budget runs out.
  std::int64_t count(double radius);
  const HexagonGeometry& hex() const { return hex_; }

 private:
  HexagonGeometry hex_;
  std::optional<OrbitTree> tree_;
};

enum class AuditStatus { kAudited, kSkippedClosedEarly, kSkippedBadSteps, kIncomplete };

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = false;
};

struct AuditReport {
  AuditStatus status = AuditStatus::kAudited;
  std::vector<InequalityCheck> checks;
  /// Cuff distances are measured along the lift by which each pants was first
  /// attached. With handles this is an upper bound, not the surface distance.
  bool lifted_distances = true;
  std::string note;

  bool pass() const;
  /// Smallest slack over the checks, +infinity if none ran.
  double min_slack() const;
  const InequalityCheck* find(const std::string& name) const;
};

/// Additive constant in R_tau2 <= log(g) / 2 + 12.5 log log g + C0.
inline constexpr double kFinalConstant = 15.0;

/// Evaluates on one trace:
///   phase1:   (2/3) N(R_tau1 - R_6k - ell/2 - 4C) <= tau1
///   phase2:   (tau1 - 3k - 2 log^3 g) (2/3) N(R_tau2 - R_tau1 - ell/2 - 4C) <= tau2
///   r6k:      R_6k <= (12k + 1) C
///   final:    R_tau2 <= log(g) / 2 + 12.5 log log g + final_constant
/// r6k runs whenever the first 6k steps had no bad step. The others need a
/// run that never closed early, with fewer than k bad steps in phase 1 and at
/// most log^3(g-1) in phase 2; otherwise they are skipped and the status says
/// why. A census radius past 30 marks the audit incomplete.
AuditReport audit_inequalities(const ExplorationTrace& trace, LatticeCounter& census,
                               double final_constant = kFinalConstant);

struct PhaseStatistics {
  int genus = 0;
  double ell = 0.0;
  double epsilon = 0.0;
  int k = 0;
  int trials = 0;
  int tau1 = 0;
  int tau2 = 0;
  int phase1_events = 0;  // >= k bad steps in phase 1
  int phase2_events = 0;  // >= log^3(g-1) bad steps in phase 2
  Interval phase1_interval;  // Wilson, 99%
  Interval phase2_interval;
  double phase1_bound = 0.0;      // (g-1)^(-2 epsilon k) / k!
  double phase2_threshold = 0.0;  // log^3(g-1)
  double phase2_reference = 0.0;  // (g-1)^-2, which the event probability is o() of
  bool phase2_unreachable = false;  // threshold exceeds tau2 - tau1
  int closed_early = 0;
};

PhaseStatistics phase_statistics(int genus, double ell, double epsilon, int k, int trials, std::uint64_t seed,
                                 int threads = 1);

}  // namespace hypdiam
