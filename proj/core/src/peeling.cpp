#include "hypdiam/peeling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "hypdiam/random.hpp"
#include "hypdiam/surface.hpp"
#include "parallel.hpp"

namespace hypdiam {

namespace {

// Floors with a little room so that exact powers are not lost to rounding.
constexpr double kFloorSlack = 1e-9;

struct Lift {
  Isometry tile;
  int depth = 0;
  int entry_local = -1;
  int entry_side = -1;
};

// Cuffs not yet glued, with O(1) removal and uniform choice.
class FreeCuffs {
 public:
  explicit FreeCuffs(int n) : list_(n), pos_(n) {
    for (int h = 0; h < n; ++h) {
      list_[h] = h;
      pos_[h] = h;
    }
  }
  int size() const { return static_cast<int>(list_.size()); }
  int at(int i) const { return list_[i]; }
  void remove(int h) {
    const int i = pos_[h];
    const int last = list_.back();
    list_[i] = last;
    pos_[last] = i;
    list_.pop_back();
  }

 private:
  std::vector<int> list_;
  std::vector<int> pos_;
};

void validate(int genus, double epsilon, int k) {
  if (genus < 3) {
    throw InputError("explore: genus must be at least 3");
  }
  if (!(epsilon > 1.0 / 3.0 && epsilon < 0.5)) {
    throw InputError("explore: epsilon must lie in (1/3, 1/2)");
  }
  if (k < 3) {
    throw InputError("explore: k must be at least 3");
  }
}

double log_cubed(double x) {
  const double l = std::log(x);
  return l * l * l;
}

}  // namespace

double ExplorationTrace::r_6k() const { return r_at[std::min(6 * k, total_steps)]; }
double ExplorationTrace::r_tau1() const { return r_at[tau1]; }
double ExplorationTrace::r_tau2() const { return r_at[tau2]; }

int ExplorationTrace::bad_before(int t) const {
  int bad = 0;
  for (int i = 0; i < std::min<int>(t, static_cast<int>(steps.size())); ++i) {
    bad += steps[i].was_bad ? 1 : 0;
  }
  return bad;
}

PantsGraph ExplorationTrace::graph() const {
  return PantsGraph(genus, std::vector<std::int32_t>(matching.begin(), matching.end()));
}

int tau1_of(int genus, double epsilon) {
  const double t = std::floor(std::pow(genus - 1.0, 0.5 - epsilon) + kFloorSlack);
  return static_cast<int>(std::clamp(t, 0.0, 3.0 * genus - 3.0));
}

int tau2_of(int genus) {
  const double t = std::floor(std::sqrt(25.0 * (genus - 1.0) * std::log(genus - 1.0)) + kFloorSlack);
  return static_cast<int>(std::clamp(t, 0.0, 3.0 * genus - 3.0));
}

ExplorationTrace explore(int genus, std::uint64_t seed, const HexagonGeometry& hex, double epsilon, int k) {
  validate(genus, epsilon, k);
  ExplorationTrace trace;
  trace.genus = genus;
  trace.ell = hex.ell;
  trace.epsilon = epsilon;
  trace.k = k;
  trace.tau1 = tau1_of(genus, epsilon);
  trace.tau2 = tau2_of(genus);
  trace.total_steps = 3 * genus - 3;
  const int n_vertices = 2 * genus - 2;
  const int n_cuffs = 6 * genus - 6;
  trace.matching.assign(n_cuffs, -1);

  Rng rng(seed);
  FreeCuffs free_cuffs(n_cuffs);
  std::vector<char> in_base(n_vertices, 0);
  std::vector<Lift> lifts(n_vertices);
  std::vector<double> cuff_distance(n_cuffs, 0.0);
  std::set<std::pair<double, int>> open;  // (lifted distance, cuff) of the base component
  int pants_in_base = 0;

  // Adds pants u, entered through `entry` from a lifted parent, and then every
  // pants already glued to it outside the base component.
  auto attach = [&](int u, Lift lift) {
    std::vector<std::pair<int, Lift>> pending{{u, lift}};
    in_base[u] = 1;
    while (!pending.empty()) {
      auto [w, lw] = pending.back();
      pending.pop_back();
      lifts[w] = lw;
      ++pants_in_base;
      for (int local = 0; local < 3; ++local) {
        if (local == lw.entry_local) {
          continue;
        }
        const int h = 3 * w + local;
        const int side = ribbon_side(lw.entry_local, lw.entry_side, lw.depth, local);
        const OrbitStep step = step_across(hex, lw.tile, side);
        const int partner = trace.matching[h];
        if (partner < 0) {
          cuff_distance[h] = step.side_distance;
          open.emplace(step.side_distance, h);
        } else if (!in_base[PantsGraph::vertex_of(partner)]) {
          const int x = PantsGraph::vertex_of(partner);
          in_base[x] = 1;
          pending.push_back({x, Lift{step.child, lw.depth + 1, PantsGraph::local_of(partner), side}});
        }
      }
    }
  };

  attach(trace.base_vertex, Lift{});
  trace.r_at.push_back(open.rbegin()->first);
  int bad_total = 0;
  for (int t = 1; t <= trace.total_steps; ++t) {
    ExplorationStep step;
    step.index = t;
    if (!open.empty()) {
      const int chosen = open.begin()->second;
      open.erase(open.begin());
      free_cuffs.remove(chosen);
      const int partner = free_cuffs.at(static_cast<int>(rng.below(free_cuffs.size())));
      free_cuffs.remove(partner);
      trace.matching[chosen] = partner;
      trace.matching[partner] = chosen;
      step.chosen = chosen;
      step.partner = partner;
      const int x = PantsGraph::vertex_of(partner);
      if (in_base[x]) {
        step.was_bad = true;
        open.erase({cuff_distance[partner], partner});
      } else {
        const Lift& lu = lifts[PantsGraph::vertex_of(chosen)];
        const int side = ribbon_side(lu.entry_local, lu.entry_side, lu.depth, PantsGraph::local_of(chosen));
        attach(x, Lift{lu.tile * hex.reflections[side], lu.depth + 1, PantsGraph::local_of(partner), side});
      }
    } else {
      step.type = StepType::kDisconnected;
      const int a = free_cuffs.at(static_cast<int>(rng.below(free_cuffs.size())));
      free_cuffs.remove(a);
      const int b = free_cuffs.at(static_cast<int>(rng.below(free_cuffs.size())));
      free_cuffs.remove(b);
      trace.matching[a] = b;
      trace.matching[b] = a;
      step.chosen = a;
      step.partner = b;
    }
    if (step.was_bad) {
      ++bad_total;
      if (t <= trace.tau1) {
        ++trace.bad_phase1;
      } else if (t <= trace.tau2) {
        ++trace.bad_phase2;
      }
    }
    step.r_t = open.empty() ? trace.r_at.back() : open.rbegin()->first;
    step.pants_in_component = pants_in_base;
    step.open_cuffs = static_cast<int>(open.size());
    if (open.empty() && free_cuffs.size() > 0 && !trace.closed_early) {
      trace.closed_early = true;
      trace.closed_at = t;
    }
    if (pants_in_base == n_vertices && trace.spanning_step < 0) {
      trace.spanning_step = t;
    }
    trace.r_at.push_back(step.r_t);
    trace.steps.push_back(step);
  }
  return trace;
}

ExplorationTrace explore(int genus, std::uint64_t seed, double ell, double epsilon, int k) {
  validate(genus, epsilon, k);
  return explore(genus, seed, build_hexagon(ell), epsilon, k);
}

std::int64_t LatticeCounter::count(double radius) {
  if (radius < 0.0) {
    return 0;
  }
  if (radius > kMaxRadius) {
    throw RangeError("LatticeCounter: radius " + std::to_string(radius) + " exceeds 30");
  }
  if (!tree_ || tree_->max_radius() < radius) {
    // Grow in steps so a run of slowly increasing queries enumerates rarely.
    const double target = std::min(kMaxRadius, std::max(radius, tree_ ? tree_->max_radius() + 2.0 : 8.0));
    tree_.emplace(hex_, target);
  }
  return tree_->count_within(radius);
}

bool AuditReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.pass; });
}

double AuditReport::min_slack() const {
  double s = std::numeric_limits<double>::infinity();
  for (const InequalityCheck& c : checks) {
    s = std::min(s, c.slack);
  }
  return s;
}

const InequalityCheck* AuditReport::find(const std::string& name) const {
  for (const InequalityCheck& c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

AuditReport audit_inequalities(const ExplorationTrace& trace, LatticeCounter& census, double final_constant) {
  AuditReport rep;
  const HexagonGeometry& hex = census.hex();
  const double c = hex.c_ell;
  const auto add = [&](std::string name, double lhs, double rhs) {
    rep.checks.push_back(InequalityCheck{std::move(name), lhs, rhs, rhs - lhs, lhs <= rhs});
  };

  const int six_k = std::min(6 * trace.k, trace.total_steps);
  if (trace.bad_before(six_k) == 0) {
    add("r6k", trace.r_6k(), (12.0 * trace.k + 1.0) * c);
  }
  if (trace.closed_early) {
    rep.status = AuditStatus::kSkippedClosedEarly;
    rep.note = "base component closed at step " + std::to_string(trace.closed_at);
    return rep;
  }
  const double g = trace.genus;
  if (trace.bad_phase1 >= trace.k || trace.bad_phase2 > log_cubed(g - 1.0)) {
    rep.status = AuditStatus::kSkippedBadSteps;
    rep.note = "bad steps: " + std::to_string(trace.bad_phase1) + " in phase 1, " +
               std::to_string(trace.bad_phase2) + " in phase 2";
    return rep;
  }
  try {
    const double shift = trace.ell / 2.0 + 4.0 * c;
    const double n1 = static_cast<double>(census.count(trace.r_tau1() - trace.r_6k() - shift));
    add("phase1", 2.0 / 3.0 * n1, trace.tau1);
    const double n2 = static_cast<double>(census.count(trace.r_tau2() - trace.r_tau1() - shift));
    add("phase2", (trace.tau1 - 3.0 * trace.k - 2.0 * log_cubed(g)) * 2.0 / 3.0 * n2, trace.tau2);
  } catch (const RangeError& e) {
    rep.status = AuditStatus::kIncomplete;
    rep.note = e.what();
  } catch (const ResourceError& e) {
    rep.status = AuditStatus::kIncomplete;
    rep.note = e.what();
  }
  add("final", trace.r_tau2(), 0.5 * std::log(g) + 12.5 * std::log(std::log(g)) + final_constant);
  return rep;
}

PhaseStatistics phase_statistics(int genus, double ell, double epsilon, int k, int trials, std::uint64_t seed,
                                 int threads) {
  validate(genus, epsilon, k);
  if (trials < 1) {
    throw InputError("phase_statistics: trials must be positive");
  }
  const HexagonGeometry hex = build_hexagon(ell);
  PhaseStatistics st;
  st.genus = genus;
  st.ell = ell;
  st.epsilon = epsilon;
  st.k = k;
  st.trials = trials;
  st.tau1 = tau1_of(genus, epsilon);
  st.tau2 = tau2_of(genus);
  st.phase2_threshold = log_cubed(genus - 1.0);
  st.phase2_unreachable = st.phase2_threshold > st.tau2 - st.tau1;
  st.phase1_bound = std::pow(genus - 1.0, -2.0 * epsilon * k) / std::tgamma(k + 1.0);
  st.phase2_reference = std::pow(genus - 1.0, -2.0);

  std::vector<ExplorationTrace> traces(trials);
  detail::parallel_for(trials, threads, [&](int i) {
    traces[i] = explore(genus, derive_seed(seed, genus, i), hex, epsilon, k);
  });
  for (const ExplorationTrace& tr : traces) {
    st.phase1_events += tr.bad_phase1 >= k ? 1 : 0;
    st.phase2_events += tr.bad_phase2 >= st.phase2_threshold ? 1 : 0;
    st.closed_early += tr.closed_early ? 1 : 0;
  }
  st.phase1_interval = wilson_interval(st.phase1_events, trials, 0.99);
  st.phase2_interval = wilson_interval(st.phase2_events, trials, 0.99);
  return st;
}

}  // namespace hypdiam
