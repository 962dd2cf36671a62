#include "hypdiam/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hypdiam/errors.hpp"
#include "hypdiam/graph.hpp"
#include "hypdiam/lattice.hpp"
#include "hypdiam/peeling.hpp"
#include "hypdiam/random.hpp"
#include "hypdiam/stats.hpp"
#include "hypdiam/surface.hpp"

namespace hypdiam {

namespace {

constexpr double kSignificance = 1e-3;

class Recorder {
 public:
  Recorder(VerificationReport& rep, std::string suite) : rep_(rep), suite_(std::move(suite)) {}

  void add(const std::string& name, bool pass, const std::string& detail = {}) {
    rep_.checks.push_back(SuiteCheck{suite_, name, pass, detail});
  }

  // Runs `body`, turning any exception into a failed check.
  template <class Body>
  void guard(const std::string& name, Body&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, std::string("exception: ") + e.what());
    }
  }

 private:
  VerificationReport& rep_;
  std::string suite_;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Hexagon identity check shared by the geometry and counting batteries.
void check_cosh_identity(Recorder& rec, const VerifyInputs& in, const std::vector<double>& ells) {
  rec.guard("cosh_t_identity", [&] {
    std::string bad;
    for (double ell : ells) {
      const HexagonGeometry hex = in.hexagon(ell);
      const double ch = std::cosh(ell / 2);
      const double err = std::abs(std::cosh(hex.t) * (ch - 1.0) - ch) / ch;
      if (!(err <= 1e-8)) {
        bad += "ell=" + num(ell) + " rel_err=" + num(err) + "; ";
      }
    }
    rec.add("cosh_t_identity", bad.empty(), bad);
  });
}

void geometry_suite(VerificationReport& rep, const VerifyInputs& in) {
  Recorder rec(rep, "geometry");
  const std::vector<double> grid{1, 2, 4, 6, 8, 12, 16, 24, 40};
  check_cosh_identity(rec, in, grid);

  rec.guard("right_angles", [&] {
    std::string bad;
    for (double ell : grid) {
      const HexagonResiduals r = hexagon_residuals(in.hexagon(ell));
      if (!(r.max_angle_defect <= 1e-9 && r.long_side_error <= 1e-9 && r.short_side_spread <= 1e-9)) {
        bad += "ell=" + num(ell) + " angle=" + num(r.max_angle_defect) + " side=" + num(r.long_side_error) + "; ";
      }
    }
    rec.add("right_angles", bad.empty(), bad);
  });

  rec.guard("regular_case", [&] {
    const double ell = 2.0 * std::acosh(2.0);
    const HexagonGeometry hex = in.hexagon(ell);
    const double dt = std::abs(hex.t - std::acosh(2.0));
    const double dc = std::abs(hex.c_ell - std::acosh(std::sqrt(2.0)));
    rec.add("regular_case", dt <= 1e-9 && dc <= 1e-9, "t_err=" + num(dt) + " c_err=" + num(dc));
  });

  rec.guard("inscribed_disk", [&] {
    std::string bad;
    for (double ell : grid) {
      const HexagonGeometry hex = in.hexagon(ell);
      if (!(std::min(hex.c_ell, hex.c_prime) > 0.5 * std::log(3.0))) {
        bad += "ell=" + num(ell) + " min=" + num(std::min(hex.c_ell, hex.c_prime)) + "; ";
      }
    }
    rec.add("inscribed_disk", bad.empty(), bad);
  });

  rec.guard("seam_asymptotics", [&] {
    const auto ratio = [&](double ell) { return seam_length(in.hexagon(ell)) / (4.0 * std::exp(-ell / 4)) - 1.0; };
    const double r12 = std::abs(ratio(12));
    const double r20 = std::abs(ratio(20));
    rec.add("seam_asymptotics", r12 <= 0.05 && r20 <= 0.01, "ell=12: " + num(r12) + " ell=20: " + num(r20));
  });

  rec.guard("reflections", [&] {
    std::string bad;
    Rng rng(in.seed);
    for (double ell : {1.0, 6.0, 24.0}) {
      const HexagonGeometry hex = in.hexagon(ell);
      for (int k = 0; k < 3; ++k) {
        const Isometry& r = hex.reflections[k];
        const double inv = (r * r).max_abs_diff(Isometry{});
        const GeodesicSegment& side = hex.long_side(k);
        const double fix = std::max(distance(r.apply(side.a), side.a), distance(r.apply(side.b), side.b));
        const Point p = Point::polar(3.0 * rng.unit(), 6.283185307179586 * rng.unit());
        const Point q = Point::polar(3.0 * rng.unit(), 6.283185307179586 * rng.unit());
        const double iso = std::abs(distance(r.apply(p), r.apply(q)) - distance(p, q));
        if (!(r.lorentz_defect() <= 1e-9 && inv <= 1e-9 * std::max(1.0, std::cosh(ell)) && fix <= 1e-6 &&
              iso <= 1e-9)) {
          bad += "ell=" + num(ell) + " side=" + std::to_string(k) + "; ";
        }
      }
    }
    rec.add("reflections", bad.empty(), bad);
  });

  rec.guard("pants_radius", [&] {
    // Points of the mirror hexagon are reached through a seam; none may be
    // farther than the reported radius.
    std::string bad;
    Rng rng(in.seed + 1);
    for (double ell : {1.0, 5.0, 9.0}) {
      const HexagonGeometry hex = in.hexagon(ell);
      const double radius = pants_radius(hex);
      std::array<Point, 3> mirrored;
      for (int k = 0; k < 3; ++k) {
        mirrored[k] = reflection_in_geodesic(hex.short_side(k).normal).apply(hex.center);
      }
      for (int it = 0; it < 4000; ++it) {
        Vec3 v{0, 0, 0};
        for (const Point& vert : hex.vertices) {
          const double w = std::pow(rng.unit(), 6);
          v = Vec3{v.x0 + w * vert.x0(), v.x1 + w * vert.x1(), v.x2 + w * vert.x2()};
        }
        const Point q = Point::from_ambient(v);
        double d = distance(mirrored[0], q);
        for (int k = 1; k < 3; ++k) {
          d = std::min(d, distance(mirrored[k], q));
        }
        if (d > radius + 1e-9 || distance(hex.center, q) > radius + 1e-9) {
          bad += "ell=" + num(ell) + " d=" + num(d) + " radius=" + num(radius) + "; ";
          break;
        }
      }
    }
    rec.add("pants_radius", bad.empty(), bad);
  });

  rec.guard("bavard", [&] {
    const double b2 = bavard_bound(2);
    bool increasing = true;
    for (int g = 2; g < 10000; ++g) {
      increasing = increasing && bavard_bound(g + 1) > bavard_bound(g);
    }
    // The formula expands as log g + log(8 sqrt 3 / pi) + O(1/g).
    const double gap = bavard_bound(1000000) - (std::log(1e6) + std::log(8.0 * std::sqrt(3.0) / std::acos(-1.0)));
    rec.add("bavard", std::abs(b2 - 1.8551) <= 5e-5 && increasing && std::abs(gap) <= 1e-3,
            "g=2: " + num(b2) + " gap(1e6)=" + num(gap));
  });
}

void counting_suite(VerificationReport& rep, const VerifyInputs& in) {
  Recorder rec(rep, "counting");
  check_cosh_identity(rec, in, {2, 4, 6, 8});

  rec.guard("brute_force_equivalence", [&] {
    std::string bad;
    for (double ell : {2.0, 4.0, 6.0}) {
      const HexagonGeometry hex = in.hexagon(ell);
      const OrbitTree tree(hex, 8.0);
      std::vector<double> radii{0.0, 2.0 * hex.c_ell, 4.0 * hex.c_ell};
      for (double r = 0.5; r <= 8.0; r += 0.5) {
        radii.push_back(r);
      }
      for (double r : radii) {
        const std::int64_t pruned = tree.count_within(r);
        const std::int64_t brute = brute_force_count(hex, r);
        if (pruned != brute) {
          bad += "ell=" + num(ell) + " R=" + num(r) + " pruned=" + std::to_string(pruned) +
                 " brute=" + std::to_string(brute) + "; ";
        }
      }
    }
    rec.add("brute_force_equivalence", bad.empty(), bad);
  });

  rec.guard("counting_bounds", [&] {
    const HexagonGeometry hex = in.hexagon(6.0);
    const CountingReport r = verify_counting_bounds(hex, 14.0, 0.5);
    std::ostringstream d;
    d << "submult " << r.submult_violations << "/" << r.submult_checked << ", ancestor " << r.ancestor_violations
      << "/" << r.ancestor_checked << ", sandwich " << r.sandwich_violations << "/" << r.sandwich_checked
      << ", area " << r.area_violations;
    rec.add("counting_bounds", r.all_ok() && r.submult_checked > 0 && r.ancestor_checked > 0, d.str());
  });

  rec.guard("growth_bracket", [&] {
    std::string bad;
    std::map<double, double> raw14;
    for (double ell : {2.0, 4.0, 6.0, 8.0}) {
      const HexagonGeometry hex = in.hexagon(ell);
      const OrbitTree tree(hex, 14.0);
      for (double r_max : {10.0, 14.0}) {
        const GrowthEstimate est = delta_estimate(tree, hex, r_max);
        if (!(est.raw_rate <= est.certified_upper)) {
          bad += "ell=" + num(ell) + " R=" + num(r_max) + "; ";
        }
        if (r_max == 14.0) {
          raw14[ell] = est.raw_rate;
        }
      }
    }
    if (!(raw14[8.0] > raw14[4.0])) {
      bad += "raw(8)=" + num(raw14[8.0]) + " <= raw(4)=" + num(raw14[4.0]);
    }
    rec.add("growth_bracket", bad.empty(), bad);
  });
}

// Canonical form of a cubic multigraph under vertex relabeling: the
// lexicographically least multiplicity matrix.
std::vector<int> canonical_form(int n, const std::vector<std::int32_t>& matching) {
  std::vector<int> mult(n * n, 0);
  for (std::size_t h = 0; h < matching.size(); ++h) {
    const int a = static_cast<int>(h) / 3;
    const int b = matching[h] / 3;
    ++mult[a * n + b];
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) {
    perm[i] = i;
  }
  std::vector<int> best;
  do {
    std::vector<int> m(n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m[perm[i] * n + perm[j]] = mult[i * n + j];
      }
    }
    if (best.empty() || m < best) {
      best = m;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void all_matchings(std::vector<std::int32_t>& partial, std::vector<std::vector<std::int32_t>>& out) {
  int first = -1;
  for (std::size_t h = 0; h < partial.size(); ++h) {
    if (partial[h] < 0) {
      first = static_cast<int>(h);
      break;
    }
  }
  if (first < 0) {
    out.push_back(partial);
    return;
  }
  for (std::size_t h = first + 1; h < partial.size(); ++h) {
    if (partial[h] < 0) {
      partial[first] = static_cast<int>(h);
      partial[h] = first;
      all_matchings(partial, out);
      partial[first] = partial[h] = -1;
    }
  }
}

// Chi-square of observed class counts against exact class probabilities,
// pooling classes whose expected count is below 5.
double pooled_pvalue(const std::vector<std::int64_t>& observed, const std::vector<double>& prob, int samples,
                     int* cells) {
  std::vector<std::int64_t> obs;
  std::vector<double> exp;
  std::int64_t pool_obs = 0;
  double pool_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = prob[i] * samples;
    if (e < 5.0) {
      pool_obs += observed[i];
      pool_exp += e;
    } else {
      obs.push_back(observed[i]);
      exp.push_back(e);
    }
  }
  if (pool_exp > 0.0) {
    obs.push_back(pool_obs);
    exp.push_back(pool_exp);
  }
  *cells = static_cast<int>(obs.size());
  return chi_square_pvalue(chi_square_statistic(obs, exp), static_cast<double>(obs.size() - 1));
}

void peeling_suite(VerificationReport& rep, const VerifyInputs& in) {
  Recorder rec(rep, "peeling");

  rec.guard("configuration_model_g2", [&] {
    std::vector<std::int32_t> partial(6, -1);
    std::vector<std::vector<std::int32_t>> all;
    all_matchings(partial, all);
    std::map<std::vector<std::int32_t>, int> index;
    for (std::size_t i = 0; i < all.size(); ++i) {
      index[all[i]] = static_cast<int>(i);
    }
    const int samples = 15000;
    std::vector<std::int64_t> counts(all.size(), 0);
    for (int s = 0; s < samples; ++s) {
      ++counts[index.at(sample_configuration_model(2, derive_seed(in.seed, 2, s)).matching())];
    }
    const double p = chi_square_pvalue(chi_square_statistic(counts, std::vector<double>(all.size(), samples / 15.0)),
                                       static_cast<double>(all.size() - 1));
    rec.add("configuration_model_g2", all.size() == 15 && p > kSignificance, "p=" + num(p));
  });

  rec.guard("exploration_uniform_g3", [&] {
    std::vector<std::int32_t> partial(12, -1);
    std::vector<std::vector<std::int32_t>> all;
    all_matchings(partial, all);
    std::map<std::vector<int>, int> classes;
    std::vector<double> prob;
    for (const auto& m : all) {
      const auto [it, fresh] = classes.emplace(canonical_form(4, m), static_cast<int>(classes.size()));
      if (fresh) {
        prob.push_back(0.0);
      }
      prob[it->second] += 1.0 / static_cast<double>(all.size());
    }
    const HexagonGeometry hex = in.hexagon(2.0);
    const int samples = 5000;
    std::vector<std::int64_t> counts(prob.size(), 0);
    for (int s = 0; s < samples; ++s) {
      const ExplorationTrace tr = explore(3, derive_seed(in.seed, 3, s), hex, 0.4, 3);
      std::vector<std::int32_t> m(tr.matching.begin(), tr.matching.end());
      ++counts[classes.at(canonical_form(4, m))];
    }
    int cells = 0;
    const double p = pooled_pvalue(counts, prob, samples, &cells);
    rec.add("exploration_uniform_g3", p > kSignificance,
            "p=" + num(p) + " classes=" + std::to_string(prob.size()) + " cells=" + std::to_string(cells));
  });

  rec.guard("exploration_vs_sampler_g20", [&] {
    const HexagonGeometry hex = in.hexagon(2.0);
    const int samples = 600;
    std::vector<double> a;
    std::vector<double> b;
    int disc_a = 0;
    int disc_b = 0;
    for (int s = 0; s < samples; ++s) {
      const PantsGraph ga = explore(20, derive_seed(in.seed + 7, 20, s), hex, 0.4, 3).graph();
      const PantsGraph gb = sample_configuration_model(20, derive_seed(in.seed + 8, 20, s));
      const int da = graph_diameter(ga);
      const int db = graph_diameter(gb);
      disc_a += da == kInfiniteDiameter ? 1 : 0;
      disc_b += db == kInfiniteDiameter ? 1 : 0;
      a.push_back(da == kInfiniteDiameter ? 1e9 : da);
      b.push_back(db == kInfiniteDiameter ? 1e9 : db);
    }
    const KsResult ks = ks_two_sample(a, b);
    rec.add("exploration_vs_sampler_g20", ks.pvalue > kSignificance,
            "D=" + num(ks.statistic) + " p=" + num(ks.pvalue) + " disconnected " + std::to_string(disc_a) + "/" +
                std::to_string(disc_b));
  });

  rec.guard("trace_invariants", [&] {
    std::string bad;
    for (int g : {3, 10, 64}) {
      const HexagonGeometry hex = in.hexagon(auto_ell(g));
      const double jump = hex.rho + hex.c_ell + 1e-9;
      for (int s = 0; s < 20; ++s) {
        const ExplorationTrace tr = explore(g, derive_seed(in.seed, g, s), hex, 0.4, 3);
        bool ok = static_cast<int>(tr.steps.size()) == 3 * g - 3 && std::abs(tr.r_at[0] - hex.c_ell) <= 1e-9;
        ok = ok && std::none_of(tr.matching.begin(), tr.matching.end(), [](int p) { return p < 0; });
        bool clean = true;
        for (const ExplorationStep& st : tr.steps) {
          clean = clean && !st.was_bad && st.type == StepType::kNormal;
          if (clean) {
            // A tree of t + 1 pants has t + 3 open cuffs.
            ok = ok && st.open_cuffs == st.index + 3 && st.r_t - tr.r_at[st.index - 1] <= jump;
          }
        }
        if (!ok) {
          bad += "g=" + std::to_string(g) + " trial=" + std::to_string(s) + "; ";
        }
      }
    }
    rec.add("trace_invariants", bad.empty(), bad);
  });

  rec.guard("audits_g256", [&] {
    const double ell = auto_ell(256);
    const HexagonGeometry hex = in.hexagon(ell);
    LatticeCounter census(hex);
    int audited = 0;
    int final_pass = 0;
    int r6k = 0;
    int r6k_pass = 0;
    for (int s = 0; s < 50; ++s) {
      const ExplorationTrace tr = explore(256, derive_seed(in.seed, 256, s), hex, 0.4, 3);
      const AuditReport a = audit_inequalities(tr, census);
      if (const InequalityCheck* c = a.find("r6k")) {
        ++r6k;
        r6k_pass += c->pass ? 1 : 0;
      }
      if (a.status == AuditStatus::kAudited) {
        ++audited;
        final_pass += a.find("final")->pass ? 1 : 0;
      }
    }
    rec.add("audits_g256", audited > 0 && r6k_pass == r6k && final_pass >= 0.95 * audited,
            "r6k " + std::to_string(r6k_pass) + "/" + std::to_string(r6k) + ", final " +
                std::to_string(final_pass) + "/" + std::to_string(audited));
  });
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "geometry") {
    return Suite::kGeometry;
  }
  if (name == "counting") {
    return Suite::kCounting;
  }
  if (name == "peeling") {
    return Suite::kPeeling;
  }
  if (name == "all") {
    return Suite::kAll;
  }
  throw InputError("unknown suite \"" + name + "\" (geometry, counting, peeling, all)");
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["pass"] = pass();
  nlohmann::json items = nlohmann::json::array();
  for (const SuiteCheck& c : checks) {
    items.push_back({{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["checks"] = items;
  return j.dump(2);
}

VerificationReport run_verification_suites(Suite suite, const VerifyInputs& inputs) {
  VerificationReport rep;
  if (suite == Suite::kGeometry || suite == Suite::kAll) {
    geometry_suite(rep, inputs);
  }
  if (suite == Suite::kCounting || suite == Suite::kAll) {
    counting_suite(rep, inputs);
  }
  if (suite == Suite::kPeeling || suite == Suite::kAll) {
    peeling_suite(rep, inputs);
  }
  return rep;
}

}  // namespace hypdiam
