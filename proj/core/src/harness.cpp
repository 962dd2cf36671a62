#include "hypdiam/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hypdiam/errors.hpp"
#include "hypdiam/graph.hpp"
#include "hypdiam/json_text.hpp"
#include "hypdiam/lattice.hpp"
#include "hypdiam/peeling.hpp"
#include "hypdiam/random.hpp"
#include "hypdiam/surface.hpp"
#include "parallel.hpp"

namespace hypdiam {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<double> number_or_auto(const json& v, const char* key) {
  if (v.is_string()) {
    if (v.get<std::string>() == "auto") {
      return std::nullopt;
    }
    throw InputError(std::string("config: ") + key + " must be a number or \"auto\"");
  }
  if (!v.is_number()) {
    throw InputError(std::string("config: ") + key + " must be a number or \"auto\"");
  }
  return v.get<double>();
}

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

void ExperimentConfig::validate() const {
  if (genus.empty()) {
    throw InputError("config: genus list is empty");
  }
  for (int g : genus) {
    if (g < 2) {
      throw InputError("config: every genus must be at least 2");
    }
  }
  if (trials < 1) {
    throw InputError("config: trials must be at least 1");
  }
  if (!(epsilon > 1.0 / 3.0 && epsilon < 0.5)) {
    throw InputError("config: epsilon must lie in (1/3, 1/2)");
  }
  if (k < 3) {
    throw InputError("config: k must be at least 3");
  }
  if (threads < 1) {
    throw InputError("config: threads must be at least 1");
  }
  if (ell && !(*ell >= kMinEll && *ell <= kMaxEll)) {
    throw InputError("config: ell must lie in [0.1, 60]");
  }
  if (rcap && !(*rcap >= 0.0 && *rcap <= kMaxRadius)) {
    throw InputError("config: rcap must lie in [0, 30]");
  }
}

double ExperimentConfig::ell_for(int g) const { return ell ? *ell : auto_ell(g); }
double ExperimentConfig::rcap_for(int g) const { return rcap ? *rcap : default_rcap(g); }

ExperimentConfig parse_config(const std::string& json_text, ExperimentConfig cfg) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) {
    throw InputError("config: expected a JSON object");
  }
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "genus") {
        cfg.genus = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
      } else if (key == "ell") {
        cfg.ell = number_or_auto(v, "ell");
      } else if (key == "trials") {
        cfg.trials = v.get<int>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "rcap") {
        cfg.rcap = number_or_auto(v, "rcap");
      } else if (key == "epsilon") {
        cfg.epsilon = v.get<double>();
      } else if (key == "k") {
        cfg.k = v.get<int>();
      } else if (key == "emit") {
        cfg.emit = v.get<std::string>();
      } else if (key == "summary") {
        cfg.summary_path = v.get<std::string>();
      } else if (key == "threads") {
        cfg.threads = v.get<int>();
      } else if (key == "timing") {
        cfg.timing = v.get<bool>();
      } else {
        throw InputError("config: unknown key \"" + key + "\"");
      }
    }
  } catch (const json::type_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("config: cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string config_json(const ExperimentConfig& cfg) {
  // Output paths and the thread count do not change the table, so they stay
  // out of the echo.
  JsonText j;
  j.begin_object().key("genus").begin_array();
  for (int g : cfg.genus) {
    j.value(g);
  }
  j.end_array();
  if (cfg.ell) {
    j.field("ell", *cfg.ell);
  } else {
    j.field("ell", "auto");
  }
  j.field("trials", cfg.trials).field("seed", cfg.seed);
  if (cfg.rcap) {
    j.field("rcap", *cfg.rcap);
  } else {
    j.field("rcap", "auto");
  }
  j.field("epsilon", cfg.epsilon).field("k", cfg.k).field("timing", cfg.timing).end_object();
  return j.str();
}

std::string format_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string header_json(const std::string& command, std::uint64_t seed, const std::string& params_json) {
  JsonText j;
  j.begin_object().field("tool", "hypdiam").field("version", kVersion).field("command", command);
  j.field("seed", seed).key("params").raw(params_json).end_object();
  return j.str();
}

ScalingRow run_surface_trial(int genus, double ell, std::uint64_t seed, double rcap, bool timing) {
  ScalingRow row;
  row.genus = genus;
  row.ell = ell;
  row.seed = seed;
  row.midpoint_diam = row.padded_diam = row.budget_gap = kNaN;
  row.bavard = bavard_bound(genus);
  row.theorem_budget = theorem_budget(genus);
  const auto start = std::chrono::steady_clock::now();
  try {
    PantsGraph graph = sample_configuration_model(genus, seed);
    row.connected = is_connected(graph);
    if (row.connected) {
      const Surface surface = assemble_surface(std::move(graph), ell);
      DiameterOptions opts;
      opts.r_cap = rcap;
      const DiameterReport rep = diameter_estimate(surface, opts);
      row.midpoint_diam = rep.midpoint_diameter;
      row.padded_diam = rep.padded_diameter;
      row.budget_gap = rep.padded_diameter - rep.theorem_budget;
      row.nodes_expanded = rep.nodes_expanded;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  if (timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

std::vector<ScalingRow> run_surface_trials(int genus, double ell, int trials, std::uint64_t seed, double rcap,
                                           int threads, bool timing) {
  std::vector<ScalingRow> rows(trials);
  detail::parallel_for(trials, threads, [&](int t) {
    rows[t] = run_surface_trial(genus, ell, derive_seed(seed, genus, t), rcap, timing);
    rows[t].trial = t;
  });
  return rows;
}

ScalingSummary summarize(const std::vector<ScalingRow>& rows) {
  ScalingSummary s;
  std::map<int, std::vector<const ScalingRow*>> by_genus;
  for (const ScalingRow& r : rows) {
    by_genus[r.genus].push_back(&r);
  }
  std::vector<double> log_g;
  std::vector<double> med_padded;
  std::vector<double> med_midpoint;
  for (const auto& [g, group] : by_genus) {
    GenusSummary gs;
    gs.genus = g;
    gs.trials = static_cast<int>(group.size());
    std::vector<double> padded;
    std::vector<double> midpoint;
    std::vector<int> within(s.c0.size(), 0);
    for (const ScalingRow* r : group) {
      gs.connected += r->connected ? 1 : 0;
      if (!r->ok()) {
        continue;
      }
      ++gs.complete;
      padded.push_back(r->padded_diam);
      midpoint.push_back(r->midpoint_diam);
      if (r->padded_diam < r->bavard) {
        ++gs.bavard_violations;
      }
      for (std::size_t i = 0; i < s.c0.size(); ++i) {
        within[i] += r->padded_diam <= r->theorem_budget + s.c0[i] ? 1 : 0;
      }
    }
    for (int w : within) {
      gs.within.push_back(gs.complete > 0 ? static_cast<double>(w) / gs.complete : kNaN);
    }
    if (gs.complete > 0) {
      gs.median_padded = median(padded);
      gs.median_midpoint = median(midpoint);
      log_g.push_back(std::log(static_cast<double>(g)));
      med_padded.push_back(gs.median_padded);
      med_midpoint.push_back(gs.median_midpoint);
    } else {
      gs.median_padded = gs.median_midpoint = kNaN;
    }
    s.bavard_violations += gs.bavard_violations;
    s.per_genus.push_back(gs);
  }
  if (log_g.size() >= 2) {
    s.padded_fit = least_squares(log_g, med_padded);
    s.midpoint_fit = least_squares(log_g, med_midpoint);
  } else {
    s.padded_fit = s.midpoint_fit = LinearFit{kNaN, kNaN};
  }
  return s;
}

ScalingResult run_scaling_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ScalingResult result;
  const int per = cfg.trials;
  const int total = static_cast<int>(cfg.genus.size()) * per;
  result.rows.resize(total);
  // Largest genus first so the long trials do not trail at the end.
  std::vector<int> order(total);
  for (int i = 0; i < total; ++i) {
    order[i] = total - 1 - i;
  }
  detail::parallel_for(total, cfg.threads, [&](int i) {
    const int slot = order[i];
    const int g = cfg.genus[slot / per];
    const int t = slot % per;
    ScalingRow row = run_surface_trial(g, cfg.ell_for(g), derive_seed(cfg.seed, g, t), cfg.rcap_for(g), cfg.timing);
    row.trial = t;
    result.rows[slot] = std::move(row);
  });
  result.summary = summarize(result.rows);
  return result;
}

void write_scaling_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ScalingRow>& rows) {
  out << "# " << header_json("sweep", cfg.seed, config_json(cfg)) << '\n';
  out << "genus,ell,trial,seed,connected,midpoint_diam,padded_diam,bavard,theorem_budget,budget_gap,wall_ms,error\n";
  for (const ScalingRow& r : rows) {
    out << r.genus << ',' << format_number(r.ell) << ',' << r.trial << ',' << r.seed << ',' << flag(r.connected)
        << ',' << format_number(r.midpoint_diam) << ',' << format_number(r.padded_diam) << ','
        << format_number(r.bavard) << ',' << format_number(r.theorem_budget) << ',' << format_number(r.budget_gap)
        << ',' << format_number(r.wall_ms) << ',' << json(r.error).dump() << '\n';
  }
}

std::string summary_json(const ScalingSummary& s) {
  JsonText j;
  j.begin_object().key("c0").begin_array();
  for (double c : s.c0) {
    j.value(c);
  }
  j.end_array();
  j.field("padded_slope", s.padded_fit.slope).field("padded_intercept", s.padded_fit.intercept);
  j.field("midpoint_slope", s.midpoint_fit.slope).field("midpoint_intercept", s.midpoint_fit.intercept);
  j.field("bavard_violations", s.bavard_violations).key("per_genus").begin_array();
  for (const GenusSummary& g : s.per_genus) {
    j.begin_object().field("genus", g.genus).field("trials", g.trials).field("connected", g.connected);
    j.field("complete", g.complete).field("median_midpoint", g.median_midpoint);
    j.field("median_padded", g.median_padded).key("within").begin_array();
    for (double w : g.within) {
      j.value(w);
    }
    j.end_array().field("bavard_violations", g.bavard_violations).end_object();
  }
  j.end_array().end_object();
  return j.str();
}

void write_surface_csv(std::ostream& out, const std::string& header, const std::vector<ScalingRow>& rows) {
  out << "# " << header << '\n';
  out << "trial,connected,midpoint_diam,padded_diam,bavard,theorem_budget,nodes_expanded,wall_ms,error\n";
  for (const ScalingRow& r : rows) {
    out << r.trial << ',' << flag(r.connected) << ',' << format_number(r.midpoint_diam) << ','
        << format_number(r.padded_diam) << ',' << format_number(r.bavard) << ','
        << format_number(r.theorem_budget) << ',' << r.nodes_expanded << ',' << format_number(r.wall_ms) << ','
        << json(r.error).dump() << '\n';
  }
}

std::vector<GraphRow> run_graph_trials(int genus, int trials, std::uint64_t seed, int threads) {
  std::vector<GraphRow> rows(trials);
  detail::parallel_for(trials, threads, [&](int t) {
    const PantsGraph g = sample_configuration_model(genus, derive_seed(seed, genus, t));
    rows[t] = GraphRow{t, is_connected(g), graph_diameter(g)};
  });
  return rows;
}

void write_graph_csv(std::ostream& out, const std::string& header, const std::vector<GraphRow>& rows) {
  out << "# " << header << '\n';
  out << "trial,connected,graph_diameter\n";
  for (const GraphRow& r : rows) {
    out << r.trial << ',' << flag(r.connected) << ',';
    if (r.diameter == kInfiniteDiameter) {
      out << "inf";
    } else {
      out << r.diameter;
    }
    out << '\n';
  }
}

std::vector<PeelRow> run_peel_trials(int genus, double ell, double epsilon, int k, int trials, std::uint64_t seed,
                                     int threads) {
  const HexagonGeometry hex = build_hexagon(ell);
  std::vector<ExplorationTrace> traces(trials);
  detail::parallel_for(trials, threads, [&](int t) {
    traces[t] = explore(genus, derive_seed(seed, genus, t), hex, epsilon, k);
  });
  // The census is shared and grows lazily, so audits run in order.
  LatticeCounter census(hex);
  std::vector<PeelRow> rows;
  for (int t = 0; t < trials; ++t) {
    const ExplorationTrace& tr = traces[t];
    const AuditReport audit = audit_inequalities(tr, census);
    PeelRow row;
    row.trial = t;
    row.bad_phase1 = tr.bad_phase1;
    row.bad_phase2 = tr.bad_phase2;
    row.r_6k = tr.r_6k();
    row.r_tau1 = tr.r_tau1();
    row.r_tau2 = tr.r_tau2();
    row.closed_early = tr.closed_early;
    switch (audit.status) {
      case AuditStatus::kAudited:
        row.audit = audit.pass() ? "pass" : "fail";
        break;
      case AuditStatus::kIncomplete:
        row.audit = "incomplete";
        break;
      default:
        row.audit = "skipped";
    }
    row.audit_slack_min = audit.min_slack();
    if (const InequalityCheck* c = audit.find("r6k")) {
      row.r6k_checked = true;
      row.r6k_pass = c->pass;
    }
    if (const InequalityCheck* c = audit.find("final")) {
      row.final_checked = true;
      row.final_pass = c->pass;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_peel_csv(std::ostream& out, const std::string& header, const std::vector<PeelRow>& rows) {
  out << "# " << header << '\n';
  out << "trial,bad_phase1,bad_phase2,R_6k,R_tau1,R_tau2,closed_early,audit_pass,audit_slack_min\n";
  for (const PeelRow& r : rows) {
    out << r.trial << ',' << r.bad_phase1 << ',' << r.bad_phase2 << ',' << format_number(r.r_6k) << ','
        << format_number(r.r_tau1) << ',' << format_number(r.r_tau2) << ',' << flag(r.closed_early) << ','
        << r.audit << ',' << format_number(r.audit_slack_min) << '\n';
  }
}

std::vector<LatticeRow> lattice_table(const HexagonGeometry& hex, double radius, double grid_step) {
  const OrbitTree tree(hex, radius);
  const CountingReport rep = verify_counting_bounds(tree, hex, grid_step);
  const double correction = std::log(20.0 / 3.0) + 8.0 * hex.c_ell + hex.ell;
  std::vector<LatticeRow> rows;
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    LatticeRow row;
    row.radius = rep.radii[i];
    row.count = rep.counts[i];
    row.shell = rep.shells[i];
    const double log_n = std::log(static_cast<double>(row.count));
    row.raw_rate = log_n / row.radius;
    row.certified_upper = (log_n + correction) / row.radius;
    row.area_ok = static_cast<double>(row.count) <= 5.0 * std::exp(row.radius);
    for (const auto& [a, b] : rep.submult_failures) {
      if (a == row.radius || b == row.radius) {
        row.submult_ok = false;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_lattice_csv(std::ostream& out, const std::string& header, const std::vector<LatticeRow>& rows) {
  out << "# " << header << '\n';
  out << "R,N,shell,raw_rate,certified_upper,submult_ok,area_ok\n";
  for (const LatticeRow& r : rows) {
    out << format_number(r.radius) << ',' << r.count << ',' << r.shell << ',' << format_number(r.raw_rate) << ','
        << format_number(r.certified_upper) << ',' << flag(r.submult_ok) << ',' << flag(r.area_ok) << '\n';
  }
}

std::string hexagon_json(const HexagonGeometry& hex) {
  JsonText j;
  j.begin_object().field("ell", hex.ell).field("s", hex.s).field("t", hex.t).field("c_ell", hex.c_ell);
  j.field("c_prime", hex.c_prime).field("rho", hex.rho).field("pants_radius", pants_radius(hex));
  j.field("seam_length", seam_length(hex)).end_object();
  return j.str();
}

}  // namespace hypdiam
