#pragma once

// Experiment plumbing: configuration, per-trial runs for each command, and
// CSV tables. Every table starts with one JSON line (prefixed by "# ") echoing
// the command, version and parameters. Numbers are written with 12
// significant digits; output order is fixed by (genus, trial), so identical
// parameters give identical bytes at any thread count.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypdiam/hexagon.hpp"
#include "hypdiam/stats.hpp"

namespace hypdiam {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
  std::vector<int> genus{64, 128, 256, 512, 1024, 2048};
  std::optional<double> ell;  // empty: auto_ell(g)
  int trials = 20;
  std::uint64_t seed = 1;
  std::optional<double> rcap;  // empty: default_rcap(g)
  double epsilon = 0.4;
  int k = 3;
  std::string emit;          // CSV path, empty for stdout
  std::string summary_path;  // summary JSON path, empty to skip
  int threads = 1;
  bool timing = false;  // record wall_ms; off keeps output reproducible

  /// Throws InputError unless every genus is >= 2, trials >= 1,
  /// 1/3 < epsilon < 1/2, k >= 3 and threads >= 1.
  void validate() const;
  double ell_for(int genus) const;
  double rcap_for(int genus) const;
};

/// Keys mirror the fields; "ell" and "rcap" accept a number or "auto". Unknown
/// keys are rejected. Throws InputError.
ExperimentConfig parse_config(const std::string& json_text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
std::string config_json(const ExperimentConfig& cfg);

/// %.12g; "nan" and "inf" spelled out.
std::string format_number(double x);

struct ScalingRow {
  int genus = 0;
  double ell = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool connected = false;
  double midpoint_diam = 0.0;
  double padded_diam = 0.0;
  double bavard = 0.0;
  double theorem_budget = 0.0;
  double budget_gap = 0.0;  // padded_diam - theorem_budget
  std::int64_t nodes_expanded = 0;
  double wall_ms = 0.0;
  std::string error;  // empty on success; the diameter fields are nan otherwise

  bool ok() const { return connected && error.empty(); }
};

/// One random surface: sample, glue and estimate. Errors land in the row.
ScalingRow run_surface_trial(int genus, double ell, std::uint64_t seed, double rcap, bool timing);

struct GenusSummary {
  int genus = 0;
  int trials = 0;
  int connected = 0;
  int complete = 0;  // connected and error free
  double median_midpoint = 0.0;
  double median_padded = 0.0;
  std::vector<double> within;  // fraction of complete rows with padded <= budget + C0
  int bavard_violations = 0;
};

struct ScalingSummary {
  std::vector<double> c0{5.0, 10.0, 15.0};
  std::vector<GenusSummary> per_genus;
  LinearFit padded_fit;    // median padded diameter against log g
  LinearFit midpoint_fit;  // median midpoint diameter against log g
  int bavard_violations = 0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  ScalingSummary summary;
};

ScalingResult run_scaling_sweep(const ExperimentConfig& cfg);
ScalingSummary summarize(const std::vector<ScalingRow>& rows);
void write_scaling_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ScalingRow>& rows);
std::string summary_json(const ScalingSummary& summary);

/// Trials of `hypdiam surface` at one genus.
std::vector<ScalingRow> run_surface_trials(int genus, double ell, int trials, std::uint64_t seed,
                                           double rcap, int threads, bool timing);
void write_surface_csv(std::ostream& out, const std::string& header_json, const std::vector<ScalingRow>& rows);

struct GraphRow {
  int trial = 0;
  bool connected = false;
  int diameter = 0;  // kInfiniteDiameter when disconnected
};

std::vector<GraphRow> run_graph_trials(int genus, int trials, std::uint64_t seed, int threads);
void write_graph_csv(std::ostream& out, const std::string& header_json, const std::vector<GraphRow>& rows);

struct PeelRow {
  int trial = 0;
  int bad_phase1 = 0;
  int bad_phase2 = 0;
  double r_6k = 0.0;
  double r_tau1 = 0.0;
  double r_tau2 = 0.0;
  bool closed_early = false;
  std::string audit;  // "pass", "fail", "skipped" or "incomplete"
  double audit_slack_min = 0.0;
  bool r6k_checked = false;
  bool r6k_pass = false;
  bool final_checked = false;
  bool final_pass = false;
};

std::vector<PeelRow> run_peel_trials(int genus, double ell, double epsilon, int k, int trials,
                                     std::uint64_t seed, int threads);
void write_peel_csv(std::ostream& out, const std::string& header_json, const std::vector<PeelRow>& rows);

struct LatticeRow {
  double radius = 0.0;
  std::int64_t count = 0;
  std::int64_t shell = 0;
  double raw_rate = 0.0;         // log N(R) / R
  double certified_upper = 0.0;  // (log N(R) + log(20/3) + 8C + ell) / R
  bool submult_ok = true;        // no failing pair with R as either argument
  bool area_ok = true;
};

std::vector<LatticeRow> lattice_table(const HexagonGeometry& hex, double radius, double grid_step);
void write_lattice_csv(std::ostream& out, const std::string& header_json, const std::vector<LatticeRow>& rows);

std::string hexagon_json(const HexagonGeometry& hex);

/// The "# {...}" first line of every table.
std::string header_json(const std::string& command, std::uint64_t seed, const std::string& params_json);

}  // namespace hypdiam
