// Command-line front end: one subcommand per module plus the sweep and the
// verification batteries.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hypdiam/errors.hpp"
#include "hypdiam/harness.hpp"
#include "hypdiam/hexagon.hpp"
#include "hypdiam/json_text.hpp"
#include "hypdiam/peeling.hpp"
#include "hypdiam/surface.hpp"
#include "hypdiam/verify.hpp"

namespace {

using hypdiam::ExperimentConfig;

std::optional<double> parse_ell(const std::string& text) {
  if (text == "auto") {
    return std::nullopt;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw hypdiam::InputError("expected a number or \"auto\", got \"" + text + "\"");
}

// Writes to the emit path, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw hypdiam::InputError("cannot write " + path);
  }
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random hyperbolic surfaces glued from pants: geometry, counting and diameter experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  int threads = 1;
  std::string emit_path;
  std::string config_path;
  app.add_option("--seed", seed, "Root seed");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--emit", emit_path, "Output file (default stdout)");
  app.add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);

  double ell = 0.0;
  std::string ell_text = "auto";
  double radius = 0.0;
  double grid_step = 0.5;
  int genus = 0;
  int trials = 1;
  std::string rcap_text = "auto";
  double epsilon = 0.4;
  int k = 3;
  std::string suite = "all";
  std::vector<int> genus_list;
  std::string summary_path;
  bool timing = false;

  auto* hexagon_cmd = app.add_subcommand("hexagon", "Constants of the right-angled hexagon");
  hexagon_cmd->add_option("--ell", ell, "Cuff length")->required();

  auto* lattice_cmd = app.add_subcommand("lattice", "Orbit counts and growth bounds on a radius grid");
  lattice_cmd->add_option("--ell", ell, "Cuff length")->required();
  lattice_cmd->add_option("--radius", radius, "Largest radius")->required();
  lattice_cmd->add_option("--grid-step", grid_step, "Grid spacing");

  auto* graph_cmd = app.add_subcommand("graph", "Configuration-model cubic graphs");
  graph_cmd->add_option("--genus", genus, "Genus")->required();
  graph_cmd->add_option("--trials", trials, "Samples");

  auto* surface_cmd = app.add_subcommand("surface", "Diameter estimates of random surfaces at one genus");
  surface_cmd->add_option("--genus", genus, "Genus")->required();
  surface_cmd->add_option("--ell", ell_text, "Cuff length or auto");
  surface_cmd->add_option("--trials", trials, "Samples");
  surface_cmd->add_option("--rcap", rcap_text, "Walk cap or auto");
  surface_cmd->add_flag("--timing", timing, "Record wall_ms (output is then not reproducible)");

  auto* peel_cmd = app.add_subcommand("peel", "Exploration runs with inequality audits");
  peel_cmd->add_option("--genus", genus, "Genus")->required();
  peel_cmd->add_option("--ell", ell_text, "Cuff length or auto");
  peel_cmd->add_option("--epsilon", epsilon, "Phase exponent in (1/3, 1/2)");
  peel_cmd->add_option("--k", k, "Phase-1 bad-step threshold");
  peel_cmd->add_option("--trials", trials, "Runs");

  auto* verify_cmd = app.add_subcommand("verify", "Run self-check batteries; exit status 0 iff all pass");
  verify_cmd->add_option("--suite", suite, "geometry, counting, peeling or all");

  auto* sweep_cmd = app.add_subcommand("sweep", "Diameter scaling sweep across genus");
  sweep_cmd->add_option("--genus", genus_list, "Genus list");
  sweep_cmd->add_option("--trials", trials, "Samples per genus");
  sweep_cmd->add_option("--ell", ell_text, "Cuff length or auto");
  sweep_cmd->add_option("--rcap", rcap_text, "Walk cap or auto");
  sweep_cmd->add_option("--summary", summary_path, "Summary JSON path (default stderr)");
  sweep_cmd->add_flag("--timing", timing, "Record wall_ms (output is then not reproducible)");

  CLI11_PARSE(app, argc, argv);

  try {
    // Configuration file first, then explicit flags on top.
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = hypdiam::load_config(config_path);
    }
    const auto given = [&](const char* name) {
      for (CLI::App* sub : app.get_subcommands()) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        if (opt != nullptr && opt->count() > 0) {
          return true;
        }
      }
      const CLI::Option* opt = app.get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--seed")) {
      cfg.seed = seed;
    }
    if (given("--threads")) {
      cfg.threads = threads;
    }
    if (given("--emit")) {
      cfg.emit = emit_path;
    }
    if (given("--ell")) {
      cfg.ell = parse_ell(ell_text);
    }
    if (given("--rcap")) {
      cfg.rcap = parse_ell(rcap_text);
    }
    if (given("--trials")) {
      cfg.trials = trials;
    }
    if (given("--epsilon")) {
      cfg.epsilon = epsilon;
    }
    if (given("--k")) {
      cfg.k = k;
    }
    if (given("--summary")) {
      cfg.summary_path = summary_path;
    }
    if (given("--timing")) {
      cfg.timing = timing;
    }
    if (sweep_cmd->parsed() && !genus_list.empty()) {
      cfg.genus = genus_list;
    }
    if (!sweep_cmd->parsed() && genus > 0) {
      cfg.genus = {genus};
    }

    if (hexagon_cmd->parsed()) {
      emit(cfg.emit, hypdiam::hexagon_json(hypdiam::build_hexagon(ell)) + "\n");
      return 0;
    }
    if (lattice_cmd->parsed()) {
      const auto rows = hypdiam::lattice_table(hypdiam::build_hexagon(ell), radius, grid_step);
      std::ostringstream out;
      hypdiam::write_lattice_csv(
          out,
          hypdiam::header_json("lattice", cfg.seed,
                               hypdiam::JsonText()
                                   .begin_object()
                                   .field("ell", ell)
                                   .field("radius", radius)
                                   .field("grid_step", grid_step)
                                   .end_object()
                                   .str()),
          rows);
      emit(cfg.emit, out.str());
      return 0;
    }
    if (graph_cmd->parsed()) {
      cfg.validate();
      const auto rows = hypdiam::run_graph_trials(genus, cfg.trials, cfg.seed, cfg.threads);
      std::ostringstream out;
      hypdiam::write_graph_csv(
          out, hypdiam::header_json("graph", cfg.seed, hypdiam::JsonText()
                                                        .begin_object()
                                                        .field("genus", genus)
                                                        .field("trials", cfg.trials)
                                                        .end_object()
                                                        .str()), rows);
      emit(cfg.emit, out.str());
      return 0;
    }
    if (surface_cmd->parsed()) {
      cfg.validate();
      const double e = cfg.ell_for(genus);
      const double r = cfg.rcap_for(genus);
      const auto rows = hypdiam::run_surface_trials(genus, e, cfg.trials, cfg.seed, r, cfg.threads, cfg.timing);
      std::ostringstream out;
      hypdiam::write_surface_csv(out,
                                 hypdiam::header_json("surface", cfg.seed,
                                                      hypdiam::JsonText()
                                                          .begin_object()
                                                          .field("genus", genus)
                                                          .field("ell", e)
                                                          .field("trials", cfg.trials)
                                                          .field("rcap", r)
                                                          .field("timing", cfg.timing)
                                                          .end_object()
                                                          .str()),
                                 rows);
      emit(cfg.emit, out.str());
      return 0;
    }
    if (peel_cmd->parsed()) {
      cfg.validate();
      const double e = cfg.ell_for(genus);
      const auto rows =
          hypdiam::run_peel_trials(genus, e, cfg.epsilon, cfg.k, cfg.trials, cfg.seed, cfg.threads);
      std::ostringstream out;
      hypdiam::write_peel_csv(out,
                              hypdiam::header_json("peel", cfg.seed,
                                                   hypdiam::JsonText()
                                                       .begin_object()
                                                       .field("genus", genus)
                                                       .field("ell", e)
                                                       .field("epsilon", cfg.epsilon)
                                                       .field("k", cfg.k)
                                                       .field("trials", cfg.trials)
                                                       .field("distances", "spanning-tree lift")
                                                       .end_object()
                                                       .str()),
                              rows);
      emit(cfg.emit, out.str());
      return 0;
    }
    if (verify_cmd->parsed()) {
      hypdiam::VerifyInputs in;
      in.seed = cfg.seed;
      in.threads = cfg.threads;
      const hypdiam::VerificationReport rep = hypdiam::run_verification_suites(hypdiam::parse_suite(suite), in);
      emit(cfg.emit, rep.to_json() + "\n");
      return rep.pass() ? 0 : 1;
    }
    if (sweep_cmd->parsed()) {
      cfg.validate();
      const hypdiam::ScalingResult result = hypdiam::run_scaling_sweep(cfg);
      std::ostringstream out;
      hypdiam::write_scaling_csv(out, cfg, result.rows);
      emit(cfg.emit, out.str());
      const std::string summary = hypdiam::summary_json(result.summary) + "\n";
      if (cfg.summary_path.empty()) {
        std::cerr << summary;
      } else {
        emit(cfg.summary_path, summary);
      }
      return 0;
    }
  } catch (const hypdiam::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
