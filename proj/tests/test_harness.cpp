#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "hypdiam/errors.hpp"
#include "hypdiam/harness.hpp"
#include "hypdiam/json_text.hpp"
#include "hypdiam/surface.hpp"

using namespace hypdiam;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

std::size_t count_fields(const std::string& line) {
  // The error column is the only quoted one and is last.
  const std::string head = line.substr(0, line.find('"'));
  return static_cast<std::size_t>(std::count(head.begin(), head.end(), ',')) + 1;
}

}  // namespace

TEST(Harness, NumberFormat) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(5.7009861945899996), "5.70098619459");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(Harness, JsonText) {
  JsonText j;
  j.begin_object().field("a", 1.5).field("b", "x\"y").key("c").begin_array().value(1).value(true).end_array();
  j.field("d", std::nan("")).end_object();
  EXPECT_EQ(j.str(), R"({"a":1.5,"b":"x\"y","c":[1,true],"d":"nan"})");
  EXPECT_TRUE(nlohmann::json::accept(j.str()));
}

TEST(Harness, ConfigParsing) {
  const ExperimentConfig c =
      parse_config(R"({"genus":[8,16],"ell":"auto","trials":3,"seed":9,"rcap":12.5,"epsilon":0.45,"k":4})");
  EXPECT_EQ(c.genus, (std::vector<int>{8, 16}));
  EXPECT_FALSE(c.ell.has_value());
  EXPECT_EQ(c.trials, 3);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_DOUBLE_EQ(c.rcap_for(8), 12.5);
  EXPECT_DOUBLE_EQ(c.ell_for(16), auto_ell(16));
  EXPECT_DOUBLE_EQ(parse_config(R"({"ell":3})").ell_for(100), 3.0);
  EXPECT_DOUBLE_EQ(parse_config("{}").rcap_for(64), default_rcap(64));
  EXPECT_EQ(parse_config(R"({"genus":32})").genus, (std::vector<int>{32}));

  EXPECT_THROW(parse_config(R"({"genius":[8]})"), InputError);
  EXPECT_THROW(parse_config(R"({"genus":[1]})"), InputError);
  EXPECT_THROW(parse_config(R"({"epsilon":0.6})"), InputError);
  EXPECT_THROW(parse_config(R"({"k":2})"), InputError);
  EXPECT_THROW(parse_config(R"({"trials":"many"})"), InputError);
  EXPECT_THROW(parse_config(R"({"ell":"big"})"), InputError);
  EXPECT_THROW(parse_config("[1,2]"), InputError);
  EXPECT_THROW(parse_config("{"), InputError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), InputError);
}

TEST(Harness, ConfigEchoOmitsPaths) {
  ExperimentConfig c;
  c.emit = "/tmp/x.csv";
  c.threads = 4;
  const nlohmann::json j = nlohmann::json::parse(config_json(c));
  EXPECT_FALSE(j.contains("emit"));
  EXPECT_FALSE(j.contains("threads"));
  EXPECT_EQ(j["ell"], "auto");
  EXPECT_EQ(j["genus"].size(), 6u);
}

TEST(Harness, SurfaceCsvLayout) {
  const auto rows = run_surface_trials(20, 3.0, 4, 5, 25.0, 1, false);
  std::ostringstream out;
  write_surface_csv(out, header_json("surface", 5, "{}"), rows);
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 6u);
  ASSERT_EQ(lines[0].rfind("# ", 0), 0u);
  const nlohmann::json header = nlohmann::json::parse(lines[0].substr(2));
  EXPECT_EQ(header["command"], "surface");
  EXPECT_EQ(header["version"], kVersion);
  EXPECT_EQ(header["seed"], 5);
  EXPECT_EQ(lines[1], "trial,connected,midpoint_diam,padded_diam,bavard,theorem_budget,nodes_expanded,wall_ms,error");
  for (std::size_t i = 2; i < lines.size(); ++i) {
    EXPECT_EQ(count_fields(lines[i]), 9u) << lines[i];
    EXPECT_EQ(lines[i].rfind(std::to_string(i - 2) + ",", 0), 0u);
  }
  for (const ScalingRow& r : rows) {
    EXPECT_EQ(r.wall_ms, 0.0);
  }
}

TEST(Harness, ErrorRowsCarryNan) {
  const ScalingRow r = run_surface_trial(40, 3.0, 1, 0.2, false);
  ASSERT_TRUE(r.connected);
  EXPECT_FALSE(r.error.empty());
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(std::isnan(r.padded_diam));
  std::ostringstream out;
  write_surface_csv(out, header_json("surface", 1, "{}"), {r});
  EXPECT_NE(out.str().find(",nan,nan,"), std::string::npos);
}

TEST(Harness, ThreadCountDoesNotChangeOutput) {
  ExperimentConfig c;
  c.genus = {12, 24};
  c.trials = 5;
  c.seed = 3;
  std::string first;
  for (int threads : {1, 2, 3}) {
    c.threads = threads;
    std::ostringstream out;
    write_scaling_csv(out, c, run_scaling_sweep(c).rows);
    if (threads == 1) {
      first = out.str();
    } else {
      EXPECT_EQ(out.str(), first) << "threads=" << threads;
    }
  }
  std::ostringstream a, b;
  write_peel_csv(a, "{}", run_peel_trials(64, 3.0, 0.4, 3, 6, 2, 1));
  write_peel_csv(b, "{}", run_peel_trials(64, 3.0, 0.4, 3, 6, 2, 3));
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream ga, gb;
  write_graph_csv(ga, "{}", run_graph_trials(30, 10, 4, 1));
  write_graph_csv(gb, "{}", run_graph_trials(30, 10, 4, 2));
  EXPECT_EQ(ga.str(), gb.str());
}

TEST(Harness, Summary) {
  std::vector<ScalingRow> rows;
  for (int g : {10, 100}) {
    for (int t = 0; t < 3; ++t) {
      ScalingRow r;
      r.genus = g;
      r.trial = t;
      r.connected = true;
      r.midpoint_diam = std::log(g) + t;
      r.padded_diam = 2 * std::log(g) + t;
      r.theorem_budget = theorem_budget(g);
      r.bavard = bavard_bound(g);
      rows.push_back(r);
    }
  }
  rows.back().error = "boom";
  const ScalingSummary s = summarize(rows);
  ASSERT_EQ(s.per_genus.size(), 2u);
  EXPECT_EQ(s.per_genus[1].complete, 2);
  EXPECT_DOUBLE_EQ(s.per_genus[0].median_padded, 2 * std::log(10.0) + 1);
  EXPECT_NEAR(s.midpoint_fit.slope, 1.0 - 0.5 / std::log(10.0), 1e-12);
  EXPECT_EQ(s.bavard_violations, 0);
  EXPECT_DOUBLE_EQ(s.per_genus[0].within[0], 1.0);
  EXPECT_TRUE(nlohmann::json::accept(summary_json(s)));
}

TEST(Harness, LatticeTableAndHexagonJson) {
  const HexagonGeometry h = build_hexagon(6.0);
  const auto rows = lattice_table(h, 10.0, 1.0);
  ASSERT_FALSE(rows.empty());
  for (const LatticeRow& r : rows) {
    EXPECT_EQ(r.count, enumerate_ball(h, r.radius).count);
    EXPECT_TRUE(r.submult_ok);
    EXPECT_TRUE(r.area_ok);
  }
  const nlohmann::json j = nlohmann::json::parse(hexagon_json(h));
  EXPECT_DOUBLE_EQ(j["ell"].get<double>(), 6.0);
  EXPECT_NEAR(j["seam_length"].get<double>(), 2 * h.t, 1e-11);
}
