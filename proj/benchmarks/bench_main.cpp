#include <benchmark/benchmark.h>

#include "hypdiam/graph.hpp"
#include "hypdiam/hexagon.hpp"
#include "hypdiam/lattice.hpp"
#include "hypdiam/peeling.hpp"
#include "hypdiam/surface.hpp"

using namespace hypdiam;

static void BM_BuildHexagon(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_hexagon(7.7));
  }
}
BENCHMARK(BM_BuildHexagon);

// Arg: ball radius.
static void BM_EnumerateBall(benchmark::State& state) {
  const HexagonGeometry h = build_hexagon(6.0);
  const double r = static_cast<double>(state.range(0));
  std::int64_t n = 0;
  for (auto _ : state) {
    n = enumerate_ball(h, r).count;
    benchmark::DoNotOptimize(n);
  }
  state.counters["points"] = static_cast<double>(n);
}
BENCHMARK(BM_EnumerateBall)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static PantsGraph connected_graph(int genus) {
  for (std::uint64_t seed = 1;; ++seed) {
    PantsGraph g = sample_configuration_model(genus, seed);
    if (is_connected(g)) {
      return g;
    }
  }
}

// Arg: genus. One walk from vertex 0 at the default cap.
static void BM_MidpointWalk(benchmark::State& state) {
  const int genus = static_cast<int>(state.range(0));
  const Surface s(connected_graph(genus), build_hexagon(auto_ell(genus)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(midpoint_distances_from(s, 0, default_rcap(genus)).nodes_expanded);
  }
}
BENCHMARK(BM_MidpointWalk)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_DiameterEstimate(benchmark::State& state) {
  const int genus = static_cast<int>(state.range(0));
  const Surface s(connected_graph(genus), build_hexagon(auto_ell(genus)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(diameter_estimate(s).midpoint_diameter);
  }
}
BENCHMARK(BM_DiameterEstimate)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Explore(benchmark::State& state) {
  const int genus = static_cast<int>(state.range(0));
  const HexagonGeometry h = build_hexagon(auto_ell(genus));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(explore(genus, ++seed, h, 0.4, 3).r_at.back());
  }
}
BENCHMARK(BM_Explore)->Arg(256)->Arg(1026)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
