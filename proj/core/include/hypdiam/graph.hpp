#pragma once

// Configuration-model cubic multigraphs. Half-edge h sits at vertex h / 3 with
// local index h % 3; an edge is a matched pair of half-edges. Loops and
// multi-edges are kept.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace hypdiam {

class PantsGraph {
 public:
  /// Validates that `matching` is a fixed-point-free involution on 6g - 6
  /// half-edges. Throws InputError otherwise.
  PantsGraph(int genus, std::vector<std::int32_t> matching);

  int genus() const { return genus_; }
  int num_vertices() const { return 2 * genus_ - 2; }
  int num_half_edges() const { return 6 * genus_ - 6; }
  int num_edges() const { return 3 * genus_ - 3; }

  std::int32_t partner(std::int32_t half_edge) const { return matching_[half_edge]; }
  const std::vector<std::int32_t>& matching() const { return matching_; }

  static int vertex_of(std::int32_t half_edge) { return half_edge / 3; }
  static int local_of(std::int32_t half_edge) { return half_edge % 3; }

  /// Neighbor across each of v's three half-edges (v itself for a loop).
  std::array<int, 3> neighbors(int v) const;

  friend bool operator==(const PantsGraph& a, const PantsGraph& b) {
    return a.genus_ == b.genus_ && a.matching_ == b.matching_;
  }

 private:
  int genus_;
  std::vector<std::int32_t> matching_;
};

/// Uniform perfect matching of the 6g - 6 half-edges (shuffle, then pair
/// consecutive entries). Throws InputError for g < 2.
PantsGraph sample_configuration_model(int genus, std::uint64_t seed);

bool is_connected(const PantsGraph& g);

inline constexpr int kInfiniteDiameter = std::numeric_limits<int>::max();

/// Unweighted diameter, or kInfiniteDiameter when disconnected.
int graph_diameter(const PantsGraph& g);

/// BFS hop counts from v; -1 for unreachable vertices.
std::vector<int> hop_distances(const PantsGraph& g, int v);

}  // namespace hypdiam
