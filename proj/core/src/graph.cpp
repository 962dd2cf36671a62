#include "hypdiam/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hypdiam/errors.hpp"
#include "hypdiam/random.hpp"

namespace hypdiam {

PantsGraph::PantsGraph(int genus, std::vector<std::int32_t> matching) : genus_(genus), matching_(std::move(matching)) {
  if (genus < 2) {
    throw InputError("PantsGraph: genus must be at least 2");
  }
  const auto n = static_cast<std::size_t>(num_half_edges());
  if (matching_.size() != n) {
    throw InputError("PantsGraph: expected " + std::to_string(n) + " half-edges, got " +
                     std::to_string(matching_.size()));
  }
  for (std::size_t h = 0; h < n; ++h) {
    const std::int32_t p = matching_[h];
    if (p < 0 || static_cast<std::size_t>(p) >= n || p == static_cast<std::int32_t>(h) ||
        matching_[p] != static_cast<std::int32_t>(h)) {
      throw InputError("PantsGraph: matching is not a fixed-point-free involution at half-edge " +
                       std::to_string(h));
    }
  }
}

std::array<int, 3> PantsGraph::neighbors(int v) const {
  return {vertex_of(matching_[3 * v]), vertex_of(matching_[3 * v + 1]), vertex_of(matching_[3 * v + 2])};
}

PantsGraph sample_configuration_model(int genus, std::uint64_t seed) {
  if (genus < 2) {
    throw InputError("sample_configuration_model: genus must be at least 2");
  }
  std::vector<std::int32_t> order(6 * genus - 6);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::int32_t> matching(order.size());
  for (std::size_t i = 0; i < order.size(); i += 2) {
    matching[order[i]] = order[i + 1];
    matching[order[i + 1]] = order[i];
  }
  return PantsGraph(genus, std::move(matching));
}

std::vector<int> hop_distances(const PantsGraph& g, int v) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<int> queue{v};
  dist[v] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool is_connected(const PantsGraph& g) {
  const std::vector<int> dist = hop_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

int graph_diameter(const PantsGraph& g) {
  int diam = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int d : hop_distances(g, v)) {
      if (d < 0) {
        return kInfiniteDiameter;
      }
      diam = std::max(diam, d);
    }
  }
  return diam;
}

}  // namespace hypdiam
