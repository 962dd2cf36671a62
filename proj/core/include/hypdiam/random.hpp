#pragma once

// Seeded, reproducible randomness. Every experiment has one root seed; trial
// seeds are derived from (root, genus, trial) by counter so results do not
// depend on scheduling.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hypdiam {

/// One round of the splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `trial` at genus `genus` under `root`.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t genus, std::uint64_t trial);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, n); n must be positive. Rejection sampling, so the result
  /// is exactly uniform and identical across standard libraries.
  std::uint64_t below(std::uint64_t n);

  /// Uniform on [0, 1) with 53 random bits.
  double unit();

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hypdiam
