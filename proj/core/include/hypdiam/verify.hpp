#pragma once

// Self-check batteries over the library, runnable from the command line.

#include <functional>
#include <string>
#include <vector>

#include "hypdiam/hexagon.hpp"

namespace hypdiam {

enum class Suite { kGeometry, kCounting, kPeeling, kAll };

/// "geometry", "counting", "peeling" or "all"; throws InputError otherwise.
Suite parse_suite(const std::string& name);

struct SuiteCheck {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;  // the violating inputs when failing
};

struct VerificationReport {
  std::vector<SuiteCheck> checks;

  bool pass() const;
  std::string to_json() const;
};

struct VerifyInputs {
  /// Hexagons are taken from here, so a deliberately broken construction can
  /// be fed through the batteries.
  std::function<HexagonGeometry(double)> hexagon = [](double ell) { return build_hexagon(ell); };
  std::uint64_t seed = 1;
  int threads = 1;
};

VerificationReport run_verification_suites(Suite suite, const VerifyInputs& inputs = {});

}  // namespace hypdiam
