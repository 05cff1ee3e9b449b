#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exunit/budget.hpp"
#include "exunit/poly.hpp"

namespace exunit::verify {

/// x, x+1, 2x+3, x-x^2, x^2+1, x^2+x+1, x^3+x+1, 6x^2+5x+1.
std::vector<IntPolynomial> default_family();

struct Options {
  std::uint64_t n_max = 30;
  std::vector<unsigned> ks = {2, 3};
  std::vector<IntPolynomial> polys = default_family();
  std::uint64_t seed = 0;
  unsigned workers = 1;
  /// 0 checks every coprime pair; otherwise a seeded sample of this size.
  std::uint64_t max_pairs = 0;
  /// Perturbs one local count so the harness must report a mismatch.
  bool inject_fault = false;
  Budget budget;
};

struct Counterexample {
  std::string poly;
  unsigned k = 0;
  std::int64_t c = 0;
  std::uint64_t n = 0;
  std::string formula;
  std::string oracle;
  std::string note;
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::optional<Counterexample> failure;
};

struct Report {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

/// Runs oracle-equivalence, multiplicativity, conservation and
/// fast-path-agreement over the grid. Output does not depend on `workers`.
Report run(const Options& options);

std::string render(const Report& report);

}  // namespace exunit::verify
