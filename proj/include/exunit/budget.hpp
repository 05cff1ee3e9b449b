#pragma once

#include <cstdint>

namespace exunit {

/// Work limits shared by the enumerating code paths. Exceeding one is an
/// error (EnumerationTooLargeError / PrimeTooLargeError), never truncation.
struct Budget {
  /// Largest prime for which roots of f are found by exhaustive scan.
  std::uint64_t scan_cap = 10'000'000;
  /// Largest modulus for which E_f(n) is listed explicitly.
  std::uint64_t exunit_limit = 1'000'000;
  /// Iteration budget for the brute-force oracles.
  std::uint64_t enum_budget = 100'000'000;
  /// Largest modulus accepted by the convolution oracle.
  std::uint64_t dp_limit = 100'000;
  /// Upper bound on composition terms enumerated per local count.
  std::uint64_t composition_budget = 100'000'000;
};

inline constexpr unsigned kMinTerms = 2;
inline constexpr unsigned kMaxTerms = 1'000'000;

}  // namespace exunit
