#pragma once

// Definitional brute-force counters. Nothing here calls into the formula
// code (counting) or the root/exunit helpers (poly); only the polynomial's
// coefficient list is shared.

#include <cstdint>
#include <vector>

#include "exunit/bigint.hpp"
#include "exunit/budget.hpp"
#include "exunit/counting.hpp"
#include "exunit/poly.hpp"

namespace exunit::oracle {

/// Enumerates E_f(n)^(k-1) and tests whether c - sum is an exunit.
/// Throws EnumerationTooLargeError when |E|^(k-1) exceeds `budget`.
BigInt oracle_global_count(const CountQuery& q, std::uint64_t budget = Budget{}.enum_budget);

/// Entry c of the k-fold cyclic self-convolution of the indicator of E_f(n).
BigInt oracle_global_count_dp(const CountQuery& q, std::uint64_t limit = Budget{}.dp_limit);

/// The whole convolution: entry c is N_{k,f,c}(n) for c in [0, n).
std::vector<BigInt> oracle_count_vector_dp(const IntPolynomial& f, unsigned k, std::uint64_t n,
                                           std::uint64_t limit = Budget{}.dp_limit);

/// M_{k,f,c}(p) by scanning Z_p^(k-1) for f(x_1)...f(x_{k-1}) f(c - sum) = 0 (mod p).
BigInt oracle_local_count(const IntPolynomial& f, unsigned k, std::int64_t c, std::uint64_t p,
                          std::uint64_t budget = Budget{}.enum_budget);

/// #{x in Z_domain^r : f(x_1)...f(x_r) f(c - x_1 - ... - x_r) = 0 (mod modulus)}.
/// Harness for the lifting (m | n) and CRT product identities.
std::uint64_t count_obstruction_zeros(const IntPolynomial& f, std::int64_t c, unsigned r, std::uint64_t domain,
                                      std::uint64_t modulus, std::uint64_t budget = Budget{}.enum_budget);

}  // namespace exunit::oracle
