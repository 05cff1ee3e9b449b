#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "exunit/arith.hpp"
#include "exunit/bigint.hpp"
#include "exunit/budget.hpp"
#include "exunit/poly.hpp"

namespace exunit {

/// Count of k-tuples of f-exunits mod n summing to c. Construction checks
/// 2 <= k <= kMaxTerms and n >= 1; c may be any integer.
struct CountQuery {
  CountQuery(IntPolynomial f, unsigned k, std::int64_t c, std::uint64_t n);

  IntPolynomial f;
  unsigned k;
  std::int64_t c;
  std::uint64_t n;
};

/// Root data of f at one prime and the local counts derived from it.
///   W = #{rho in R^k : sum = c}, T = #{x in (Z_p \ R)^k : sum = c},
///   M = p^(k-1) - T.
/// `roots` is left empty when f vanishes identically modulo a prime above
/// the scan cap; `r` is authoritative.
struct RootProfile {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> roots;
  std::uint64_t r = 0;
  BigInt W;
  BigInt T;
  BigInt M;
};

enum class Route { general, linear, quadratic, brauer, yang_zhao, oracle, oracle_dp };

std::string_view route_name(Route route);

struct PrimeContribution {
  std::uint64_t p;
  unsigned e;
  BigInt local_M;
  /// N(p^e) for the query, c reduced mod p^e.
  BigInt factor;
};

struct CountReport {
  BigInt value;
  Route method;
  std::vector<PrimeContribution> per_prime;
};

BigInt root_composition_count(std::span<const std::uint64_t> roots, unsigned k, std::int64_t c, std::uint64_t p,
                              std::uint64_t composition_budget = Budget{}.composition_budget);

/// T = ((p - r)^k + (-1)^k (p W - r^k)) / p, with the division checked.
BigInt count_avoiding_tuples(std::uint64_t p, std::span<const std::uint64_t> roots, unsigned k, std::int64_t c,
                             std::uint64_t composition_budget = Budget{}.composition_budget);

/// Distinct roots of f mod p. Linear and integer-split quadratic factors
/// are solved by modular inversion at any size; anything else is scanned.
/// The returned r may equal p (f vanishes identically).
struct PrimeRoots {
  std::vector<std::uint64_t> roots;
  std::uint64_t r = 0;
};
PrimeRoots roots_at_prime(const IntPolynomial& f, std::uint64_t p, const Budget& budget = {});

RootProfile local_count(const IntPolynomial& f, unsigned k, std::int64_t c, std::uint64_t p,
                        const Budget& budget = {});

/// Multiplicative evaluation for a fixed (f, k, n) across many c: the
/// factorization and per-prime roots are computed once.
class GlobalCounter {
 public:
  GlobalCounter(IntPolynomial f, unsigned k, std::uint64_t n, const Budget& budget = {});

  CountReport count(std::int64_t c) const;

  const PrimeFactorization& factorization() const { return factorization_; }

 private:
  struct PrimeData {
    PrimePower pe;
    PrimeRoots roots;
    BigInt p_pow_k_minus_1;
    BigInt lift;  // p^((e-1)(k-1))
  };

  IntPolynomial f_;
  unsigned k_;
  std::uint64_t n_;
  Budget budget_;
  PrimeFactorization factorization_;
  std::vector<PrimeData> primes_;
};

CountReport global_count(const CountQuery& q, const Budget& budget = {});

/// Closed form for f = a x + b, gcd(a, n) = 1.
CountReport linear_count(const CountQuery& q);

/// Closed form for f = (a1 x - a2)(b1 x - b2) under the coprimality
/// conditions checked by classify().
CountReport quadratic_count(const CountQuery& q);

/// Same, with an explicit factorization of q.f. Any tuple that expands to
/// q.f and meets the coprimality conditions gives the same value.
CountReport quadratic_count(const CountQuery& q, const SplitQuadratic& params);

/// Units summing to c (f = x), evaluated from the classical product formula
/// in exact rationals.
CountReport brauer_count(unsigned k, std::int64_t c, std::uint64_t n);

/// Exceptional units summing to c (f = x(1 - x)), sign (-1)^(k omega(n)).
CountReport yang_zhao_count(unsigned k, std::int64_t c, std::uint64_t n);

enum class Strategy { automatic, general, linear, quadratic };

/// Dispatcher. `automatic` picks linear / quadratic / general by classify();
/// an explicit strategy whose preconditions fail throws FastPathInapplicable.
CountReport count(const CountQuery& q, Strategy strategy = Strategy::automatic, const Budget& budget = {});

/// count() for every c in [0, n), sharing per-prime work.
std::vector<CountReport> count_all_residues(const IntPolynomial& f, unsigned k, std::uint64_t n,
                                            Strategy strategy = Strategy::automatic, const Budget& budget = {});

}  // namespace exunit
