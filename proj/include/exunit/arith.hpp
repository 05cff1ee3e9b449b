#pragma once

#include <cstdint>
#include <vector>

namespace exunit {

struct PrimePower {
  std::uint64_t p;
  unsigned e;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization: distinct primes in ascending order, each with
/// exponent >= 1. Empty for 1.
class PrimeFactorization {
 public:
  PrimeFactorization() = default;
  explicit PrimeFactorization(std::vector<PrimePower> entries);

  const std::vector<PrimePower>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Product of p^e over all entries. Wraps on overflow; callers only use
  /// it for factorizations of 64-bit values.
  std::uint64_t value() const;

  /// Exponent of p (0 when p does not divide the factored value).
  unsigned valuation(std::uint64_t p) const;

  friend bool operator==(const PrimeFactorization&, const PrimeFactorization&) = default;

 private:
  std::vector<PrimePower> entries_;
};

/// gcd over all integers via absolute values; gcd(0, 0) = 0.
std::uint64_t gcd(std::int64_t a, std::int64_t b);
std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Least nonnegative residue of v modulo m (m >= 1).
std::uint64_t mod_reduce(std::int64_t v, std::uint64_t m);

/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

PrimeFactorization factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
unsigned omega(std::uint64_t n);
unsigned p_adic_valuation(std::int64_t m, std::uint64_t p);

/// x in [0, p) with a*x = 1 (mod p). Throws NotInvertibleError when
/// gcd(a, p) != 1.
std::uint64_t mod_inverse(std::int64_t a, std::uint64_t p);
std::uint64_t inverse_residue(std::uint64_t a, std::uint64_t p);

}  // namespace exunit
