#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "exunit/budget.hpp"

namespace exunit {

/// Nonconstant polynomial with integer coefficients, stored in ascending
/// degree order with trailing zeros trimmed.
class IntPolynomial {
 public:
  /// Throws DomainError for a constant (or empty) coefficient list.
  explicit IntPolynomial(std::vector<std::int64_t> coeffs);

  /// Parses "c0,c1,...,cd" (ascending degree, optional whitespace, no '+').
  static IntPolynomial parse(std::string_view text);

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  std::int64_t leading() const { return coeffs_.back(); }
  std::int64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

  /// Canonical text form, the inverse of parse().
  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// f(x) = a*x + b with gcd(a, n) = 1.
struct LinearCoprime {
  std::int64_t a;
  std::int64_t b;
  friend bool operator==(const LinearCoprime&, const LinearCoprime&) = default;
};

/// f(x) = (a1*x - a2)(b1*x - b2) with gcd(a1, n) = gcd(b1, n) = gcd(a1*b2 - a2*b1, n) = 1.
struct SplitQuadratic {
  std::int64_t a1;
  std::int64_t a2;
  std::int64_t b1;
  std::int64_t b2;
  friend bool operator==(const SplitQuadratic&, const SplitQuadratic&) = default;
};

struct General {
  friend bool operator==(const General&, const General&) = default;
};

using PolynomialForm = std::variant<LinearCoprime, SplitQuadratic, General>;

std::string form_name(const PolynomialForm& form);

/// f(x) mod m by Horner's rule, every step reduced mod m. Result in [0, m).
std::uint64_t eval_mod(const IntPolynomial& f, std::int64_t x, std::uint64_t m);
std::uint64_t eval_mod(const IntPolynomial& f, std::uint64_t x, std::uint64_t m);

/// Distinct roots of f modulo the prime p, ascending. All of [0, p) when f
/// vanishes identically mod p. Exhaustive scan, limited by scan_cap.
std::vector<std::uint64_t> root_set_mod_p(const IntPolynomial& f, std::uint64_t p,
                                          std::uint64_t scan_cap = Budget{}.scan_cap);

/// E_f(n) = {a in [0, n) : gcd(f(a), n) = 1}, ascending. E_f(1) = {0}.
std::vector<std::uint64_t> exunit_set(const IntPolynomial& f, std::uint64_t n,
                                      std::uint64_t limit = Budget{}.exunit_limit);

/// Picks the closed form that applies to (f, n). General is the fallback.
PolynomialForm classify(const IntPolynomial& f, std::uint64_t n);

/// Integer factorization of a quadratic into (a1 x - a2)(b1 x - b2),
/// normalized to a1 > 0 and the lexicographically least tuple. Empty when f
/// is not a quadratic splitting over Z or the factors overflow 64 bits.
std::optional<SplitQuadratic> split_over_integers(const IntPolynomial& f);

}  // namespace exunit
