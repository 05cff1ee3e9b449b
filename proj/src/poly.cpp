#include "exunit/poly.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>

#include "exunit/arith.hpp"
#include "exunit/bigint.hpp"
#include "exunit/errors.hpp"

namespace exunit {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char ch) { return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::uint64_t> reduced_coeffs(const IntPolynomial& f, std::uint64_t m) {
  std::vector<std::uint64_t> out;
  out.reserve(f.coeffs().size());
  for (std::int64_t a : f.coeffs()) out.push_back(mod_reduce(a, m));
  return out;
}

std::uint64_t horner(const std::vector<std::uint64_t>& coeffs, std::uint64_t x, std::uint64_t m) {
  std::uint64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    const std::uint64_t prod = mul_mod(acc, x, m);
    acc = prod + *it;
    if (acc < prod || acc >= m) acc -= m;
  }
  return acc;
}

std::optional<std::int64_t> to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(v.get_si());
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) throw DomainError("constant polynomial: f must have degree >= 1");
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::vector<std::int64_t> coeffs;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (token.empty()) throw DomainError("polynomial: empty coefficient in \"" + std::string(text) + "\"");
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) {
      throw DomainError("polynomial: coefficient out of 64-bit range: " + std::string(token));
    }
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw DomainError("polynomial: invalid coefficient \"" + std::string(token) + "\"");
    }
    coeffs.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return IntPolynomial(std::move(coeffs));
}

std::string IntPolynomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coeffs_[i]);
  }
  return out;
}

std::string form_name(const PolynomialForm& form) {
  struct {
    std::string operator()(const LinearCoprime&) const { return "linear"; }
    std::string operator()(const SplitQuadratic&) const { return "quadratic"; }
    std::string operator()(const General&) const { return "general"; }
  } visitor;
  return std::visit(visitor, form);
}

std::uint64_t eval_mod(const IntPolynomial& f, std::int64_t x, std::uint64_t m) {
  if (m < 1) throw DomainError("eval_mod: modulus must be >= 1");
  return horner(reduced_coeffs(f, m), mod_reduce(x, m), m);
}

std::uint64_t eval_mod(const IntPolynomial& f, std::uint64_t x, std::uint64_t m) {
  if (m < 1) throw DomainError("eval_mod: modulus must be >= 1");
  return horner(reduced_coeffs(f, m), x % m, m);
}

std::vector<std::uint64_t> root_set_mod_p(const IntPolynomial& f, std::uint64_t p, std::uint64_t scan_cap) {
  if (!is_prime(p)) throw DomainError("root_set_mod_p: " + std::to_string(p) + " is not prime");
  if (p > scan_cap) {
    throw PrimeTooLargeError("root scan: prime " + std::to_string(p) + " exceeds scan cap " +
                             std::to_string(scan_cap));
  }
  const auto coeffs = reduced_coeffs(f, p);
  std::vector<std::uint64_t> roots;
  for (std::uint64_t x = 0; x < p; ++x) {
    if (horner(coeffs, x, p) == 0) roots.push_back(x);
  }
  return roots;
}

std::vector<std::uint64_t> exunit_set(const IntPolynomial& f, std::uint64_t n, std::uint64_t limit) {
  if (n < 1) throw DomainError("exunit_set: n must be >= 1");
  if (n > limit) {
    throw EnumerationTooLargeError("exunit_set: n = " + std::to_string(n) + " exceeds enumeration limit " +
                                   std::to_string(limit));
  }
  const auto coeffs = reduced_coeffs(f, n);
  std::vector<std::uint64_t> units;
  for (std::uint64_t a = 0; a < n; ++a) {
    if (gcd_u(horner(coeffs, a, n), n) == 1) units.push_back(a);
  }
  return units;
}

std::optional<SplitQuadratic> split_over_integers(const IntPolynomial& f) {
  if (f.degree() != 2) return std::nullopt;
  const BigInt A = from_i64(f.coeff(2));
  const BigInt B = from_i64(f.coeff(1));
  const BigInt C = from_i64(f.coeff(0));
  const BigInt disc = B * B - 4 * A * C;
  if (disc < 0 || mpz_perfect_square_p(disc.get_mpz_t()) == 0) return std::nullopt;
  const BigInt root = sqrt(disc);

  // Each rational root num/den becomes the primitive factor (q x - p).
  struct Factor {
    BigInt lead;
    BigInt root;
  };
  auto primitive = [&](BigInt num) {
    BigInt den = 2 * A;
    const BigInt g = gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Factor{den, num};
  };
  const Factor f1 = primitive(-B + root);
  const Factor f2 = primitive(-B - root);

  // Gauss's lemma: the content of f is A / (q1 q2), an exact integer.
  const BigInt lead_product = f1.lead * f2.lead;
  if (A % lead_product != 0) throw InvariantViolation("split_over_integers: content is not integral");
  const BigInt content = A / lead_product;

  std::optional<SplitQuadratic> best;
  auto consider = [&](const Factor& x, const Factor& y) {
    for (int sign : {1, -1}) {
      const auto a1 = to_i64(sign * x.lead), a2 = to_i64(sign * x.root);
      const auto b1 = to_i64(sign * y.lead), b2 = to_i64(sign * y.root);
      if (!a1 || !a2 || !b1 || !b2 || *a1 <= 0) continue;
      const SplitQuadratic cand{*a1, *a2, *b1, *b2};
      const auto key = [](const SplitQuadratic& s) { return std::array{s.a1, s.a2, s.b1, s.b2}; };
      if (!best || key(cand) < key(*best)) best = cand;
    }
  };
  for (const auto& [x, y] : {std::pair{Factor{content * f1.lead, content * f1.root}, f2},
                             std::pair{f1, Factor{content * f2.lead, content * f2.root}}}) {
    consider(x, y);
    consider(y, x);
  }
  return best;
}

PolynomialForm classify(const IntPolynomial& f, std::uint64_t n) {
  if (n < 1) throw DomainError("classify: n must be >= 1");
  if (f.degree() == 1) {
    if (gcd_u(mod_reduce(f.coeff(1), n), n) == 1) return LinearCoprime{f.coeff(1), f.coeff(0)};
    return General{};
  }
  if (f.degree() == 2) {
    const auto split = split_over_integers(f);
    if (!split) return General{};
    const auto& [a1, a2, b1, b2] = *split;
    const std::uint64_t lhs = mul_mod(mod_reduce(a1, n), mod_reduce(b2, n), n);
    const std::uint64_t rhs = mul_mod(mod_reduce(a2, n), mod_reduce(b1, n), n);
    const std::uint64_t cross = lhs >= rhs ? lhs - rhs : lhs + (n - rhs);
    if (gcd_u(mod_reduce(a1, n), n) == 1 && gcd_u(mod_reduce(b1, n), n) == 1 && gcd_u(cross, n) == 1) {
      return *split;
    }
  }
  return General{};
}

}  // namespace exunit
