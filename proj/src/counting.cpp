#include "exunit/counting.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "exunit/errors.hpp"

namespace exunit {

namespace {

void check_terms(unsigned k, unsigned min_k, const char* where) {
  if (k < min_k || k > kMaxTerms) {
    throw DomainError(std::string(where) + ": k = " + std::to_string(k) + " outside [" + std::to_string(min_k) +
                      ", " + std::to_string(kMaxTerms) + "]");
  }
}

void check_modulus(std::uint64_t n, const char* where) {
  if (n < 1) throw DomainError(std::string(where) + ": n must be >= 1");
}

BigInt sign_of_power(unsigned k) { return (k % 2 == 0) ? BigInt(1) : BigInt(-1); }

BigInt exact_div(const BigInt& num, std::uint64_t p, const char* where) {
  const BigInt den = from_u64(p);
  if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) {
    throw InvariantViolation(std::string(where) + ": " + to_decimal(num) + " is not divisible by " +
                             std::to_string(p));
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

BigInt avoiding_from(std::uint64_t p, std::uint64_t r, const BigInt& W, unsigned k) {
  const BigInt num = pow(p - r, k) + sign_of_power(k) * (from_u64(p) * W - pow(r, k));
  return exact_div(num, p, "count_avoiding_tuples");
}

BigRational rational(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigInt integral(const BigRational& q, const char* where) {
  if (q.get_den() != 1) throw InvariantViolation(std::string(where) + ": non-integral value " + q.get_str());
  return q.get_num();
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return a >= b ? a - b : a + (m - b); }

// Compositions j_1 + ... + j_r = k weighted by k!/(j_1!...j_r!), kept when
// sum j_i * rho_i = target (mod p).
class CompositionWalk {
 public:
  CompositionWalk(std::span<const std::uint64_t> roots, std::uint64_t p, std::uint64_t target)
      : roots_(roots), p_(p), target_(target) {}

  BigInt run(unsigned k) {
    total_ = 0;
    walk(0, k, 0, BigInt(1));
    return total_;
  }

 private:
  bool leaf_hits(std::uint64_t remaining, std::uint64_t partial) const {
    const std::uint64_t last = mul_mod(remaining % p_, roots_.back(), p_);
    return (partial + last) % p_ == target_;
  }

  void walk(std::size_t i, std::uint64_t remaining, std::uint64_t partial, const BigInt& coef) {
    if (i + 1 == roots_.size()) {
      if (leaf_hits(remaining, partial)) total_ += coef;
      return;
    }
    const std::uint64_t rho = roots_[i];
    BigInt binom = 1;
    for (std::uint64_t j = 0; j <= remaining; ++j) {
      const std::uint64_t next = (partial + mul_mod(j % p_, rho, p_)) % p_;
      if (i + 2 == roots_.size()) {
        if (leaf_hits(remaining - j, next)) total_ += coef * binom;
      } else {
        walk(i + 1, remaining - j, next, coef * binom);
      }
      if (j < remaining) {
        binom *= static_cast<unsigned long>(remaining - j);
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j + 1));
      }
    }
  }

  std::span<const std::uint64_t> roots_;
  std::uint64_t p_;
  std::uint64_t target_;
  BigInt total_;
};

void fill_local(RootProfile& profile, unsigned k, std::int64_t c, std::uint64_t composition_budget) {
  const std::uint64_t p = profile.p;
  if (profile.r == p) {
    profile.W = pow(p, k - 1);
    profile.T = 0;
  } else {
    profile.W = root_composition_count(profile.roots, k, c, p, composition_budget);
    profile.T = avoiding_from(p, profile.r, profile.W, k);
  }
  profile.M = pow(p, k - 1) - profile.T;
}

SplitQuadratic require_split(const CountQuery& q) {
  const PolynomialForm form = classify(q.f, q.n);
  if (const auto* s = std::get_if<SplitQuadratic>(&form)) return *s;
  throw FastPathInapplicable("quadratic: f = " + q.f.to_string() +
                             " is not (a1 x - a2)(b1 x - b2) with gcd(a1, n) = gcd(b1, n) = gcd(a1 b2 - a2 b1, n) = 1 "
                             "for n = " +
                             std::to_string(q.n));
}

LinearCoprime require_linear(const CountQuery& q) {
  const PolynomialForm form = classify(q.f, q.n);
  if (const auto* l = std::get_if<LinearCoprime>(&form)) return *l;
  throw FastPathInapplicable("linear: f = " + q.f.to_string() + " is not of the form ax + b with gcd(a, n) = 1 for n = " +
                             std::to_string(q.n));
}

}  // namespace

CountQuery::CountQuery(IntPolynomial f_, unsigned k_, std::int64_t c_, std::uint64_t n_)
    : f(std::move(f_)), k(k_), c(c_), n(n_) {
  check_terms(k, kMinTerms, "CountQuery");
  check_modulus(n, "CountQuery");
}

std::string_view route_name(Route route) {
  switch (route) {
    case Route::general: return "general";
    case Route::linear: return "linear";
    case Route::quadratic: return "quadratic";
    case Route::brauer: return "brauer";
    case Route::yang_zhao: return "yang_zhao";
    case Route::oracle: return "oracle";
    case Route::oracle_dp: return "oracle_dp";
  }
  return "unknown";
}

BigInt root_composition_count(std::span<const std::uint64_t> roots, unsigned k, std::int64_t c, std::uint64_t p,
                              std::uint64_t composition_budget) {
  check_terms(k, 1, "root_composition_count");
  if (p < 2) throw DomainError("root_composition_count: p must be prime");
  std::vector<std::uint64_t> sorted(roots.begin(), roots.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("root_composition_count: roots must be distinct");
  }
  if (!sorted.empty() && sorted.back() >= p) throw DomainError("root_composition_count: roots must lie in [0, p)");

  const std::uint64_t r = sorted.size();
  if (r == 0) return 0;
  if (r == p) return pow(p, k - 1);

  const BigInt terms = binomial(k + r - 1, r - 1);
  if (terms > from_u64(composition_budget)) {
    throw EnumerationTooLargeError("root_composition_count: " + to_decimal(terms) +
                                   " compositions exceed budget " + std::to_string(composition_budget));
  }
  return CompositionWalk(sorted, p, mod_reduce(c, p)).run(k);
}

BigInt count_avoiding_tuples(std::uint64_t p, std::span<const std::uint64_t> roots, unsigned k, std::int64_t c,
                             std::uint64_t composition_budget) {
  const BigInt W = root_composition_count(roots, k, c, p, composition_budget);
  return avoiding_from(p, roots.size(), W, k);
}

PrimeRoots roots_at_prime(const IntPolynomial& f, std::uint64_t p, const Budget& budget) {
  if (!is_prime(p)) throw DomainError("roots_at_prime: " + std::to_string(p) + " is not prime");

  std::vector<std::uint64_t> reduced;
  for (std::int64_t a : f.coeffs()) reduced.push_back(mod_reduce(a, p));
  while (!reduced.empty() && reduced.back() == 0) reduced.pop_back();

  PrimeRoots out;
  if (reduced.empty()) {
    out.r = p;
    if (p <= budget.scan_cap) {
      out.roots.resize(p);
      std::iota(out.roots.begin(), out.roots.end(), std::uint64_t{0});
    }
    return out;
  }
  if (reduced.size() == 1) return out;
  if (reduced.size() == 2) {
    const std::uint64_t root = mul_mod(sub_mod(0, reduced[0], p), inverse_residue(reduced[1], p), p);
    out.roots = {root};
    out.r = 1;
    return out;
  }
  if (reduced.size() == 3) {
    if (const auto split = split_over_integers(f)) {
      const std::uint64_t a = mul_mod(mod_reduce(split->a2, p), mod_inverse(split->a1, p), p);
      const std::uint64_t b = mul_mod(mod_reduce(split->b2, p), mod_inverse(split->b1, p), p);
      out.roots = a == b ? std::vector<std::uint64_t>{a} : std::vector<std::uint64_t>{std::min(a, b), std::max(a, b)};
      out.r = out.roots.size();
      return out;
    }
  }
  out.roots = root_set_mod_p(f, p, budget.scan_cap);
  out.r = out.roots.size();
  return out;
}

RootProfile local_count(const IntPolynomial& f, unsigned k, std::int64_t c, std::uint64_t p, const Budget& budget) {
  check_terms(k, 1, "local_count");
  PrimeRoots roots = roots_at_prime(f, p, budget);
  RootProfile profile;
  profile.p = p;
  profile.roots = std::move(roots.roots);
  profile.r = roots.r;
  fill_local(profile, k, c, budget.composition_budget);
  return profile;
}

GlobalCounter::GlobalCounter(IntPolynomial f, unsigned k, std::uint64_t n, const Budget& budget)
    : f_(std::move(f)), k_(k), n_(n), budget_(budget) {
  check_terms(k_, kMinTerms, "GlobalCounter");
  check_modulus(n_, "GlobalCounter");
  factorization_ = factorize(n_);
  for (const PrimePower& pe : factorization_) {
    primes_.push_back(PrimeData{pe, roots_at_prime(f_, pe.p, budget_), pow(pe.p, k_ - 1),
                                pow(pe.p, std::uint64_t{pe.e - 1} * (k_ - 1))});
  }
}

CountReport GlobalCounter::count(std::int64_t c) const {
  CountReport report{BigInt(1), Route::general, {}};
  for (const PrimeData& data : primes_) {
    RootProfile profile;
    profile.p = data.pe.p;
    profile.r = data.roots.r;
    profile.roots = data.roots.roots;
    fill_local(profile, k_, c, budget_.composition_budget);
    // N(p^e) = p^((e-1)(k-1)) * (p^(k-1) - M) = p^((e-1)(k-1)) * T
    BigInt factor = data.lift * profile.T;
    report.value *= factor;
    report.per_prime.push_back({data.pe.p, data.pe.e, std::move(profile.M), std::move(factor)});
  }
  return report;
}

CountReport global_count(const CountQuery& q, const Budget& budget) {
  return GlobalCounter(q.f, q.k, q.n, budget).count(q.c);
}

CountReport linear_count(const CountQuery& q) {
  const auto [a, b] = require_linear(q);
  const unsigned k = q.k;
  CountReport report{BigInt(1), Route::linear, {}};
  for (const auto& [p, e] : factorize(q.n)) {
    const std::uint64_t shifted =
        (mul_mod(mod_reduce(a, p), mod_reduce(q.c, p), p) + mul_mod(k % p, mod_reduce(b, p), p)) % p;
    const BigInt delta = shifted == 0 ? from_u64(p - 1) : BigInt(-1);
    const BigInt local = exact_div(pow(p - 1, k) + sign_of_power(k) * delta, p, "linear_count");
    BigInt factor = pow(p, std::uint64_t{e - 1} * (k - 1)) * local;
    report.value *= factor;
    report.per_prime.push_back({p, e, pow(p, k - 1) - local, std::move(factor)});
  }
  return report;
}

CountReport quadratic_count(const CountQuery& q) { return quadratic_count(q, require_split(q)); }

CountReport quadratic_count(const CountQuery& q, const SplitQuadratic& params) {
  const auto [a1, a2, b1, b2] = params;
  {
    const BigInt A1 = from_i64(a1), A2 = from_i64(a2), B1 = from_i64(b1), B2 = from_i64(b2);
    const bool expands = q.f.degree() == 2 && A1 * B1 == from_i64(q.f.coeff(2)) &&
                         -(A1 * B2 + A2 * B1) == from_i64(q.f.coeff(1)) && A2 * B2 == from_i64(q.f.coeff(0));
    const BigInt cross = A1 * B2 - A2 * B1;
    const BigInt n = from_u64(q.n);
    const bool coprime = gcd(A1, n) == 1 && gcd(B1, n) == 1 && gcd(cross, n) == 1;
    if (!expands || !coprime) {
      throw FastPathInapplicable("quadratic: parameters do not factor f = " + q.f.to_string() +
                                 " under the coprimality conditions for n = " + std::to_string(q.n));
    }
  }
  const unsigned k = q.k;
  CountReport report{BigInt(1), Route::quadratic, {}};
  for (const auto& [p, e] : factorize(q.n)) {
    // Sum of C(k, j) over j with (a2 b1 - a1 b2) j = a1 b1 c - a1 b2 k (mod p).
    const std::uint64_t slope =
        sub_mod(mul_mod(mod_reduce(a2, p), mod_reduce(b1, p), p), mul_mod(mod_reduce(a1, p), mod_reduce(b2, p), p), p);
    const std::uint64_t rhs = sub_mod(mul_mod(mul_mod(mod_reduce(a1, p), mod_reduce(b1, p), p), mod_reduce(q.c, p), p),
                                      mul_mod(mul_mod(mod_reduce(a1, p), mod_reduce(b2, p), p), k % p, p), p);
    if (slope == 0) throw InvariantViolation("quadratic_count: coincident roots at p = " + std::to_string(p));
    const std::uint64_t first = mul_mod(rhs, inverse_residue(slope, p), p);
    BigInt binomial_sum = 0;
    for (std::uint64_t j = first; j <= k; j += p) {
      binomial_sum += binomial(k, j);
      if (p > k) break;
    }
    const BigInt bracket = from_u64(p) * binomial_sum + pow(BigInt(2) - from_u64(p), k) - pow(2, k);
    const BigInt local = sign_of_power(k) * exact_div(bracket, p, "quadratic_count");
    BigInt factor = pow(p, std::uint64_t{e - 1} * (k - 1)) * local;
    report.value *= factor;
    report.per_prime.push_back({p, e, pow(p, k - 1) - local, std::move(factor)});
  }
  return report;
}

CountReport brauer_count(unsigned k, std::int64_t c, std::uint64_t n) {
  check_terms(k, kMinTerms, "brauer_count");
  check_modulus(n, "brauer_count");
  const PrimeFactorization fac = factorize(n);
  const BigInt minus_one_pow_k = sign_of_power(k);
  const BigInt minus_one_pow_k1 = -minus_one_pow_k;

  CountReport report{BigInt(0), Route::brauer, {}};
  BigRational total = rational(pow(from_u64(euler_phi(n)), k), from_u64(n));
  for (const auto& [p, e] : fac) {
    const bool divides_c = mod_reduce(c, p) == 0;
    const BigRational correction =
        divides_c ? BigRational(1) - rational(minus_one_pow_k1, pow(p - 1, k - 1))
                  : BigRational(1) - rational(minus_one_pow_k, pow(p - 1, k));
    total *= correction;

    const BigInt prime_power = pow(p, e);
    const BigInt phi = pow(p, e - 1) * (p - 1);
    BigRational local_q = rational(pow(phi, k), prime_power) * correction;
    local_q.canonicalize();
    BigInt factor = integral(local_q, "brauer_count");
    const BigInt lift = pow(p, std::uint64_t{e - 1} * (k - 1));
    report.per_prime.push_back({p, e, pow(p, k - 1) - factor / lift, std::move(factor)});
  }
  total.canonicalize();
  report.value = integral(total, "brauer_count");
  return report;
}

CountReport yang_zhao_count(unsigned k, std::int64_t c, std::uint64_t n) {
  check_terms(k, kMinTerms, "yang_zhao_count");
  check_modulus(n, "yang_zhao_count");
  const PrimeFactorization fac = factorize(n);

  CountReport report{BigInt(0), Route::yang_zhao, {}};
  BigRational total = (std::uint64_t{k} * fac.size()) % 2 == 0 ? 1 : -1;
  for (const auto& [p, e] : fac) {
    BigInt binomial_sum = 0;
    for (std::uint64_t j = mod_reduce(c, p); j <= k; j += p) {
      binomial_sum += binomial(k, j);
      if (p > k) break;
    }
    const BigInt bracket = from_u64(p) * binomial_sum + pow(BigInt(2) - from_u64(p), k) - pow(2, k);
    // p^(k e - e - k); the exponent is -1 exactly when e = 1.
    const std::int64_t exponent = std::int64_t{k} * e - e - k;
    BigRational term = exponent >= 0 ? BigRational(bracket * pow(p, static_cast<std::uint64_t>(exponent)))
                                     : rational(bracket, pow(p, static_cast<std::uint64_t>(-exponent)));
    total *= term;
    BigRational local_q = term * sign_of_power(k);
    local_q.canonicalize();
    BigInt factor = integral(local_q, "yang_zhao_count");
    const BigInt lift = pow(p, std::uint64_t{e - 1} * (k - 1));
    report.per_prime.push_back({p, e, pow(p, k - 1) - factor / lift, std::move(factor)});
  }
  total.canonicalize();
  report.value = integral(total, "yang_zhao_count");
  return report;
}

CountReport count(const CountQuery& q, Strategy strategy, const Budget& budget) {
  switch (strategy) {
    case Strategy::general: return global_count(q, budget);
    case Strategy::linear: return linear_count(q);
    case Strategy::quadratic: return quadratic_count(q);
    case Strategy::automatic: break;
  }
  const PolynomialForm form = classify(q.f, q.n);
  if (std::holds_alternative<LinearCoprime>(form)) return linear_count(q);
  if (std::holds_alternative<SplitQuadratic>(form)) return quadratic_count(q);
  return global_count(q, budget);
}

std::vector<CountReport> count_all_residues(const IntPolynomial& f, unsigned k, std::uint64_t n, Strategy strategy,
                                            const Budget& budget) {
  const CountQuery probe(f, k, 0, n);
  const bool general = strategy == Strategy::general ||
                       (strategy == Strategy::automatic && std::holds_alternative<General>(classify(f, n)));
  std::vector<CountReport> out;
  out.reserve(n);
  if (general) {
    const GlobalCounter counter(f, k, n, budget);
    for (std::uint64_t c = 0; c < n; ++c) out.push_back(counter.count(static_cast<std::int64_t>(c)));
  } else {
    for (std::uint64_t c = 0; c < n; ++c) {
      out.push_back(count(CountQuery(f, k, static_cast<std::int64_t>(c), n), strategy, budget));
    }
  }
  return out;
}

}  // namespace exunit
