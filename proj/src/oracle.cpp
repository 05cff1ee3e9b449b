#include "exunit/oracle.hpp"

#include <numeric>
#include <string>

#include "exunit/errors.hpp"

namespace exunit::oracle {

namespace {

using i128 = __int128;

std::uint64_t residue(i128 v, std::uint64_t m) {
  i128 r = v % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

// f(t) mod m for t in [0, m).
std::vector<std::uint64_t> value_table(const IntPolynomial& f, std::uint64_t m) {
  std::vector<std::uint64_t> table(m);
  for (std::uint64_t t = 0; t < m; ++t) {
    i128 acc = 0;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
      acc = residue(acc * static_cast<i128>(t) + *it, m);
    }
    table[t] = static_cast<std::uint64_t>(acc);
  }
  return table;
}

std::vector<char> exunit_indicator(const IntPolynomial& f, std::uint64_t n) {
  const auto values = value_table(f, n);
  std::vector<char> member(n);
  for (std::uint64_t a = 0; a < n; ++a) member[a] = std::gcd(values[a], n) == 1;
  return member;
}

// base^exp, saturating at limit + 1.
std::uint64_t capped_power(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && out > limit / base) return limit + 1;
    out *= base;
  }
  return out;
}

void require_within(std::uint64_t work, std::uint64_t budget, const std::string& what) {
  if (work > budget) {
    throw EnumerationTooLargeError(what + ": enumeration exceeds budget " + std::to_string(budget));
  }
}

// Visits every tuple of `arity` indices in [0, radix) in lexicographic order.
template <typename Visit>
void odometer(unsigned arity, std::uint64_t radix, Visit&& visit) {
  std::vector<std::uint64_t> digits(arity, 0);
  if (radix == 0 && arity > 0) return;
  while (true) {
    visit(digits);
    unsigned i = 0;
    while (i < arity && ++digits[i] == radix) digits[i++] = 0;
    if (i == arity) return;
  }
}

std::vector<BigInt> cyclic_product(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  const std::size_t n = a.size();
  std::vector<BigInt> out(n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      std::size_t slot = i + j;
      if (slot >= n) slot -= n;
      out[slot] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

BigInt oracle_global_count(const CountQuery& q, std::uint64_t budget) {
  require_within(q.n, budget, "oracle_global_count");
  const auto member = exunit_indicator(q.f, q.n);
  std::vector<std::uint64_t> units;
  for (std::uint64_t a = 0; a < q.n; ++a) {
    if (member[a]) units.push_back(a);
  }
  require_within(capped_power(units.size(), q.k - 1, budget), budget, "oracle_global_count");

  const std::uint64_t target = residue(q.c, q.n);
  std::uint64_t hits = 0;
  odometer(q.k - 1, units.size(), [&](const std::vector<std::uint64_t>& idx) {
    std::uint64_t sum = 0;
    for (std::uint64_t i : idx) sum = (sum + units[i]) % q.n;
    const std::uint64_t last = (target + q.n - sum) % q.n;
    if (member[last]) ++hits;
  });
  return from_u64(hits);
}

std::vector<BigInt> oracle_count_vector_dp(const IntPolynomial& f, unsigned k, std::uint64_t n, std::uint64_t limit) {
  if (n < 1) throw DomainError("oracle_count_vector_dp: n must be >= 1");
  if (k < 1) throw DomainError("oracle_count_vector_dp: k must be >= 1");
  require_within(n, limit, "oracle_count_vector_dp");
  const auto member = exunit_indicator(f, n);
  std::vector<BigInt> base(n, BigInt(0));
  for (std::uint64_t a = 0; a < n; ++a) base[a] = member[a] ? 1 : 0;

  std::vector<BigInt> result(n, BigInt(0));
  result[0] = 1;
  for (unsigned e = k; e > 0; e >>= 1) {
    if (e & 1) result = cyclic_product(result, base);
    if (e > 1) base = cyclic_product(base, base);
  }
  return result;
}

BigInt oracle_global_count_dp(const CountQuery& q, std::uint64_t limit) {
  return oracle_count_vector_dp(q.f, q.k, q.n, limit)[residue(q.c, q.n)];
}

BigInt oracle_local_count(const IntPolynomial& f, unsigned k, std::int64_t c, std::uint64_t p,
                          std::uint64_t budget) {
  if (k < 1) throw DomainError("oracle_local_count: k must be >= 1");
  if (p < 2) throw DomainError("oracle_local_count: p must be prime");
  require_within(capped_power(p, k - 1, budget), budget, "oracle_local_count");
  require_within(p, budget, "oracle_local_count");

  const auto values = value_table(f, p);
  const std::uint64_t target = residue(c, p);
  std::uint64_t hits = 0;
  odometer(k - 1, p, [&](const std::vector<std::uint64_t>& xs) {
    i128 product = 1;
    std::uint64_t sum = 0;
    for (std::uint64_t x : xs) {
      product = product * values[x] % p;
      sum = (sum + x) % p;
    }
    product = product * values[(target + p - sum) % p] % p;
    if (product == 0) ++hits;
  });
  return from_u64(hits);
}

std::uint64_t count_obstruction_zeros(const IntPolynomial& f, std::int64_t c, unsigned r, std::uint64_t domain,
                                      std::uint64_t modulus, std::uint64_t budget) {
  if (domain < 1 || modulus < 1) throw DomainError("count_obstruction_zeros: moduli must be >= 1");
  require_within(capped_power(domain, r, budget), budget, "count_obstruction_zeros");
  require_within(modulus, budget, "count_obstruction_zeros");

  const auto values = value_table(f, modulus);
  std::uint64_t zeros = 0;
  odometer(r, domain, [&](const std::vector<std::uint64_t>& xs) {
    i128 product = 1;
    i128 rest = c;
    for (std::uint64_t x : xs) {
      product = product * values[x % modulus] % modulus;
      rest -= x;
    }
    product = product * values[residue(rest, modulus)] % modulus;
    if (product == 0) ++zeros;
  });
  return zeros;
}

}  // namespace exunit::oracle
