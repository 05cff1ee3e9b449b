#include "exunit/arith.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "exunit/errors.hpp"

namespace exunit {

namespace {

using u128 = unsigned __int128;

std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

// Witnesses sufficient for every n < 2^64.
constexpr std::array<std::uint64_t, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho with a fixed parameter sequence, so the
// factorization is reproducible. n must be odd and composite.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto step = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    const std::uint64_t m = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      for (std::uint64_t done = 0; done < r && g == 1; done += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - done); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

}  // namespace

PrimeFactorization::PrimeFactorization(std::vector<PrimePower> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].e == 0 || !is_prime(entries_[i].p) || (i > 0 && entries_[i].p == entries_[i - 1].p)) {
      throw DomainError("PrimeFactorization: entries must be distinct primes with positive exponents");
    }
  }
}

std::uint64_t PrimeFactorization::value() const {
  std::uint64_t out = 1;
  for (const auto& [p, e] : entries_) {
    for (unsigned i = 0; i < e; ++i) out *= p;
  }
  return out;
}

unsigned PrimeFactorization::valuation(std::uint64_t p) const {
  for (const auto& pe : entries_) {
    if (pe.p == p) return pe.e;
  }
  return 0;
}

std::uint64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(magnitude(a), magnitude(b)); }

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod_reduce(std::int64_t v, std::uint64_t m) {
  const std::uint64_t r = magnitude(v) % m;
  return (v < 0 && r != 0) ? m - r : r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  return std::all_of(kWitnesses.begin(), kWitnesses.end(),
                     [&](std::uint64_t a) { return strong_probable_prime(n, a, d, s); });
}

PrimeFactorization factorize(std::uint64_t n) {
  if (n < 1) throw DomainError("factorize: n must be >= 1");

  std::vector<PrimePower> out;
  auto strip = [&](std::uint64_t d) {
    if (n % d != 0) return;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  };

  // Trial division by 2, 3 and 6k +- 1. Past 10^6 a composite cofactor is
  // handed to Pollard rho; below 10^12 the loop finishes the job.
  constexpr std::uint64_t kTrialLimit = 1'000'000;
  strip(2);
  strip(3);
  for (std::uint64_t d = 5; d <= kTrialLimit && d * d <= n; d += 6) {
    strip(d);
    strip(d + 2);
  }

  if (n > 1) {
    std::vector<std::uint64_t> primes;
    split_into(n, primes);
    std::sort(primes.begin(), primes.end());
    for (std::uint64_t p : primes) {
      if (!out.empty() && out.back().p == p) {
        ++out.back().e;
      } else {
        out.push_back({p, 1});
      }
    }
  }
  return PrimeFactorization(std::move(out));
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n < 1) throw DomainError("euler_phi: n must be >= 1");
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

unsigned omega(std::uint64_t n) {
  if (n < 1) throw DomainError("omega: n must be >= 1");
  return static_cast<unsigned>(factorize(n).size());
}

unsigned p_adic_valuation(std::int64_t m, std::uint64_t p) {
  if (m == 0) throw DomainError("p_adic_valuation: m must be nonzero");
  if (!is_prime(p)) throw DomainError("p_adic_valuation: " + std::to_string(p) + " is not prime");
  std::uint64_t v = magnitude(m);
  unsigned r = 0;
  while (v % p == 0) {
    v /= p;
    ++r;
  }
  return r;
}

std::uint64_t mod_inverse(std::int64_t a, std::uint64_t p) {
  if (p < 2) throw DomainError("mod_inverse: modulus must be >= 2");
  if (std::gcd(mod_reduce(a, p), p) != 1) {
    throw NotInvertibleError("mod_inverse: " + std::to_string(a) + " is not invertible modulo " + std::to_string(p));
  }
  return inverse_residue(mod_reduce(a, p), p);
}

std::uint64_t inverse_residue(std::uint64_t a, std::uint64_t p) {
  if (p < 2) throw DomainError("inverse_residue: modulus must be >= 2");
  const std::uint64_t x = a % p;
  if (std::gcd(x, p) != 1) {
    throw NotInvertibleError("inverse_residue: " + std::to_string(a) + " is not invertible modulo " +
                             std::to_string(p));
  }
  // Extended Euclid on (x, p) with signed 128-bit cofactors.
  __int128 old_r = x, r = p, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  __int128 inv = old_s % static_cast<__int128>(p);
  if (inv < 0) inv += p;
  return static_cast<std::uint64_t>(inv);
}

}  // namespace exunit
