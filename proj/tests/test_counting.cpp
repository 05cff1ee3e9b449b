#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "exunit/counting.hpp"
#include "exunit/errors.hpp"
#include "exunit/oracle.hpp"
#include "exunit/verify.hpp"

using namespace exunit;

namespace {

const IntPolynomial kX({0, 1});
const IntPolynomial kExceptional({0, 1, -1});
const IntPolynomial kSquarePlusOne({1, 0, 1});
const IntPolynomial kCubic({1, 1, 0, 1});

const std::uint64_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13};

// #{t in S^k : sum t = c (mod p)} by direct enumeration.
std::uint64_t tuples_summing_to(const std::vector<std::uint64_t>& s, unsigned k, std::uint64_t c, std::uint64_t p) {
  if (s.empty()) return 0;
  std::vector<std::size_t> idx(k, 0);
  std::uint64_t hits = 0;
  while (true) {
    std::uint64_t sum = 0;
    for (std::size_t i : idx) sum += s[i];
    hits += sum % p == c % p;
    unsigned i = 0;
    while (i < k && ++idx[i] == s.size()) idx[i++] = 0;
    if (i == k) return hits;
  }
}

std::vector<std::uint64_t> complement(const std::vector<std::uint64_t>& roots, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < p; ++x) {
    if (std::find(roots.begin(), roots.end(), x) == roots.end()) out.push_back(x);
  }
  return out;
}

// Bracket of the two-root evaluation: p * sum_{(a-b) j = c - b k} C(k, j) + (2 - p)^k - 2^k.
BigInt two_root_bracket(std::uint64_t a, std::uint64_t b, unsigned k, std::uint64_t c, std::uint64_t p) {
  BigInt sum = 0;
  const std::int64_t pi = static_cast<std::int64_t>(p);
  for (unsigned j = 0; j <= k; ++j) {
    const std::int64_t lhs = (static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b)) * j;
    const std::int64_t rhs = static_cast<std::int64_t>(c) - static_cast<std::int64_t>(b) * k;
    if (((lhs - rhs) % pi + pi) % pi == 0) sum += binomial(k, j);
  }
  return BigInt(static_cast<long>(p)) * sum + pow(BigInt(2 - static_cast<long>(p)), k) - pow(std::uint64_t{2}, k);
}

// n^(k-1) prod (1 - M_p / p^(k-1)) in exact rationals.
BigRational rational_product(const IntPolynomial& f, unsigned k, std::int64_t c, std::uint64_t n) {
  BigRational out(pow(n, k - 1));
  for (const auto& [p, e] : factorize(n)) {
    BigRational term(local_count(f, k, c, p).M, pow(p, k - 1));
    term.canonicalize();
    out *= BigRational(1) - term;
  }
  out.canonicalize();
  return out;
}

// T by inclusion-exclusion over which of the k positions are forced into R:
// T = sum_{s<k} (-1)^s C(k,s) r^s p^(k-s-1) + (-1)^k W.
BigInt avoiding_by_inclusion_exclusion(std::uint64_t p, std::uint64_t r, const BigInt& W, unsigned k) {
  BigInt out = 0;
  for (unsigned s = 0; s < k; ++s) {
    const BigInt term = binomial(k, s) * pow(r, s) * pow(p, k - s - 1);
    out += (s % 2 == 0) ? term : BigInt(-term);
  }
  return out + ((k % 2 == 0) ? W : BigInt(-W));
}

}  // namespace

TEST_CASE("CountQuery validation") {
  CHECK_THROWS_AS(CountQuery(kX, 1, 0, 5), DomainError);
  CHECK_THROWS_AS(CountQuery(kX, 2, 0, 0), DomainError);
  CHECK_THROWS_AS(CountQuery(kX, kMaxTerms + 1, 0, 5), DomainError);
  CHECK_NOTHROW(CountQuery(kX, 2, -17, 5));
}

TEST_CASE("root_composition_count") {
  CHECK(root_composition_count({}, 2, 0, 5) == 0);
  CHECK(root_composition_count(std::vector<std::uint64_t>{0, 1}, 2, 1, 5) == 2);
  CHECK(root_composition_count(std::vector<std::uint64_t>{2}, 3, 1, 5) == 1);
  CHECK_THROWS_AS(root_composition_count(std::vector<std::uint64_t>{1, 1}, 2, 0, 5), DomainError);
  CHECK_THROWS_AS(root_composition_count(std::vector<std::uint64_t>{5}, 2, 0, 5), DomainError);
  CHECK_THROWS_AS(root_composition_count(std::vector<std::uint64_t>{0, 1, 2}, 1000, 0, 101, 1000),
                  EnumerationTooLargeError);

  SUBCASE("two roots reduce to the binomial sum") {
    for (std::uint64_t p : kSmallPrimes) {
      for (unsigned k = 1; k <= 6; ++k) {
        for (std::uint64_t a = 0; a < p; ++a) {
          for (std::uint64_t b = 0; b < p; ++b) {
            if (a == b) continue;
            for (std::uint64_t c = 0; c < p; ++c) {
              BigInt expected = 0;
              for (unsigned j = 0; j <= k; ++j) {
                // j copies of a and k - j copies of b
                if ((a * j + b * (k - j)) % p == c) expected += binomial(k, j);
              }
              REQUIRE(root_composition_count(std::vector<std::uint64_t>{a, b}, k, c, p) == expected);
            }
          }
        }
      }
    }
  }

  SUBCASE("matches enumeration of R^k for larger root sets") {
    const std::vector<std::vector<std::uint64_t>> sets = {{0, 3, 4}, {1, 2, 5, 6}, {0, 1, 2, 3, 4, 5, 6}, {6}};
    for (const auto& roots : sets) {
      for (unsigned k = 1; k <= 5; ++k) {
        for (std::uint64_t c = 0; c < 7; ++c) {
          REQUIRE(root_composition_count(roots, k, c, 7) == tuples_summing_to(roots, k, c, 7));
        }
      }
    }
  }
}

TEST_CASE("count_avoiding_tuples") {
  CHECK(count_avoiding_tuples(5, std::vector<std::uint64_t>{0, 1}, 2, 1) == 3);
  CHECK(count_avoiding_tuples(3, {}, 2, 0) == 3);
  CHECK(count_avoiding_tuples(2, std::vector<std::uint64_t>{0, 1}, 2, 0) == 0);

  SUBCASE("enumeration of the complement") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
      for (std::uint64_t mask = 0; mask < (1u << p); mask += (p > 5 ? 5 : 1)) {
        std::vector<std::uint64_t> roots;
        for (std::uint64_t x = 0; x < p; ++x) {
          if (mask >> x & 1) roots.push_back(x);
        }
        for (unsigned k = 1; k <= 4; ++k) {
          for (std::uint64_t c = 0; c < p; ++c) {
            REQUIRE(count_avoiding_tuples(p, roots, k, c) == tuples_summing_to(complement(roots, p), k, c, p));
          }
        }
      }
    }
  }

  SUBCASE("two roots agree with the bracketed closed form") {
    for (std::uint64_t p : kSmallPrimes) {
      for (unsigned k = 1; k <= 6; ++k) {
        for (std::uint64_t a = 0; a < p; ++a) {
          for (std::uint64_t b = 0; b < p; ++b) {
            if (a == b) continue;
            for (std::uint64_t c = 0; c < p; ++c) {
              const BigInt bracket = two_root_bracket(a, b, k, c, p);
              REQUIRE(bracket % static_cast<long>(p) == 0);
              const BigInt closed = (k % 2 == 0 ? 1 : -1) * bracket / static_cast<long>(p);
              REQUIRE(count_avoiding_tuples(p, std::vector<std::uint64_t>{a, b}, k, c) == closed);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("local_count") {
  CHECK(local_count(kX, 2, 1, 3).M == 2);
  CHECK(local_count(kExceptional, 2, 1, 5).M == 2);
  CHECK(local_count(kSquarePlusOne, 2, 0, 3).M == 0);

  const auto profile = local_count(kExceptional, 2, 1, 5);
  CHECK(profile.roots == std::vector<std::uint64_t>{0, 1});
  CHECK(profile.r == 2);
  CHECK(profile.W == 2);
  CHECK(profile.T == 3);

  SUBCASE("degenerate primes") {
    const auto none = local_count(kSquarePlusOne, 3, 2, 3);
    CHECK(none.r == 0);
    CHECK(none.M == 0);
    const auto all = local_count(IntPolynomial({0, 7}), 3, 2, 7);
    CHECK(all.r == 7);
    CHECK(all.M == 49);
    CHECK(all.T == 0);
    // f vanishes identically modulo a prime far above the scan cap.
    const std::uint64_t big = 1'000'000'007ULL;
    const auto huge = local_count(IntPolynomial({0, static_cast<std::int64_t>(big)}), 2, 0, big, Budget{.scan_cap = 100});
    CHECK(huge.r == big);
    CHECK(huge.M == BigInt(static_cast<long>(big)));
  }

  SUBCASE("invariants against the definitional scan") {
    for (const auto& f : verify::default_family()) {
      for (std::uint64_t p : kSmallPrimes) {
        for (unsigned k = 2; k <= 5; ++k) {
          for (std::uint64_t c = 0; c < p; ++c) {
            const auto prof = local_count(f, k, static_cast<std::int64_t>(c), p);
            REQUIRE(prof.M == oracle::oracle_local_count(f, k, static_cast<std::int64_t>(c), p));
            REQUIRE(prof.M == pow(p, k - 1) - prof.T);
            REQUIRE(prof.W >= 0);
            REQUIRE(prof.W <= pow(prof.r, k));
            REQUIRE(prof.T >= 0);
            REQUIRE(prof.T <= pow(p - prof.r, k));
            REQUIRE(prof.M <= pow(p, k - 1));
          }
        }
      }
    }
  }

  SUBCASE("large primes without a scan") {
    const std::uint64_t p = 1'000'000'007ULL;
    const Budget tight{.scan_cap = 1000};
    CHECK(local_count(kExceptional, 3, 5, p, tight).r == 2);
    CHECK(local_count(IntPolynomial({3, 2}), 3, 5, p, tight).roots ==
          std::vector<std::uint64_t>{(p - 3) * mod_inverse(2, p) % p});
    CHECK_THROWS_AS(local_count(kCubic, 3, 5, p, tight), PrimeTooLargeError);
  }

  SUBCASE("inclusion-exclusion cross-check at a prime near 10^6") {
    const std::uint64_t p = 999'983;
    for (unsigned k : {2u, 3u, 4u, 7u}) {
      for (std::int64_t c : {0, 1, 12345, -4}) {
        const auto prof = local_count(kCubic, k, c, p);
        REQUIRE(prof.T == avoiding_by_inclusion_exclusion(p, prof.r, prof.W, k));
      }
    }
  }
}

TEST_CASE("global_count") {
  CHECK(global_count(CountQuery(kExceptional, 2, 1, 5)).value == 3);
  CHECK(global_count(CountQuery(kExceptional, 2, 0, 6)).value == 0);
  CHECK(global_count(CountQuery(kX, 2, 0, 6)).value == 2);
  for (const auto& f : verify::default_family()) {
    for (unsigned k = 2; k <= 5; ++k) {
      for (std::int64_t c : {-3, 0, 1, 7}) {
        const auto report = global_count(CountQuery(f, k, c, 1));
        REQUIRE(report.value == 1);
        REQUIRE(report.per_prime.empty());
      }
    }
  }

  SUBCASE("report invariants") {
    const auto report = global_count(CountQuery(kCubic, 3, 4, 2 * 2 * 3 * 31));
    BigInt product = 1;
    for (const auto& rec : report.per_prime) product *= rec.factor;
    CHECK(report.value == product);
    CHECK(report.method == Route::general);
    CHECK(report.per_prime.size() == 3);
    CHECK(report.per_prime[0].e == 2);
  }

  SUBCASE("integer regrouping equals the rational product") {
    for (const auto& f : verify::default_family()) {
      for (unsigned k = 2; k <= 4; ++k) {
        for (std::uint64_t n = 1; n <= 90; ++n) {
          for (std::int64_t c : {0, 1, 5, -2}) {
            const BigRational expected = rational_product(f, k, c, n);
            REQUIRE(expected.get_den() == 1);
            REQUIRE(global_count(CountQuery(f, k, c, n)).value == expected.get_num());
          }
        }
      }
    }
  }

  SUBCASE("negative and large c are reduced") {
    for (std::uint64_t n : {7, 12, 35}) {
      for (std::int64_t c = -40; c <= 40; ++c) {
        const std::int64_t reduced = static_cast<std::int64_t>(mod_reduce(c, n));
        REQUIRE(global_count(CountQuery(kCubic, 3, c, n)).value == global_count(CountQuery(kCubic, 3, reduced, n)).value);
      }
    }
  }

  SUBCASE("r = p at some prime forces zero") {
    // x^2 - x vanishes identically mod 2.
    CHECK(global_count(CountQuery(IntPolynomial({0, -1, 1}), 3, 1, 2 * 9 * 5)).value == 0);
    CHECK(global_count(CountQuery(IntPolynomial({0, 6}), 2, 1, 3)).value == 0);
  }
}

TEST_CASE("linear_count") {
  CHECK(linear_count(CountQuery(kX, 2, 0, 6)).value == 2);
  CHECK(linear_count(CountQuery(kX, 3, 0, 5)).value == 12);
  CHECK(linear_count(CountQuery(kX, 2, 1, 5)).value == 3);
  CHECK(linear_count(CountQuery(kX, 2, 1, 5)).method == Route::linear);
  CHECK_THROWS_AS(linear_count(CountQuery(IntPolynomial({3, 2}), 2, 1, 6)), FastPathInapplicable);
  CHECK_THROWS_AS(linear_count(CountQuery(kExceptional, 2, 1, 5)), FastPathInapplicable);

  for (std::int64_t a : {1, 2, -3, 5, 7}) {
    for (std::int64_t b : {0, 1, -4, 9}) {
      const IntPolynomial f({b, a});
      for (unsigned k = 2; k <= 5; ++k) {
        for (std::uint64_t n = 1; n <= 120; ++n) {
          if (std::gcd(static_cast<std::uint64_t>(std::abs(a)), n) != 1) continue;
          for (std::int64_t c : {0, 1, 3, -1}) {
            const CountQuery q(f, k, c, n);
            const auto fast = linear_count(q);
            const auto general = global_count(q);
            REQUIRE(fast.value == general.value);
            for (std::size_t i = 0; i < fast.per_prime.size(); ++i) {
              REQUIRE(fast.per_prime[i].local_M == general.per_prime[i].local_M);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("quadratic_count") {
  CHECK(quadratic_count(CountQuery(kExceptional, 2, 1, 5)).value == 3);
  CHECK(quadratic_count(CountQuery(kExceptional, 2, 0, 5)).value == 2);
  CHECK(quadratic_count(CountQuery(kExceptional, 2, 0, 5)).method == Route::quadratic);
  CHECK_THROWS_AS(quadratic_count(CountQuery(kSquarePlusOne, 2, 0, 5)), FastPathInapplicable);
  CHECK_THROWS_AS(quadratic_count(CountQuery(IntPolynomial({1, 5, 6}), 2, 0, 10)), FastPathInapplicable);

  for (unsigned k = 2; k <= 4; ++k) {
    for (std::uint64_t m = 1; m <= 40; ++m) {
      for (std::int64_t c = 0; c < 5; ++c) {
        REQUIRE(quadratic_count(CountQuery(kExceptional, k, c, 2 * m)).value == 0);
      }
      REQUIRE(exunit_set(kExceptional, 2 * m).empty());
    }
  }

  SUBCASE("agrees with the general route on many factorizations") {
    const std::vector<IntPolynomial> quads = {kExceptional, IntPolynomial({1, 5, 6}), IntPolynomial({-4, 0, 1}),
                                              IntPolynomial({6, -8, 2}), IntPolynomial({-15, 2, 8})};
    for (const auto& f : quads) {
      for (unsigned k = 2; k <= 6; ++k) {
        for (std::uint64_t n = 1; n <= 150; ++n) {
          if (!std::holds_alternative<SplitQuadratic>(classify(f, n))) continue;
          for (std::int64_t c : {0, 1, 2, 11, -5}) {
            const CountQuery q(f, k, c, n);
            REQUIRE(quadratic_count(q).value == global_count(q).value);
          }
        }
      }
    }
  }

  SUBCASE("value is invariant under equivalent factor parameters") {
    // 2(2x + 3)(x - 1) = 4x^2 + 2x - 6
    const IntPolynomial f({-6, 2, 4});
    const std::vector<SplitQuadratic> equivalent = {
        {2, -3, 2, 2}, {2, 2, 2, -3}, {-2, 3, -2, -2}, {4, -6, 1, 1}, {1, 1, 4, -6}, {-1, -1, -4, 6}};
    for (std::uint64_t n : {1, 7, 11, 77, 143, 49}) {
      for (std::int64_t c = -3; c < 10; ++c) {
        const CountQuery q(f, 3, c, n);
        const BigInt reference = global_count(q).value;
        for (const auto& params : equivalent) REQUIRE(quadratic_count(q, params).value == reference);
      }
    }
    CHECK_THROWS_AS(quadratic_count(CountQuery(f, 3, 0, 7), SplitQuadratic{1, 1, 2, 6}), FastPathInapplicable);
    CHECK_THROWS_AS(quadratic_count(CountQuery(f, 3, 0, 6), SplitQuadratic{2, -3, 2, 2}), FastPathInapplicable);
  }
}

TEST_CASE("brauer_count") {
  CHECK(brauer_count(2, 0, 6).value == 2);
  CHECK(brauer_count(2, 1, 5).value == 3);
  CHECK(brauer_count(2, 0, 1).value == 1);
  CHECK(brauer_count(2, 0, 1).method == Route::brauer);
  for (std::uint64_t p : {2, 3, 5, 7, 97, 1'000'003}) CHECK(brauer_count(2, 0, p).value == BigInt(static_cast<long>(p - 1)));

  for (unsigned k = 2; k <= 6; ++k) {
    for (std::uint64_t n = 1; n <= 150; ++n) {
      for (std::int64_t c : {0, 1, 2, 6, -7}) {
        const auto b = brauer_count(k, c, n);
        REQUIRE(b.value == linear_count(CountQuery(kX, k, c, n)).value);
        BigInt product = 1;
        for (const auto& rec : b.per_prime) product *= rec.factor;
        REQUIRE(product == b.value);
      }
    }
  }
}

TEST_CASE("yang_zhao_count") {
  CHECK(yang_zhao_count(2, 1, 5).value == 3);
  CHECK(yang_zhao_count(2, 1, 6).value == 0);
  CHECK(yang_zhao_count(3, 0, 5).value == 6);
  CHECK(yang_zhao_count(3, 0, 1).value == 1);

  for (unsigned k = 2; k <= 5; ++k) {
    for (std::uint64_t n = 1; n <= 200; ++n) {
      for (std::uint64_t c = 0; c < n; ++c) {
        const auto ci = static_cast<std::int64_t>(c);
        REQUIRE(yang_zhao_count(k, ci, n).value == quadratic_count(CountQuery(kExceptional, k, ci, n)).value);
      }
    }
  }
}

TEST_CASE("count dispatcher") {
  const auto linear = count(CountQuery(kX, 2, 0, 6));
  CHECK(linear.value == 2);
  CHECK(linear.method == Route::linear);

  const auto general = count(CountQuery(kSquarePlusOne, 2, 0, 5));
  CHECK(general.method == Route::general);
  CHECK(general.value == oracle::oracle_global_count(CountQuery(kSquarePlusOne, 2, 0, 5)));

  CHECK(count(CountQuery(kExceptional, 2, 1, 5), Strategy::general).value == 3);
  CHECK(count(CountQuery(kExceptional, 2, 1, 5)).method == Route::quadratic);
  CHECK_THROWS_AS(count(CountQuery(kSquarePlusOne, 2, 0, 5), Strategy::linear), FastPathInapplicable);
  CHECK_THROWS_AS(count(CountQuery(kX, 2, 0, 5), Strategy::quadratic), FastPathInapplicable);

  const auto sweep = count_all_residues(kExceptional, 2, 5);
  std::vector<BigInt> values;
  for (const auto& r : sweep) values.push_back(r.value);
  CHECK(values == std::vector<BigInt>{2, 3, 2, 1, 1});
}

TEST_CASE("conservation and bounds") {
  for (const auto& f : verify::default_family()) {
    for (unsigned k = 2; k <= 4; ++k) {
      for (std::uint64_t n = 1; n <= 70; ++n) {
        const BigInt all = pow(exunit_set(f, n).size(), k);
        BigInt total = 0;
        for (const auto& r : count_all_residues(f, k, n, Strategy::general)) {
          REQUIRE(r.value >= 0);
          REQUIRE(r.value <= all);
          total += r.value;
        }
        REQUIRE(total == all);
      }
    }
  }
}
