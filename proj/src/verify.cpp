#include "exunit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "exunit/counting.hpp"
#include "exunit/oracle.hpp"

namespace exunit::verify {

namespace {

struct Outcome {
  std::uint64_t checks = 0;
  std::optional<Counterexample> failure;
};

using Task = std::function<Outcome()>;

// Executes tasks on a pool; the reported failure is the one with the lowest
// task index, so the result is the same for any worker count.
Outcome run_tasks(const std::vector<Task>& tasks, unsigned workers) {
  std::vector<Outcome> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& ex) {
        results[i].failure = Counterexample{};
        results[i].failure->note = std::string("exception: ") + ex.what();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < count; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();

  Outcome total;
  for (auto& r : results) {
    total.checks += r.checks;
    if (r.failure && !total.failure) total.failure = std::move(r.failure);
  }
  return total;
}

Counterexample mismatch(const IntPolynomial& f, unsigned k, std::int64_t c, std::uint64_t n, const BigInt& formula,
                        const BigInt& oracle, std::string note) {
  return Counterexample{f.to_string(), k, c, n, to_decimal(formula), to_decimal(oracle), std::move(note)};
}

// Adds one to the first prime's local count and rebuilds the value from the
// per-prime records.
BigInt with_flipped_local_count(const CountReport& report, unsigned k) {
  BigInt value = 1;
  for (std::size_t i = 0; i < report.per_prime.size(); ++i) {
    const auto& rec = report.per_prime[i];
    const BigInt M = i == 0 ? rec.local_M + 1 : rec.local_M;
    value *= pow(rec.p, std::uint64_t{rec.e - 1} * (k - 1)) * (pow(rec.p, k - 1) - M);
  }
  return value;
}

std::vector<Task> oracle_tasks(const Options& o) {
  std::vector<Task> tasks;
  bool fault_pending = o.inject_fault;
  for (const auto& f : o.polys) {
    for (unsigned k : o.ks) {
      for (std::uint64_t n = 1; n <= o.n_max; ++n) {
        const bool fault = fault_pending && n >= 2;
        if (fault) fault_pending = false;
        tasks.push_back([&o, f, k, n, fault]() {
          Outcome out;
          const auto formula = count_all_residues(f, k, n, Strategy::general, o.budget);
          const auto expected = oracle::oracle_count_vector_dp(f, k, n, o.budget.dp_limit);
          for (std::uint64_t c = 0; c < n; ++c) {
            ++out.checks;
            const BigInt got = (fault && c == 0) ? with_flipped_local_count(formula[c], k) : formula[c].value;
            if (got != expected[c]) {
              out.failure = mismatch(f, k, static_cast<std::int64_t>(c), n, got, expected[c], "global vs convolution oracle");
              return out;
            }
          }
          return out;
        });
      }
    }
  }
  return tasks;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> coprime_pairs(const Options& o) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t m = 2; m * m < o.n_max; ++m) {
    for (std::uint64_t n = m + 1; m * n <= o.n_max; ++n) {
      if (std::gcd(m, n) == 1) pairs.emplace_back(m, n);
    }
  }
  if (o.max_pairs > 0 && pairs.size() > o.max_pairs) {
    std::mt19937_64 rng(o.seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(o.max_pairs);
    std::sort(pairs.begin(), pairs.end());
  }
  return pairs;
}

std::vector<Task> multiplicativity_tasks(const Options& o) {
  std::vector<Task> tasks;
  const auto pairs = coprime_pairs(o);
  for (const auto& f : o.polys) {
    for (unsigned k : o.ks) {
      for (const auto& [m, n] : pairs) {
        tasks.push_back([&o, f, k, m = m, n = n]() {
          Outcome out;
          const GlobalCounter whole(f, k, m * n, o.budget), left(f, k, m, o.budget), right(f, k, n, o.budget);
          for (std::uint64_t c = 0; c < m * n; ++c) {
            ++out.checks;
            const auto ci = static_cast<std::int64_t>(c);
            const BigInt lhs = whole.count(ci).value;
            const BigInt rhs = left.count(ci).value * right.count(ci).value;
            if (lhs != rhs) {
              out.failure = mismatch(f, k, ci, m * n, lhs, rhs,
                                     "N(mn) vs N(m) N(n) for m = " + std::to_string(m) + ", n = " + std::to_string(n));
              return out;
            }
          }
          return out;
        });
      }
    }
  }
  return tasks;
}

std::vector<Task> conservation_tasks(const Options& o) {
  std::vector<Task> tasks;
  for (const auto& f : o.polys) {
    for (unsigned k : o.ks) {
      for (std::uint64_t n = 1; n <= o.n_max; ++n) {
        tasks.push_back([&o, f, k, n]() {
          Outcome out{1, std::nullopt};
          BigInt total = 0;
          for (const auto& report : count_all_residues(f, k, n, Strategy::automatic, o.budget)) total += report.value;
          const BigInt expected = pow(exunit_set(f, n, o.budget.exunit_limit).size(), k);
          if (total != expected) out.failure = mismatch(f, k, 0, n, total, expected, "sum over c vs |E_f(n)|^k");
          return out;
        });
      }
    }
  }
  return tasks;
}

std::vector<Task> fast_path_tasks(const Options& o) {
  const IntPolynomial units({0, 1});
  const IntPolynomial exceptional({0, 1, -1});
  std::vector<Task> tasks;
  for (const auto& f : o.polys) {
    for (unsigned k : o.ks) {
      for (std::uint64_t n = 1; n <= o.n_max; ++n) {
        tasks.push_back([&o, f, k, n, is_units = f == units, is_exceptional = f == exceptional]() {
          Outcome out;
          const PolynomialForm form = classify(f, n);
          if (std::holds_alternative<General>(form)) return out;
          const GlobalCounter general(f, k, n, o.budget);
          for (std::uint64_t c = 0; c < n; ++c) {
            const auto ci = static_cast<std::int64_t>(c);
            const CountQuery q(f, k, ci, n);
            const BigInt reference = general.count(ci).value;
            auto check = [&](const BigInt& got, const char* note) {
              ++out.checks;
              if (!out.failure && got != reference) out.failure = mismatch(f, k, ci, n, got, reference, note);
            };
            if (std::holds_alternative<LinearCoprime>(form)) {
              check(linear_count(q).value, "linear vs general");
              if (is_units) check(brauer_count(k, ci, n).value, "brauer vs general");
            } else {
              check(quadratic_count(q).value, "quadratic vs general");
              if (is_exceptional) check(yang_zhao_count(k, ci, n).value, "yang-zhao vs general");
            }
            if (out.failure) return out;
          }
          return out;
        });
      }
    }
  }
  return tasks;
}

}  // namespace

std::vector<IntPolynomial> default_family() {
  return {IntPolynomial({0, 1}),  IntPolynomial({1, 1}),    IntPolynomial({3, 2}),    IntPolynomial({0, 1, -1}),
          IntPolynomial({1, 0, 1}), IntPolynomial({1, 1, 1}), IntPolynomial({1, 1, 0, 1}), IntPolynomial({1, 5, 6})};
}

bool Report::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return !s.failure; });
}

Report run(const Options& options) {
  const std::pair<const char*, std::vector<Task> (*)(const Options&)> suites[] = {
      {"oracle-equivalence", oracle_tasks},
      {"multiplicativity", multiplicativity_tasks},
      {"conservation", conservation_tasks},
      {"fast-path-agreement", fast_path_tasks},
  };
  Report report;
  for (const auto& [name, build] : suites) {
    Outcome outcome = run_tasks(build(options), options.workers);
    report.suites.push_back(SuiteResult{name, outcome.checks, std::move(outcome.failure)});
  }
  return report;
}

std::string render(const Report& report) {
  std::ostringstream os;
  for (const auto& s : report.suites) {
    if (!s.failure) {
      os << s.name << ": pass (" << s.checks << " checks)\n";
      continue;
    }
    const auto& ce = *s.failure;
    os << s.name << ": FAIL f=" << ce.poly << " k=" << ce.k << " c=" << ce.c << " n=" << ce.n
       << " formula=" << ce.formula << " oracle=" << ce.oracle;
    if (!ce.note.empty()) os << " (" << ce.note << ")";
    os << "\n";
  }
  os << (report.passed() ? "all suites passed\n" : "verification failed\n");
  return os.str();
}

}  // namespace exunit::verify
