#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <thread>

#include "exunit/counting.hpp"
#include "exunit/errors.hpp"
#include "exunit/oracle.hpp"
#include "exunit/verify.hpp"

namespace exunit::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t kTableRows = 100'000;

struct GlobalFlags {
  std::string format;
  std::uint64_t seed = 0;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  Budget budget;
};

struct QueryFlags {
  std::string poly;
  unsigned k = 2;
  std::int64_t c = 0;
  std::uint64_t n = 1;
  std::string method = "auto";
};

struct VerifyFlags {
  std::uint64_t n_max = 30;
  std::vector<unsigned> ks = {2, 3};
  std::vector<std::string> polys;
  std::uint64_t max_pairs = 0;
  bool inject_fault = false;
};

class Mismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string pick_format(const std::string& requested, std::initializer_list<const char*> allowed) {
  if (requested.empty()) return *allowed.begin();
  for (const char* a : allowed) {
    if (requested == a) return requested;
  }
  std::string msg = "unsupported --format \"" + requested + "\" for this command (expected one of:";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw DomainError(msg + ")");
}

ordered_json report_json(const QueryFlags& q, const IntPolynomial& f, const CountReport& report) {
  ordered_json per_prime = ordered_json::array();
  for (const auto& rec : report.per_prime) {
    per_prime.push_back({{"p", rec.p}, {"e", rec.e}, {"local_M", to_decimal(rec.local_M)}});
  }
  return ordered_json{{"poly", f.to_string()},
                      {"k", q.k},
                      {"c", q.c},
                      {"n", q.n},
                      {"method_used", route_name(report.method)},
                      {"value", to_decimal(report.value)},
                      {"per_prime", per_prime}};
}

CountReport evaluate(const CountQuery& query, const std::string& method, const Budget& budget) {
  if (method == "auto") return count(query, Strategy::automatic, budget);
  if (method == "general") return count(query, Strategy::general, budget);
  if (method == "linear") return count(query, Strategy::linear, budget);
  if (method == "quadratic") return count(query, Strategy::quadratic, budget);
  if (method == "oracle") return {oracle::oracle_global_count(query, budget.enum_budget), Route::oracle, {}};
  if (method == "oracle-dp") return {oracle::oracle_global_count_dp(query, budget.dp_limit), Route::oracle_dp, {}};
  throw DomainError("unknown --method \"" + method + "\"");
}

int cmd_count(const GlobalFlags& g, const QueryFlags& q, std::ostream& out) {
  const std::string format = pick_format(g.format, {"plain", "json"});
  const IntPolynomial f = IntPolynomial::parse(q.poly);
  const CountReport report = evaluate(CountQuery(f, q.k, q.c, q.n), q.method, g.budget);
  if (format == "json") {
    out << report_json(q, f, report).dump() << "\n";
  } else {
    out << to_decimal(report.value) << "\n";
  }
  return kOk;
}

int cmd_table(const GlobalFlags& g, const QueryFlags& q, std::ostream& out) {
  const std::string format = pick_format(g.format, {"csv", "json"});
  const IntPolynomial f = IntPolynomial::parse(q.poly);
  const CountQuery probe(f, q.k, 0, q.n);
  if (q.n > kTableRows) {
    throw EnumerationTooLargeError("table: n = " + std::to_string(q.n) + " exceeds " + std::to_string(kTableRows) +
                                   " rows");
  }
  const auto rows = count_all_residues(f, q.k, q.n, Strategy::automatic, g.budget);

  BigInt total = 0;
  for (const auto& r : rows) total += r.value;
  const BigInt expected = pow(exunit_set(f, q.n, g.budget.exunit_limit).size(), q.k);
  if (total != expected) {
    throw Mismatch("table: column sums to " + to_decimal(total) + " but |E_f(n)|^k = " + to_decimal(expected));
  }

  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (std::uint64_t c = 0; c < q.n; ++c) arr.push_back({{"c", c}, {"value", to_decimal(rows[c].value)}});
    out << arr.dump() << "\n";
  } else {
    out << "c,value\n";
    for (std::uint64_t c = 0; c < q.n; ++c) out << c << "," << to_decimal(rows[c].value) << "\n";
  }
  return kOk;
}

int cmd_exunits(const GlobalFlags& g, const QueryFlags& q, std::ostream& out) {
  const std::string format = pick_format(g.format, {"plain", "json"});
  const IntPolynomial f = IntPolynomial::parse(q.poly);
  if (q.n < 1) throw DomainError("exunits: n must be >= 1");
  const auto units = exunit_set(f, q.n, g.budget.exunit_limit);
  if (format == "json") {
    out << ordered_json{{"poly", f.to_string()}, {"n", q.n}, {"exunits", units}, {"count", units.size()}}.dump()
        << "\n";
  } else {
    for (std::uint64_t a : units) out << a << "\n";
    out << "#E = " << units.size() << "\n";
  }
  return kOk;
}

int cmd_verify(const GlobalFlags& g, const VerifyFlags& v, std::ostream& out) {
  pick_format(g.format, {"plain"});
  verify::Options options;
  options.n_max = v.n_max;
  options.ks = v.ks;
  for (unsigned k : options.ks) {
    if (k < kMinTerms || k > kMaxTerms) throw DomainError("verify: k = " + std::to_string(k) + " out of range");
  }
  if (!v.polys.empty()) {
    options.polys.clear();
    for (const auto& text : v.polys) options.polys.push_back(IntPolynomial::parse(text));
  }
  options.seed = g.seed;
  options.workers = g.workers;
  options.max_pairs = v.max_pairs;
  options.inject_fault = v.inject_fault;
  options.budget = g.budget;

  const verify::Report report = verify::run(options);
  out << verify::render(report);
  return report.passed() ? kOk : kMismatch;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counts k-tuples of f-exunits modulo n with a prescribed sum", "exunit"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--format", g.format, "plain|json (count, exunits), csv|json (table)");
  app.add_option("--seed", g.seed, "Seed for sampled verification suites");
  app.add_option("--workers", g.workers, "Worker threads for verify")->check(CLI::PositiveNumber);
  app.add_option("--scan-cap", g.budget.scan_cap, "Largest prime scanned for roots")->check(CLI::PositiveNumber);
  app.add_option("--enum-budget", g.budget.enum_budget, "Iteration budget for brute-force oracles")
      ->check(CLI::PositiveNumber);

  QueryFlags q;
  auto add_poly = [&](CLI::App* sub) {
    sub->add_option("--poly", q.poly, "Coefficients in ascending degree, e.g. 0,1,-1 for x - x^2")->required();
  };
  auto add_k = [&](CLI::App* sub) { sub->add_option("--k", q.k, "Number of summands (k >= 2)")->required(); };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", q.n, "Modulus n >= 1")->required(); };

  auto* count_cmd = app.add_subcommand("count", "Count tuples for one (f, k, c, n)");
  add_poly(count_cmd);
  add_k(count_cmd);
  count_cmd->add_option("--c", q.c, "Target residue")->required();
  add_n(count_cmd);
  count_cmd->add_option("--method", q.method, "auto|general|linear|quadratic|oracle|oracle-dp");

  auto* table_cmd = app.add_subcommand("table", "Counts for every c in [0, n)");
  add_poly(table_cmd);
  add_k(table_cmd);
  add_n(table_cmd);

  auto* exunits_cmd = app.add_subcommand("exunits", "List E_f(n)");
  add_poly(exunits_cmd);
  add_n(exunits_cmd);

  VerifyFlags v;
  auto* verify_cmd = app.add_subcommand("verify", "Check the formulas against the brute-force oracles");
  verify_cmd->add_option("--n-max", v.n_max, "Largest modulus in the grid");
  verify_cmd->add_option("--k", v.ks, "Comma-separated k values")->delimiter(',');
  verify_cmd->add_option("--poly", v.polys, "Polynomial (repeatable); default is the built-in family");
  verify_cmd->add_option("--max-pairs", v.max_pairs, "Sample this many coprime pairs (0 = all)");
  verify_cmd->add_flag("--inject-fault", v.inject_fault, "Testing: perturb one local count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*count_cmd) return cmd_count(g, q, out);
    if (*table_cmd) return cmd_table(g, q, out);
    if (*exunits_cmd) return cmd_exunits(g, q, out);
    return cmd_verify(g, v, out);
  } catch (const FastPathInapplicable& e) {
    err << "error: " << e.what() << "\n";
    return kInapplicable;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Mismatch& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kMismatch;
  }
}

}  // namespace exunit::cli
