#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exunit/verify.hpp"

using namespace exunit;

TEST_CASE("default grid passes") {
  verify::Options options;
  options.n_max = 24;
  options.ks = {2, 3};
  const auto report = verify::run(options);
  CHECK(report.passed());
  REQUIRE(report.suites.size() == 4);
  for (const auto& s : report.suites) CHECK(s.checks > 0);
  CHECK(verify::render(report).find("all suites passed") != std::string::npos);
}

TEST_CASE("n-max 1 passes trivially") {
  verify::Options options;
  options.n_max = 1;
  options.ks = {2};
  CHECK(verify::run(options).passed());
}

TEST_CASE("injected fault is caught with a counterexample") {
  verify::Options options;
  options.n_max = 10;
  options.ks = {2};
  options.inject_fault = true;
  const auto report = verify::run(options);
  CHECK_FALSE(report.passed());
  REQUIRE(report.suites[0].failure);
  const auto& ce = *report.suites[0].failure;
  CHECK(ce.poly == "0,1");
  CHECK(ce.k == 2);
  CHECK(ce.n == 2);
  CHECK(ce.formula != ce.oracle);
  const std::string text = verify::render(report);
  CHECK(text.find("oracle-equivalence: FAIL f=0,1 k=2 c=0 n=2") != std::string::npos);
  CHECK(text.find("verification failed") != std::string::npos);
}

TEST_CASE("output does not depend on worker count") {
  verify::Options options;
  options.n_max = 18;
  options.ks = {2, 3};
  options.max_pairs = 5;
  options.seed = 7;
  options.workers = 1;
  const std::string one = verify::render(verify::run(options));
  options.workers = 4;
  CHECK(verify::render(verify::run(options)) == one);
  options.inject_fault = true;
  const std::string faulty = verify::render(verify::run(options));
  options.workers = 1;
  CHECK(verify::render(verify::run(options)) == faulty);
}
