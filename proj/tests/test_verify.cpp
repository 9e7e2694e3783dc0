#include <set>

#include <doctest.h>

#include "strahler/verify.hpp"

using namespace strahler;

namespace {

std::set<std::string> names(const verify::Report& report) {
  std::set<std::string> out;
  for (const auto& c : report.checks) out.insert(c.name);
  return out;
}

}  // namespace

TEST_CASE("small suite passes") {
  verify::Options options;
  options.oracle_max_size = 8;
  options.order = 60;
  options.formula_max = 100;
  const auto report = verify::run(options);
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
  CHECK(report.passed());
  CHECK(report.first_failure() == nullptr);
  CHECK(names(report).count("T-closed-vs-oracle") == 1);
  CHECK(names(report).count("identity-one-plus-zA") == 1);

  bool p0_note = false;
  for (const auto& note : report.notes) p0_note |= note.find("[1, 3, 3, 1]") != std::string::npos;
  CHECK(p0_note);
}

TEST_CASE("fault injection names the failing identity") {
  verify::Options options;
  options.oracle_max_size = 6;
  options.order = 40;
  options.formula_max = 50;
  options.inject_fault = true;
  const auto report = verify::run(options);
  CHECK_FALSE(report.passed());
  const auto* failure = report.first_failure();
  REQUIRE(failure != nullptr);
  CHECK(failure->name == "T-closed-vs-oracle");
  CHECK(failure->detail.find("[z^4]T_2") != std::string::npos);
}

TEST_CASE("smaller oracle runs the same checks") {
  verify::Options small;
  small.oracle_max_size = 4;
  small.order = 30;
  small.formula_max = 30;
  verify::Options larger = small;
  larger.oracle_max_size = 7;
  CHECK(names(verify::run(small)) == names(verify::run(larger)));
}
