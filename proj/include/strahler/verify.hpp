#pragma once

#include <cstddef>
#include <string>
#include <vector>

// The reproducible test suite behind the `verify` command: brute-force
// enumeration against generating functions, recursions against closed
// forms, and the u-domain identities.
namespace strahler::verify {

struct Options {
  std::size_t oracle_max_size = 12;  // brute-force enumeration up to this size
  std::size_t order = 200;           // truncation order of the identity checks
  std::size_t formula_max = 500;     // [z^n]A against 3(2n)!/((n-1)!(n+2)!)
  // Test hook: perturbs [z^4] T_2 of the closed form before it is compared
  // with the brute-force counts.
  bool inject_fault = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  bool passed() const;
  const CheckResult* first_failure() const;
};

Report run(const Options& options);

}  // namespace strahler::verify
