#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace latcensus::verify {

struct Check {
  std::string id;
  std::function<bool()> run;
};

struct Outcome {
  std::vector<std::string> passed;
  std::optional<std::string> failed;  // id of the first failing check
  bool ok() const { return !failed; }
};

// Suites: arith, constants, lattice, formulas, census, groups, all.
std::vector<std::string> suite_names();
// Empty when the name is unknown.
std::vector<Check> suite(const std::string& name);

/// Runs checks in order and stops at the first failure. A check that
/// throws counts as failed. Progress lines go to `log` when given.
Outcome run(const std::vector<Check>& checks, std::ostream* log = nullptr);

}  // namespace latcensus::verify
