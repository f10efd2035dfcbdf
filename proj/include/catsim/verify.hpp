#pragma once

// Oracle-equivalence suite: every closed form checked against the
// number-basis simulator or the RK4 integrator, with measured deviations.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "catsim/params.hpp"

namespace catsim::verify {

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct Options {
  bool quick = false;
  // Test fixture: negate the boost phase of the quadratic expansion before
  // comparing it with the exact evolution.
  bool flip_boost_sign = false;
};

std::vector<Check> run(const PhysicalScenario& scenario, const Options& opt = {});

bool all_pass(const std::vector<Check>& checks);
nlohmann::json to_json(const std::vector<Check>& checks);
void write_table(std::ostream& os, const std::vector<Check>& checks);

}  // namespace catsim::verify
