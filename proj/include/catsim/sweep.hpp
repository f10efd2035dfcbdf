#pragma once

// One-parameter sweeps over a scenario document. Points are evaluated in
// parallel and reported in input order.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace catsim::sweep {

struct Point {
  std::size_t index = 0;
  double value = 0.0;
  double dx = 0.0;
  double phi_grav = 0.0;   // feasibility estimate m g_E Δx Δt/ħ
  double phi_run = 0.0;    // extracted from the protocol run
  double p_down = 0.0;
  int grade = 0;           // 0 pass, 1 warn, 2 fail
  std::string error;       // non-empty when the point could not be evaluated
};

/// Evenly spaced values, or logarithmically spaced when `log` is set.
std::vector<double> grid(double from, double to, std::size_t points, bool log = false);

/// `key` is a dotted path into the document ("trap.omega2_rad_per_s").
std::vector<Point> run(const nlohmann::json& doc, const std::string& key,
                       const std::vector<double>& values);
std::vector<Point> run_serial(const nlohmann::json& doc, const std::string& key,
                              const std::vector<double>& values);

void write_csv(std::ostream& os, const std::string& key, const std::vector<Point>& points);

}  // namespace catsim::sweep
