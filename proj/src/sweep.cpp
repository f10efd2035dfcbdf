#include "catsim/sweep.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "catsim/config.hpp"
#include "catsim/csv.hpp"
#include "catsim/feasibility.hpp"
#include "catsim/protocol.hpp"

namespace catsim::sweep {

std::vector<double> grid(double from, double to, std::size_t points, bool log) {
  if (points == 0) throw std::invalid_argument("sweep needs at least one point");
  if (log && !(from > 0.0 && to > 0.0))
    throw std::invalid_argument("logarithmic sweep needs positive bounds");
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = log ? std::exp(std::log(from) + f * (std::log(to) - std::log(from)))
                 : from + f * (to - from);
  }
  return out;
}

namespace {

Point evaluate(const nlohmann::json& doc, const std::string& key, double value,
               std::size_t index) {
  Point p;
  p.index = index;
  p.value = value;
  try {
    nlohmann::json local = doc;
    config::apply_override(local, fmt::format("{}={:.17g}", key, value));
    const auto scenario = config::scenario_from_json(local);
    const auto report = feasibility::constraint_check(scenario);
    p.dx = report.dx;
    p.phi_grav = report.phi_grav;
    p.grade = report.exit_code();
    protocol::ProtocolOptions opt;
    opt.force = true;
    opt.keep_log = false;
    const auto run = protocol::run_protocol(scenario, 0.0, opt);
    p.phi_run = run.phi_grav;
    p.p_down = run.p_down;
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

}  // namespace

std::vector<Point> run(const nlohmann::json& doc, const std::string& key,
                       const std::vector<double>& values) {
  std::vector<Point> out(values.size());
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = evaluate(doc, key, values[i], static_cast<std::size_t>(i));
  return out;
}

std::vector<Point> run_serial(const nlohmann::json& doc, const std::string& key,
                              const std::vector<double>& values) {
  std::vector<Point> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back(evaluate(doc, key, values[i], i));
  return out;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

void write_csv(std::ostream& os, const std::string& key, const std::vector<Point>& points) {
  os << "index," << key << ",dx_m,phi_grav_rad,phi_run_rad,p_down,grade,error\n";
  for (const auto& p : points) {
    os << p.index << ',' << csv::num(p.value) << ',' << csv::num(p.dx) << ','
       << csv::num(p.phi_grav) << ',' << csv::num(p.phi_run) << ',' << csv::num(p.p_down) << ','
       << p.grade << ',' << quoted(p.error) << '\n';
  }
}

}  // namespace catsim::sweep
