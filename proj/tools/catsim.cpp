// catsim: command-line front end.
//
// Exit codes: feasibility returns 0/1/2 for pass/warn/fail; verify returns 0
// or 1; every subcommand returns 3 on configuration, IO or protocol errors.

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "catsim/classical.hpp"
#include "catsim/config.hpp"
#include "catsim/errors.hpp"
#include "catsim/feasibility.hpp"
#include "catsim/presets.hpp"
#include "catsim/protocol.hpp"
#include "catsim/sweep.hpp"
#include "catsim/verify.hpp"

namespace fs = std::filesystem;
using namespace catsim;

namespace {

constexpr int kErrorExit = 3;

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string out = ".";
  int workers = 0;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("catsim");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("CATSIM_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

nlohmann::json load_document(const Common& c) {
  nlohmann::json doc = c.config.empty() ? config::scenario_to_json(presets::discussion())
                                        : config::read_json_file(c.config);
  for (const auto& o : c.overrides) config::apply_override(doc, o);
  return doc;
}

std::ofstream open_output(const Common& c, const std::string& name) {
  fs::create_directories(c.out);
  const fs::path p = fs::path(c.out) / name;
  std::ofstream os(p);
  if (!os) throw ConfigError("cannot write " + p.string());
  spdlog::info("writing {}", p.string());
  return os;
}

void add_common(CLI::App* app, Common& c, bool with_override = true) {
  app->add_option("--config", c.config, "Scenario JSON (default: built-in discussion preset)");
  if (with_override)
    app->add_option("--override", c.overrides, "section.key=value, repeatable");
  app->add_option("--out", c.out, "Output directory")->capture_default_str();
  app->add_option("--workers", c.workers, "OpenMP threads (0: runtime default)");
}

void apply_workers(const Common& c) {
  if (c.workers > 0) omp_set_num_threads(c.workers);
}

int cmd_feasibility(const Common& c) {
  const auto scenario = config::scenario_from_json(load_document(c));
  const auto report = feasibility::constraint_check(scenario);
  feasibility::write_table(std::cout, report);
  {
    auto os = open_output(c, "feasibility.txt");
    feasibility::write_table(os, report);
  }
  {
    auto os = open_output(c, "feasibility.csv");
    feasibility::write_csv(os, report);
  }
  return report.exit_code();
}

struct ProtocolArgs {
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  std::optional<double> beta;
  std::optional<double> thermal;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  bool exact_phase = true;
  bool force = false;
  bool cubic = false;
};

int cmd_protocol(const Common& c, const ProtocolArgs& a) {
  apply_workers(c);
  const auto scenario = config::scenario_from_json(load_document(c));
  protocol::ProtocolOptions opt;
  opt.exact_phase = a.exact_phase;
  opt.force = a.force;
  opt.beta = a.beta;
  opt.include_cubic = a.cubic;

  if (a.thermal) {
    const auto summary =
        protocol::run_thermal(scenario, {*a.thermal, a.seed, a.samples}, opt);
    auto os = open_output(c, "protocol_summary.csv");
    protocol::write_summary_csv(os, summary.runs);
    std::cout << fmt::format(
        "samples {}  p_down mean {:.12f}  std {:.3e}  phi_grav mean {:.12f} rad  max dev {:.3e}\n",
        summary.runs.size(), summary.p_down_mean, summary.p_down_std, summary.phi_mean,
        summary.phi_max_dev);
    return 0;
  }

  const auto res = protocol::run_protocol(scenario, {a.alpha_re, a.alpha_im}, opt);
  for (const auto& w : res.warnings) spdlog::warn("{}", w);
  {
    auto os = open_output(c, "protocol_steps.jsonl");
    protocol::write_log_jsonl(os, res.log);
  }
  {
    auto os = open_output(c, "protocol_summary.csv");
    protocol::write_summary_csv(os, {res});
  }
  std::cout << fmt::format("phi_grav {:.12f} rad  p_down {:.12f}  visibility {:.12f}  residual {:.3e}\n",
                           res.phi_grav, res.p_down, res.visibility, res.residual);
  return 0;
}

int cmd_transient(const Common& c) {
  apply_workers(c);
  nlohmann::json doc = c.config.empty()
                           ? nlohmann::json::parse(R"({"transient": {"mass_kg": 1e-15,
                               "omega_rad_per_s": 5e-6, "superposition_size_m": 1e-14}})")
                           : config::read_json_file(c.config);
  for (const auto& o : c.overrides) config::apply_override(doc, o);
  const auto run = config::transient_from_json(doc);
  const double t_end = run.t_end();
  const auto curve = classical::transient_curve(run.spec, t_end, run.points);
  const auto traj = classical::trajectory(run.spec, t_end, run.points);
  {
    auto os = open_output(c, "transient.csv");
    classical::write_transient_csv(os, curve);
  }
  {
    auto os = open_output(c, "trajectory.csv");
    classical::write_trajectory_csv(os, traj);
  }
  std::cout << fmt::format("t_f {:.6e} s  points {}\n", t_end, run.points);
  return 0;
}

int cmd_verify(const Common& c, bool quick, bool flip) {
  apply_workers(c);
  const auto scenario = config::scenario_from_json(load_document(c));
  verify::Options opt;
  opt.quick = quick;
  opt.flip_boost_sign = flip;
  const auto checks = verify::run(scenario, opt);
  verify::write_table(std::cout, checks);
  {
    auto os = open_output(c, "verify.json");
    os << verify::to_json(checks).dump(2) << '\n';
  }
  return verify::all_pass(checks) ? 0 : 1;
}

struct SweepArgs {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  std::size_t points = 11;
  bool log = false;
};

int cmd_sweep(const Common& c, const SweepArgs& a) {
  apply_workers(c);
  const auto doc = load_document(c);
  config::scenario_from_json(doc);  // fail early on a bad base document
  const auto values = sweep::grid(a.from, a.to, a.points, a.log);
  const auto points = sweep::run(doc, a.param, values);
  auto os = open_output(c, "sweep.csv");
  sweep::write_csv(os, a.param, points);
  std::size_t failed = 0;
  for (const auto& p : points)
    if (!p.error.empty()) ++failed;
  std::cout << fmt::format("{} points, {} could not be evaluated\n", points.size(), failed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Hybrid atom-nanoparticle interferometer: design budget, protocol and oracles"};
  app.require_subcommand(1);

  Common feas_c, prot_c, tran_c, ver_c, sw_c;
  ProtocolArgs pa;
  SweepArgs sa;
  bool quick = false;
  bool flip = false;

  auto* feas = app.add_subcommand("feasibility", "Parameter budget and constraint verdicts");
  add_common(feas, feas_c);

  auto* prot = app.add_subcommand("protocol", "Run the interferometric protocol");
  add_common(prot, prot_c);
  prot->add_option("--alpha-re", pa.alpha_re, "Initial coherent amplitude, real part");
  prot->add_option("--alpha-im", pa.alpha_im, "Initial coherent amplitude, imaginary part");
  prot->add_option("--beta", pa.beta, "Displacement parameter (overrides the scenario)");
  prot->add_option("--thermal", pa.thermal, "Sample a thermal state with this mean occupancy");
  prot->add_option("--samples", pa.samples, "Thermal samples")->capture_default_str();
  prot->add_option("--seed", pa.seed, "Sampling seed")->capture_default_str();
  prot->add_flag("--exact-phase,!--approximate-phase", pa.exact_phase,
                 "Undo the displacement with the evolved shift (default)");
  prot->add_flag("--force", pa.force, "Run even if feasibility reports failures");
  prot->add_flag("--include-cubic", pa.cubic, "Add the O(t^3) phase correction");

  auto* tran = app.add_subcommand("transient", "Harmonic vs free-fall phase curves");
  add_common(tran, tran_c);

  auto* ver = app.add_subcommand("verify", "Closed forms against the Fock and RK4 oracles");
  add_common(ver, ver_c);
  ver->add_flag("--quick", quick, "Skip the slow checks");
  ver->add_flag("--inject-boost-sign-flip", flip, "Test fixture: corrupt the boost phase")
      ->group("");

  auto* sw = app.add_subcommand("sweep", "Sweep one scenario key");
  add_common(sw, sw_c);
  sw->add_option("--param", sa.param, "Dotted key, e.g. trap.omega2_rad_per_s")->required();
  sw->add_option("--from", sa.from, "First value")->required();
  sw->add_option("--to", sa.to, "Last value")->required();
  sw->add_option("--points", sa.points, "Number of points")->capture_default_str();
  sw->add_flag("--log", sa.log, "Logarithmic spacing");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*feas) return cmd_feasibility(feas_c);
    if (*prot) return cmd_protocol(prot_c, pa);
    if (*tran) return cmd_transient(tran_c);
    if (*ver) return cmd_verify(ver_c, quick, flip);
    if (*sw) return cmd_sweep(sw_c, sa);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
  }
  return kErrorExit;
}
