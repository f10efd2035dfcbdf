#include "catsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "catsim/csv.hpp"
#include "catsim/errors.hpp"
#include "catsim/feasibility.hpp"

namespace catsim::protocol {

const char* to_string(Level l) { return l == Level::Down ? "down" : "up"; }

HybridState HybridState::product(Level level, cplx alpha) {
  HybridState s;
  s.branches.push_back({level, {alpha, 1.0}});
  return s;
}

namespace {

double level_norm(const HybridState& s, std::optional<Level> only) {
  double total = 0.0;
  for (const auto& bi : s.branches) {
    if (only && bi.level != *only) continue;
    for (const auto& bj : s.branches) {
      if (bj.level != bi.level) continue;
      total += (std::conj(bi.motion.weight) * bj.motion.weight *
                gaussian::coherent_overlap(bi.motion.alpha, bj.motion.alpha))
                   .real();
    }
  }
  return total;
}

}  // namespace

double HybridState::norm_squared() const { return level_norm(*this, std::nullopt); }

double HybridState::population(Level level) const { return level_norm(*this, level); }

std::optional<cplx> HybridState::level_weight(Level level) const {
  std::optional<cplx> alpha;
  cplx w = 0.0;
  for (const auto& b : branches) {
    if (b.level != level) continue;
    if (alpha && std::abs(*alpha - b.motion.alpha) > 0.0) return std::nullopt;
    alpha = b.motion.alpha;
    w += b.motion.weight;
  }
  if (!alpha) return cplx(0.0, 0.0);
  return w;
}

const Branch* HybridState::find(Level level) const {
  for (const auto& b : branches)
    if (b.level == level) return &b;
  return nullptr;
}

HybridState merge(const HybridState& s, double tol) {
  HybridState out;
  for (const auto& b : s.branches) {
    auto it = std::find_if(out.branches.begin(), out.branches.end(), [&](const Branch& o) {
      return o.level == b.level && std::abs(o.motion.alpha - b.motion.alpha) <= tol;
    });
    if (it == out.branches.end()) out.branches.push_back(b);
    else it->motion.weight += b.motion.weight;
  }
  return out;
}

HybridState pi_half_pulse(const HybridState& s, double laser_phase) {
  const double r = 1.0 / std::sqrt(2.0);
  HybridState out;
  for (const auto& b : s.branches) {
    const cplx w = b.motion.weight;
    const cplx a = b.motion.alpha;
    if (b.level == Level::Down) {
      out.branches.push_back({Level::Down, {a, r * w}});
      out.branches.push_back({Level::Up, {a, r * std::polar(1.0, laser_phase) * w}});
    } else {
      out.branches.push_back({Level::Down, {a, -r * std::polar(1.0, -laser_phase) * w}});
      out.branches.push_back({Level::Up, {a, r * w}});
    }
  }
  return merge(out);
}

HybridState pi_pulse(const HybridState& s, double laser_phase) {
  HybridState out;
  for (const auto& b : s.branches) {
    const cplx w = b.motion.weight;
    if (b.level == Level::Down)
      out.branches.push_back({Level::Up, {b.motion.alpha, std::polar(1.0, laser_phase) * w}});
    else
      out.branches.push_back({Level::Down, {b.motion.alpha, -std::polar(1.0, -laser_phase) * w}});
  }
  return merge(out);
}

HybridState displacement_beam(const HybridState& s, cplx shift, Level target) {
  HybridState out = s;
  for (auto& b : out.branches)
    if (b.level == target) b.motion = gaussian::displace(b.motion, shift);
  return out;
}

FreeFallResult free_fall_segment(const HybridState& s, const PhysicalScenario& scenario,
                                 double dt, const FreeFallOptions& opt) {
  const double weight = scenario.nanoparticle.mass * scenario.constants.g_E;
  if (scenario.trap.radiation_force >= 0.1 * weight) {
    throw ProtocolError("not in free-fall regime: radiation force " +
                        std::to_string(scenario.trap.radiation_force) + " N is not small against m g_E = " +
                        std::to_string(weight) + " N");
  }
  const auto& trap = scenario.trap;
  const double g2 = derive(scenario, trap.omega2).grav_coupling;
  FreeFallResult out;
  out.state = s;
  for (auto& b : out.state.branches) {
    const auto ev = gaussian::evolve_quench(b.motion, trap.omega1, trap.omega2, g2, dt, opt.guard);
    b.motion = ev.branch;
    if (ev.guard.warning) out.warnings.push_back(*ev.guard.warning);
  }
  return out;
}

Readout readout(const HybridState& s) {
  Readout r;
  const HybridState m = merge(s);
  const double total = m.norm_squared();
  r.p_down = m.population(Level::Down) / total;
  for (std::size_t i = 0; i < m.branches.size(); ++i) {
    for (std::size_t j = i + 1; j < m.branches.size(); ++j) {
      const cplx a = m.branches[i].motion.alpha;
      const cplx b = m.branches[j].motion.alpha;
      r.residual = std::max(r.residual, std::abs(a - b));
      r.visibility = std::min(r.visibility, std::abs(gaussian::coherent_overlap(a, b)));
    }
  }
  r.reduced_visibility = r.residual > 1e-6;
  return r;
}

double displacement_parameter(const PhysicalScenario& s) {
  const double dx = s.beam.superposition_size.value_or(
      feasibility::superposition_size(s, s.trap.omega2, s.beam.pulse_duration));
  const double delta1 = derive(s, s.trap.omega1).zpm_com;
  return dx / delta1;
}

namespace {

void check_feasible(const PhysicalScenario& s) {
  const auto report = feasibility::constraint_check(s);
  if (report.exit_code() < 2) return;
  std::string msg = "feasibility constraints violated (use force to override):";
  for (const auto& f : report.failures()) msg += " " + f + ";";
  throw ProtocolError(msg);
}

ProtocolResult run_checked(const PhysicalScenario& s, cplx alpha, const ProtocolOptions& opt) {
  ProtocolResult res;
  res.initial_alpha = alpha;
  const auto& trap = s.trap;
  const double dt = s.beam.free_fall_time;
  const double phase = trap.laser_phase;
  res.beta = opt.beta.value_or(displacement_parameter(s));
  const double shift = 0.5 * res.beta;

  const double g1 = derive(s, trap.omega1).grav_coupling;
  const auto expected = gaussian::branch_phase_difference(res.beta, g1, dt, trap.omega2);
  res.phi_expected = expected.phi_grav;
  res.phi_cubic = expected.phi_cubic;

  auto record = [&](int step, const char* name, const HybridState& st) {
    res.norm_error = std::max(res.norm_error, std::abs(1.0 - st.norm_squared()));
    if (opt.keep_log) res.log.push_back({step, name, st});
  };

  HybridState st = HybridState::product(Level::Down, alpha);
  record(1, "prepare", st);

  st = pi_half_pulse(st, phase);
  record(2, "split", st);

  // The stiff trap still holds the particle and radiation pressure balances
  // gravity, so the displacement acts with zero dwell before the release.
  st = displacement_beam(st, shift, Level::Down);
  record(4, "displace", st);

  auto fall = free_fall_segment(st, s, dt, FreeFallOptions{opt.guard});
  st = std::move(fall.state);
  res.warnings = std::move(fall.warnings);
  record(6, "free_fall", st);

  const Branch* down = st.find(Level::Down);
  const Branch* up = st.find(Level::Up);
  cplx undo = shift;
  if (opt.exact_phase) undo = down->motion.alpha - up->motion.alpha;
  st = displacement_beam(st, -undo, Level::Down);
  if (opt.include_cubic) {
    for (auto& b : st.branches)
      if (b.level == Level::Up) b.motion.weight *= std::polar(1.0, res.phi_cubic);
  }
  record(7, "recombine", st);

  down = st.find(Level::Down);
  up = st.find(Level::Up);
  res.residual = std::abs(down->motion.alpha - up->motion.alpha);
  res.visibility = std::abs(gaussian::coherent_overlap(down->motion.alpha, up->motion.alpha));
  const double raw = std::arg(up->motion.weight / down->motion.weight) - phase;
  const double target = res.phi_expected + (opt.include_cubic ? res.phi_cubic : 0.0);
  res.phi_grav = target + numeric::wrap_angle(raw - target);

  // Closing pulse with the laser phase advanced by π, the inverse beam
  // splitter, so that P_down = cos²(φ/2).
  st = pi_half_pulse(st, phase + kPi);
  record(8, "close", st);

  const Readout r = readout(st);
  res.p_down = r.p_down;
  if (r.reduced_visibility)
    res.warnings.push_back("motional parts did not disentangle; residual " +
                           std::to_string(res.residual));
  record(9, "readout", st);
  res.final_state = std::move(st);
  return res;
}

void summarize(ThermalSummary& out) {
  const auto n = static_cast<double>(out.runs.size());
  if (out.runs.empty()) return;
  double sum = 0.0;
  double phi = 0.0;
  for (const auto& r : out.runs) {
    sum += r.p_down;
    phi += r.phi_grav;
  }
  out.p_down_mean = sum / n;
  out.phi_mean = phi / n;
  double var = 0.0;
  for (const auto& r : out.runs) {
    var += (r.p_down - out.p_down_mean) * (r.p_down - out.p_down_mean);
    out.phi_max_dev = std::max(out.phi_max_dev, std::abs(r.phi_grav - out.runs[0].phi_grav));
  }
  out.p_down_std = std::sqrt(var / n);
}

ProtocolOptions inner_options(ProtocolOptions opt) {
  opt.force = true;
  opt.keep_log = false;
  return opt;
}

}  // namespace

ProtocolResult run_protocol(const PhysicalScenario& s, cplx alpha, const ProtocolOptions& opt) {
  s.validate();
  if (!opt.force) check_feasible(s);
  return run_checked(s, alpha, opt);
}

std::vector<cplx> sample_thermal(const ThermalSpec& spec) {
  if (!(spec.nbar >= 0.0)) throw DomainError("thermal occupation nbar must be non-negative");
  std::vector<cplx> out(spec.count, cplx(0.0, 0.0));
  if (spec.nbar == 0.0) return out;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * spec.nbar));
  for (auto& a : out) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = {re, im};
  }
  return out;
}

ThermalSummary run_thermal(const PhysicalScenario& s, const ThermalSpec& spec,
                           const ProtocolOptions& opt) {
  s.validate();
  if (!opt.force) check_feasible(s);
  const auto alphas = sample_thermal(spec);
  const ProtocolOptions inner = inner_options(opt);
  ThermalSummary out;
  out.runs.resize(alphas.size());
  const auto n = static_cast<std::ptrdiff_t>(alphas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) out.runs[i] = run_checked(s, alphas[i], inner);
  summarize(out);
  return out;
}

ThermalSummary run_thermal_serial(const PhysicalScenario& s, const ThermalSpec& spec,
                                  const ProtocolOptions& opt) {
  s.validate();
  if (!opt.force) check_feasible(s);
  const auto alphas = sample_thermal(spec);
  const ProtocolOptions inner = inner_options(opt);
  ThermalSummary out;
  out.runs.reserve(alphas.size());
  for (const auto& a : alphas) out.runs.push_back(run_checked(s, a, inner));
  summarize(out);
  return out;
}

nlohmann::json step_to_json(const StepRecord& r) {
  nlohmann::json levels = nlohmann::json::array();
  nlohmann::json re_a = nlohmann::json::array();
  nlohmann::json im_a = nlohmann::json::array();
  nlohmann::json re_w = nlohmann::json::array();
  nlohmann::json im_w = nlohmann::json::array();
  for (const auto& b : r.state.branches) {
    levels.push_back(to_string(b.level));
    re_a.push_back(b.motion.alpha.real());
    im_a.push_back(b.motion.alpha.imag());
    re_w.push_back(b.motion.weight.real());
    im_w.push_back(b.motion.weight.imag());
  }
  return {{"step", r.step},     {"name", r.name},     {"levels", levels},
          {"re_alpha", re_a},   {"im_alpha", im_a},   {"re_weight", re_w},
          {"im_weight", im_w}};
}

void write_log_jsonl(std::ostream& os, const std::vector<StepRecord>& log) {
  for (const auto& r : log) os << step_to_json(r).dump() << '\n';
}

void write_summary_csv(std::ostream& os, const std::vector<ProtocolResult>& runs) {
  csv::header(os, {"sample", "re_alpha0", "im_alpha0", "phi_grav_rad", "p_down", "visibility",
                   "residual"});
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    csv::row(os, {static_cast<double>(i), r.initial_alpha.real(), r.initial_alpha.imag(),
                  r.phi_grav, r.p_down, r.visibility, r.residual});
  }
}

}  // namespace catsim::protocol
