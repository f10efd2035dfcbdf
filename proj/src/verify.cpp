#include "catsim/verify.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "catsim/classical.hpp"
#include "catsim/fock.hpp"
#include "catsim/gaussian.hpp"
#include "catsim/protocol.hpp"

namespace catsim::verify {

namespace {

Check make(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured, tol, std::abs(measured) < tol, std::move(detail)};
}

struct OracleMatch {
  double infidelity = 0.0;
  double phase_error = 0.0;
};

OracleMatch displaced_oscillator_match(cplx alpha, double omega, double g, double t,
                                       std::size_t n) {
  const gaussian::CoherentBranch b{alpha, 1.0};
  const auto closed = fock::branch_to_fock(gaussian::evolve_displaced_oscillator(b, omega, g, t), n);
  const auto h = fock::displaced_oscillator_hamiltonian(n, omega, g);
  const auto oracle = fock::evolve_schrodinger(fock::coherent_to_fock(alpha, n), h, t, 4);
  const cplx ov = fock::overlap(closed, oracle);
  return {1.0 - std::norm(ov), std::arg(ov)};
}

}  // namespace

std::vector<Check> run(const PhysicalScenario& scenario, const Options& opt) {
  std::vector<Check> out;

  // Displaced oscillator against the number-basis propagator.
  for (double t : {0.1, 0.3, 0.5}) {
    const auto m = displaced_oscillator_match(1.0, 1.0, 0.1, t, 60);
    out.push_back(make(fmt::format("displaced_oscillator_fidelity_t{}", t), m.infidelity, 1e-8,
                       "1 - |<closed|oracle>|^2, N = 60"));
    out.push_back(make(fmt::format("displaced_oscillator_phase_t{}", t), m.phase_error, 1e-6,
                       "arg <closed|oracle>, rad"));
  }
  if (!opt.quick) {
    const auto a = displaced_oscillator_match(1.0, 1.0, 0.1, 0.5, 60);
    const auto b = displaced_oscillator_match(1.0, 1.0, 0.1, 0.5, 120);
    out.push_back(make("displaced_oscillator_N_convergence", a.infidelity - b.infidelity, 1e-9,
                       "fidelity change N = 60 -> 120"));
  }

  // Quadratic expansion phases against the exact evolution (α-dependent part).
  {
    const double omega = 1.0;
    const double g = 0.1;
    const double t = 1e-3;
    const double global = gaussian::displaced_oscillator_global_phase(omega, g, t);
    for (cplx alpha : {cplx(0.7, 0.0), cplx(0.0, 0.7)}) {
      const gaussian::CoherentBranch b{alpha, 1.0};
      const auto exact = gaussian::evolve_displaced_oscillator(b, omega, g, t);
      auto quad = gaussian::quadratic_branch_expansion(b, omega, g, t);
      if (opt.flip_boost_sign) quad.branch.weight *= std::polar(1.0, -2.0 * quad.boost_phase);
      const double diff =
          numeric::wrap_angle(std::arg(exact.weight) - global - std::arg(quad.branch.weight));
      out.push_back(make(alpha.imag() == 0.0 ? "boost_phase" : "translation_phase", diff, 1e-8,
                         "quadratic vs exact phase at omega t = 1e-3, rad"));
    }
  }

  // D(1)D(i) = e^{-i} D(1+i)
  {
    const std::size_t n = 60;
    auto v = fock::apply_gate(fock::coherent_to_fock(0.0, n), fock::Displace{cplx(0.0, 1.0)});
    v = fock::apply_gate(v, fock::Displace{1.0});
    const auto c = gaussian::displace_compose(1.0, cplx(0.0, 1.0));
    const cplx ov = fock::overlap(fock::coherent_to_fock(c.gamma, n), v);
    out.push_back(make("displace_compose_phase", numeric::wrap_angle(std::arg(ov) - c.phase),
                       1e-10, "composition phase vs truncated matrices, rad"));
  }

  // Quench decomposition S(z)D(ε)R(φ)|α> against direct propagation.
  {
    const std::size_t n = 60;
    const double w1 = 1.0;
    const double w2 = 0.3;
    const double g2 = 0.05;
    const double g1 = std::sqrt(w2 / w1) * g2;
    const cplx alpha(0.5, 0.2);
    for (double t : {0.02, 0.05}) {
      const auto q = gaussian::quench_params(w1, w2, g2 / w2, t);
      const auto decomposed = fock::quench_decomposition_state(alpha, q, n);
      const auto oracle = fock::evolve_schrodinger(fock::coherent_to_fock(alpha, n),
                                                   fock::quench_hamiltonian(n, w1, w2, g1), t, 2);
      out.push_back(make(fmt::format("quench_decomposition_t{}", t),
                         1.0 - fock::fidelity(decomposed, oracle), 1e-6,
                         "1 - fidelity, omega1 = 1, omega2 = 0.3"));
    }
  }

  // S(z)D(ξ) = D(γ)S(z)
  {
    const std::size_t n = 80;
    const cplx z(0.0, 0.2);
    const cplx xi = 1.0;
    const auto vac = fock::coherent_to_fock(0.0, n);
    const auto lhs = fock::apply_gate(fock::apply_gate(vac, fock::Displace{xi}), fock::Squeeze{z});
    const cplx gamma = gaussian::commute_squeeze_displacement(z, xi);
    const auto rhs =
        fock::apply_gate(fock::apply_gate(vac, fock::Squeeze{z}), fock::Displace{gamma});
    out.push_back(make("squeeze_displacement_commutation", fock::distance(lhs, rhs), 1e-7,
                       "vector norm, N = 80"));
  }

  // Classical closed forms against RK4.
  {
    const double m = 1e-15;
    const double w = 5e-6;
    const double period = kTwoPi / w;
    const classical::PhaseSpacePoint s0{1e-9, 2e-24};
    const auto spec = classical::TimeDependentTrapSpec::harmonic_gravity(m, w, kCodata.g_E);
    const auto rk = classical::ode_oracle(s0, spec, period, period / 2000.0);
    const auto cf = classical::evolve_harmonic_gravity(s0, m, w, kCodata.g_E, period);
    const double scale_x = kCodata.g_E / (w * w);
    const double scale_p = m * kCodata.g_E / w;
    const double err = std::max(std::abs(rk.x - cf.x) / scale_x, std::abs(rk.p - cf.p) / scale_p);
    out.push_back(make("rk4_harmonic_gravity_period", err, 1e-9,
                       "relative to g/omega^2 and m g/omega"));

    const auto free = classical::TimeDependentTrapSpec::harmonic_gravity(m, 0.0, kCodata.g_E);
    const auto rk0 = classical::ode_oracle(s0, free, 1e-3, 1e-5);
    const auto ff = classical::evolve_free_fall(s0, m, kCodata.g_E, 1e-3);
    const double err0 =
        std::max(numeric::rel_diff(rk0.x, ff.x), numeric::rel_diff(rk0.p, ff.p));
    out.push_back(make("rk4_free_fall", err0, 1e-12, "omega = 0, relative"));
  }

  // Release at the scenario's own scale: the gravitational drift is removed
  // analytically (checked against the classical solution) and the remaining
  // quadratic propagator goes through the number basis.
  {
    const auto& trap = scenario.trap;
    const double t = scenario.beam.free_fall_time;
    const auto d1 = derive(scenario, trap.omega1);
    const double g2 = derive(scenario, trap.omega2).grav_coupling;
    const auto drop = classical::evolve_harmonic_gravity({0.0, 0.0}, d1.total_mass, trap.omega2,
                                                         scenario.constants.g_E, t);
    const cplx drift =
        classical::to_adimensional(drop, d1.total_mass, trap.omega1, scenario.constants.hbar)
            .mode();
    const cplx alpha(1.0, 1.0);
    const auto ev = gaussian::evolve_quench({alpha, 1.0}, trap.omega1, trap.omega2, g2, t);
    const std::size_t n = 60;
    const auto oracle =
        fock::evolve_schrodinger(fock::coherent_to_fock(alpha, n),
                                 fock::quench_hamiltonian(n, trap.omega1, trap.omega2, 0.0), t);
    const auto closed = fock::coherent_to_fock(ev.branch.alpha - drift, n);
    out.push_back(make("release_scenario_scale", 1.0 - fock::fidelity(closed, oracle), 1e-6,
                       fmt::format("1 - fidelity with |drift| = {:.4g}", std::abs(drift))));
  }

  // Protocol consistency and initial-state independence.
  {
    protocol::ProtocolOptions popt;
    popt.force = true;
    popt.keep_log = false;
    const auto ref = protocol::run_protocol(scenario, 0.0, popt);
    out.push_back(make("protocol_readout",
                       ref.p_down - std::pow(std::cos(0.5 * ref.phi_grav), 2), 1e-10,
                       "P_down - cos^2(phi/2)"));
    out.push_back(make("protocol_factorizable", ref.residual, 1e-10,
                       "|alpha_down - alpha_up| after recombination"));
    out.push_back(make("protocol_phase", numeric::rel_diff(ref.phi_grav, ref.phi_expected), 1e-9,
                       "extracted vs g t beta, relative"));
    double dev = 0.0;
    for (cplx a : {cplx(1.0, 0.0), cplx(0.0, 2.0), cplx(1.0, 1.0)})
      dev = std::max(dev, std::abs(protocol::run_protocol(scenario, a, popt).phi_grav -
                                   ref.phi_grav));
    if (!opt.quick) {
      const auto th = protocol::run_thermal(scenario, {10.0, 42, 200}, popt);
      for (const auto& r : th.runs) dev = std::max(dev, std::abs(r.phi_grav - ref.phi_grav));
    }
    out.push_back(make("protocol_alpha_independence", dev, 1e-10, "max phase deviation, rad"));
  }

  // Transient relative error against 1 - sin(2wt)/(2wt).
  {
    classical::TransientSpec ts;
    ts.mass = 1e-15;
    ts.omega = 5e-6;
    ts.dx = 1e-14;
    double worst = 0.0;
    for (double t : {1e-6, 1e-3, 1.0, 1e3, 1e5, 6e5}) {
      const double e = classical::transient_relative_error(ts.initial_height(), 0.0, ts.dx,
                                                           ts.mass, ts.omega, t);
      worst = std::max(worst, std::abs(e - numeric::one_minus_sinc(2.0 * ts.omega * t)));
    }
    out.push_back(make("transient_relative_error", worst, 1e-9,
                       "pointwise deviation from 1 - sinc(2 omega t)"));
  }
  return out;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json to_json(const std::vector<Check>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"measured", c.measured},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass},
                   {"detail", c.detail}});
  return {{"pass", all_pass(checks)}, {"checks", arr}};
}

void write_table(std::ostream& os, const std::vector<Check>& checks) {
  for (const auto& c : checks)
    os << fmt::format("{:<4} {:<40} {:>12.3e} < {:<9.1e} {}\n", c.pass ? "ok" : "FAIL", c.name,
                      std::abs(c.measured), c.tolerance, c.detail);
}

}  // namespace catsim::verify
