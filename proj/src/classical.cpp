#include "catsim/classical.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "catsim/csv.hpp"
#include "catsim/errors.hpp"

namespace catsim::classical {

using numeric::one_minus_cos;

PhaseSpacePoint to_equilibrium_frame(PhaseSpacePoint s, double omega, double g_E) {
  if (s.frame == Frame::Equilibrium) return s;
  return {s.x + g_E / (omega * omega), s.p, Frame::Equilibrium};
}

PhaseSpacePoint to_trap_frame(PhaseSpacePoint s, double omega, double g_E) {
  if (s.frame == Frame::TrapOrigin) return s;
  return {s.x - g_E / (omega * omega), s.p, Frame::TrapOrigin};
}

AdimensionalPoint to_adimensional(PhaseSpacePoint s, double mass, double omega, double hbar) {
  return {s.x / zero_point_position(mass, omega, hbar),
          s.p / zero_point_momentum(mass, omega, hbar)};
}

PhaseSpacePoint from_adimensional(AdimensionalPoint a, double mass, double omega, Frame frame,
                                  double hbar) {
  return {a.X * zero_point_position(mass, omega, hbar),
          a.P * zero_point_momentum(mass, omega, hbar), frame};
}

double energy(PhaseSpacePoint s, double mass, double omega, double g_E) {
  return s.p * s.p / (2.0 * mass) + 0.5 * mass * omega * omega * s.x * s.x + mass * g_E * s.x;
}

PhaseSpacePoint evolve_harmonic(PhaseSpacePoint s0, double mass, double omega, double t) {
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  return {s0.x * c + s0.p / (mass * omega) * s, -mass * omega * s0.x * s + s0.p * c, s0.frame};
}

PhaseSpacePoint evolve_harmonic_gravity(PhaseSpacePoint s0, double mass, double omega,
                                        double g_E, double t) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive (use evolve_free_fall for ω = 0)");
  if (s0.frame != Frame::TrapOrigin)
    throw DomainError("evolve_harmonic_gravity expects a trap-frame point");
  const double wt = omega * t;
  const double c = std::cos(wt);
  const double s = std::sin(wt);
  const double x = s0.x * c + s0.p / (mass * omega) * s - (g_E / (omega * omega)) * one_minus_cos(wt);
  const double p = -mass * omega * s0.x * s + s0.p * c - mass * (g_E / omega) * s;
  return {x, p, Frame::TrapOrigin};
}

PhaseSpacePoint evolve_free_fall(PhaseSpacePoint s0, double mass, double g_E, double t) {
  return {s0.x + s0.p / mass * t - 0.5 * g_E * t * t, s0.p - mass * g_E * t, s0.frame};
}

cplx evolve_mode_exact(cplx a0, double omega, double g, double t) {
  const cplx rot = std::polar(1.0, -omega * t);
  if (omega == 0.0) return a0 - kI * g * t;
  // (g/ω)(e^{-iωt} - 1) with the bracket evaluated stably
  return a0 * rot + (g / omega) * numeric::expm1i(-omega * t);
}

ModeEvolution evolve_mode_quadratic(cplx a0, double omega, double g, double t, double guard) {
  ModeEvolution out;
  const double wt = omega * t;
  out.omega_t = wt;
  out.g_t = g * t;
  out.quadratic = a0 * cplx(1.0 - 0.5 * wt * wt, -wt) - kI * g * t - 0.5 * omega * g * t * t;
  out.exact = evolve_mode_exact(a0, omega, g, t);
  if (std::abs(wt) >= guard) {
    out.within_guard = false;
    out.warning = "|omega t| = " + std::to_string(std::abs(wt)) +
                  " exceeds the quadratic-expansion guard " + std::to_string(guard);
  }
  return out;
}

TimeDependentTrapSpec TimeDependentTrapSpec::harmonic_gravity(double mass, double omega,
                                                              double g_E) {
  TimeDependentTrapSpec s;
  s.mass = mass;
  s.before = {omega, mass * g_E};
  s.after = s.before;
  s.switch_time = 0.0;
  return s;
}

TimeDependentTrapSpec TimeDependentTrapSpec::quench(double mass, double omega1, double omega2,
                                                    double g_E, double start_time) {
  TimeDependentTrapSpec s;
  s.mass = mass;
  s.before = {omega1, 0.0};
  // m ω₂² d(t) with d = g_E/ω₂²
  s.after = {omega2, mass * g_E};
  s.switch_time = 0.0;
  s.start_time = start_time;
  return s;
}

double TimeDependentTrapSpec::max_omega() const { return std::max(before.omega, after.omega); }

namespace {

struct State {
  double x, p;
};

State rk4_step(State s, double mass, const TrapSegment& seg, double h) {
  const double k = mass * seg.omega * seg.omega;
  auto f = [&](State y) { return State{y.p / mass, -k * y.x - seg.linear_force}; };
  const State k1 = f(s);
  const State k2 = f({s.x + 0.5 * h * k1.x, s.p + 0.5 * h * k1.p});
  const State k3 = f({s.x + 0.5 * h * k2.x, s.p + 0.5 * h * k2.p});
  const State k4 = f({s.x + h * k3.x, s.p + h * k3.p});
  return {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.p + h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

State integrate_segment(State s, double mass, const TrapSegment& seg, double length, double dt) {
  if (length <= 0.0) return s;
  const auto n = static_cast<long>(std::ceil(length / dt - 1e-12));
  const double h = length / static_cast<double>(std::max(n, 1L));
  for (long i = 0; i < std::max(n, 1L); ++i) s = rk4_step(s, mass, seg, h);
  return s;
}

}  // namespace

PhaseSpacePoint ode_oracle(PhaseSpacePoint s0, const TimeDependentTrapSpec& spec, double t,
                           double dt) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (!(spec.mass > 0.0)) throw DomainError("mass must be positive");
  const double t0 = spec.start_time;
  const double t1 = t0 + t;
  const bool crosses = t0 < spec.switch_time && t1 > spec.switch_time;

  auto check = [&](const TrapSegment& seg) {
    if (seg.omega > 0.0 && !(dt < kTwoPi / (50.0 * seg.omega)))
      throw DomainError("RK4 step dt must be below 2π/(50ω) = " +
                        std::to_string(kTwoPi / (50.0 * seg.omega)));
  };
  if (t0 < spec.switch_time) check(spec.before);
  if (t1 > spec.switch_time || t0 >= spec.switch_time) check(spec.after);

  State s{s0.x, s0.p};
  if (crosses) {
    s = integrate_segment(s, spec.mass, spec.before, spec.switch_time - t0, dt);
    s = integrate_segment(s, spec.mass, spec.after, t1 - spec.switch_time, dt);
  } else {
    const TrapSegment& seg = t0 < spec.switch_time ? spec.before : spec.after;
    s = integrate_segment(s, spec.mass, seg, t, dt);
  }
  return {s.x, s.p, s0.frame};
}

double action_phase(PhaseSpacePoint s0, double mass, double omega, double t, double hbar) {
  if (s0.frame != Frame::Equilibrium)
    throw DomainError("action_phase expects an equilibrium-frame point");
  const double mwx = mass * omega * s0.x;
  const double s = std::sin(omega * t);
  return std::sin(2.0 * omega * t) * (s0.p * s0.p - mwx * mwx) / (4.0 * mass * omega * hbar) -
         (s0.p * s0.x / hbar) * s * s;
}

double phase_difference_harmonic(double x20, double p20, double dx, double mass, double omega,
                                 double t, double hbar) {
  if (dx < 0.0) throw DomainError("superposition size dx must be non-negative");
  const double s = std::sin(omega * t);
  return dx * mass * omega * (dx + 2.0 * x20) / (4.0 * hbar) * std::sin(2.0 * omega * t) +
         dx * p20 / hbar * s * s;
}

double phase_difference_freefall(double dx, double mass, double g_E, double t, double hbar) {
  // (m/ħ) first: keeps the product away from underflow
  return (mass / hbar) * g_E * dx * t;
}

double transient_relative_error(double x20, double p20, double dx, double mass, double omega,
                                double t) {
  const double y = 2.0 * omega * t;
  const double sc = numeric::sinc(y);
  return numeric::one_minus_sinc(y) - (dx / (2.0 * x20)) * sc -
         p20 * std::sin(omega * t) * numeric::sinc(omega * t) / (x20 * mass * omega);
}

namespace {

TransientSample transient_point(const TransientSpec& spec, double t) {
  const double x20 = spec.initial_height();
  TransientSample r;
  r.t = t;
  r.dphi_harmonic =
      phase_difference_harmonic(x20, spec.p20, spec.dx, spec.mass, spec.omega, t, spec.hbar);
  r.dphi_grav =
      (spec.mass / spec.hbar) * spec.dx * x20 * spec.omega * spec.omega * t;
  r.rel_error = transient_relative_error(x20, spec.p20, spec.dx, spec.mass, spec.omega, t);
  return r;
}

double sample_time(double t_end, std::size_t points, std::size_t i) {
  return points < 2 ? 0.0 : t_end * static_cast<double>(i) / static_cast<double>(points - 1);
}

}  // namespace

std::vector<TransientSample> transient_curve(const TransientSpec& spec, double t_end,
                                             std::size_t points) {
  std::vector<TransientSample> out(points);
  const auto n = static_cast<long>(points);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = transient_point(spec, sample_time(t_end, points, k));
  }
  return out;
}

std::vector<TransientSample> transient_curve_serial(const TransientSpec& spec, double t_end,
                                                    std::size_t points) {
  std::vector<TransientSample> out(points);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = transient_point(spec, sample_time(t_end, points, i));
  return out;
}

std::vector<TrajectorySample> trajectory(const TransientSpec& spec, double t_end,
                                         std::size_t points) {
  std::vector<TrajectorySample> out;
  out.reserve(points);
  const PhaseSpacePoint start{spec.initial_height() + spec.dx, spec.p20, Frame::Equilibrium};
  const auto ode = TimeDependentTrapSpec::harmonic_gravity(spec.mass, spec.omega, 0.0);
  const double dt = spec.period() / 400.0;
  const double scale_p = spec.mass * spec.omega;

  PhaseSpacePoint numeric_state = start;
  double t_prev = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = sample_time(t_end, points, i);
    if (t > t_prev) numeric_state = ode_oracle(numeric_state, ode, t - t_prev, dt);
    t_prev = t;
    const PhaseSpacePoint cf = evolve_harmonic(start, spec.mass, spec.omega, t);
    const double err = std::hypot(numeric_state.x - cf.x, (numeric_state.p - cf.p) / scale_p);
    const double norm = std::hypot(cf.x, cf.p / scale_p);
    out.push_back({t, cf.x, cf.p, action_phase(start, spec.mass, spec.omega, t, spec.hbar),
                   norm > 0.0 ? err / norm : err});
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, std::span<const TrajectorySample> rows) {
  csv::header(os, {"t_s", "x_m", "p_kgms", "phase_rad", "rel_error"});
  for (const auto& r : rows) csv::row(os, {r.t, r.x, r.p, r.phase, r.rel_error});
}

void write_transient_csv(std::ostream& os, std::span<const TransientSample> rows) {
  csv::header(os, {"t_s", "dphi_harmonic_rad", "dphi_grav_rad", "rel_error"});
  for (const auto& r : rows) csv::row(os, {r.t, r.dphi_harmonic, r.dphi_grav, r.rel_error});
}

}  // namespace catsim::classical
