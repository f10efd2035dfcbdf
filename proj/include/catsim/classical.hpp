#pragma once

// Closed-form classical motion of a particle in a harmonic trap with
// gravity, its free-fall and quadratic-in-time limits, an RK4 integrator
// used as an independent oracle, and the semiclassical action phases.

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catsim/numeric.hpp"
#include "catsim/params.hpp"

namespace catsim::classical {

// TrapOrigin: x measured from the trap centre (H = p²/2m + mω²x²/2 + m g_E x).
// Equilibrium: x shifted by g_E/ω², where gravity disappears from H.
enum class Frame { TrapOrigin, Equilibrium };

struct PhaseSpacePoint {
  double x = 0.0;  // m
  double p = 0.0;  // kg m/s
  Frame frame = Frame::TrapOrigin;
};

struct AdimensionalPoint {
  double X = 0.0;
  double P = 0.0;

  /// a = (X + iP) / 2
  cplx mode() const { return 0.5 * cplx(X, P); }
  static AdimensionalPoint from_mode(cplx a) { return {2.0 * a.real(), 2.0 * a.imag()}; }
};

PhaseSpacePoint to_equilibrium_frame(PhaseSpacePoint s, double omega, double g_E);
PhaseSpacePoint to_trap_frame(PhaseSpacePoint s, double omega, double g_E);

AdimensionalPoint to_adimensional(PhaseSpacePoint s, double mass, double omega,
                                  double hbar = kCodata.hbar);
PhaseSpacePoint from_adimensional(AdimensionalPoint a, double mass, double omega,
                                  Frame frame = Frame::TrapOrigin, double hbar = kCodata.hbar);

/// H = p²/2m + mω²x²/2 + m g_E x evaluated in the trap frame.
double energy(PhaseSpacePoint s, double mass, double omega, double g_E);

/// Pure harmonic motion; the frame is preserved.
PhaseSpacePoint evolve_harmonic(PhaseSpacePoint s0, double mass, double omega, double t);

/// Exact trap-frame solution with gravity. Throws DomainError for ω <= 0
/// or an Equilibrium-frame input.
PhaseSpacePoint evolve_harmonic_gravity(PhaseSpacePoint s0, double mass, double omega,
                                        double g_E, double t);

/// x0 + p0 t/m - g_E t²/2, p0 - m g_E t.
PhaseSpacePoint evolve_free_fall(PhaseSpacePoint s0, double mass, double g_E, double t);

struct ModeEvolution {
  cplx quadratic;     // a(0)[1 - iωt - ω²t²/2] - igt - ωgt²/2
  cplx exact;         // a(0)e^{-iωt} + (g/ω)(e^{-iωt} - 1)
  double omega_t = 0.0;
  double g_t = 0.0;
  bool within_guard = true;
  std::optional<std::string> warning;
};

/// Adimensional mode amplitude after time t under the trap-with-gravity
/// Hamiltonian, to quadratic order in t and exactly. The guard flags
/// |ωt| >= guard but never throws.
ModeEvolution evolve_mode_quadratic(cplx a0, double omega, double g, double t,
                                    double guard = 0.1);

cplx evolve_mode_exact(cplx a0, double omega, double g, double t);

// H(t) = p²/2m + mω(t)²x²/2 + F(t) x with (ω, F) switching once at
// switch_time. F = m g_E describes gravity in the trap frame; the sudden
// quench of the Paul trap uses F = 0 before and m ω₂² (g_E/ω₂²) after.
struct TrapSegment {
  double omega = 0.0;
  double linear_force = 0.0;
};

struct TimeDependentTrapSpec {
  double mass = 0.0;
  TrapSegment before{};
  TrapSegment after{};
  double switch_time = 0.0;
  double start_time = 0.0;

  static TimeDependentTrapSpec harmonic_gravity(double mass, double omega, double g_E);
  static TimeDependentTrapSpec quench(double mass, double omega1, double omega2, double g_E,
                                      double start_time = 0.0);

  double max_omega() const;
};

/// Fixed-step RK4 integration of Hamilton's equations from spec.start_time
/// for a duration t. Steps are aligned so the switch falls on a step
/// boundary. Throws DomainError if dt >= 2π/(50ω) for any segment.
PhaseSpacePoint ode_oracle(PhaseSpacePoint s0, const TimeDependentTrapSpec& spec, double t,
                           double dt);

/// Classical action along the Equilibrium-frame harmonic trajectory, over ħ:
/// [sin(2ωt)(p² - (mωx)²)]/(4mωħ) - (px/ħ) sin²(ωt).
double action_phase(PhaseSpacePoint s0, double mass, double omega, double t,
                    double hbar = kCodata.hbar);

/// Phase difference between two branches separated by Δx at heights
/// x20 + Δx and x20 in a harmonic trap.
double phase_difference_harmonic(double x20, double p20, double dx, double mass, double omega,
                                 double t, double hbar = kCodata.hbar);

/// m g_E Δx t / ħ
double phase_difference_freefall(double dx, double mass, double g_E, double t,
                                 double hbar = kCodata.hbar);

/// (Δφ_freefall - Δφ_harmonic) / Δφ_freefall with x20 = g_E/ω², written
/// without cancellation so it stays accurate at ωt ~ 1e-11.
double transient_relative_error(double x20, double p20, double dx, double mass, double omega,
                                double t);

struct TransientSpec {
  double mass = 0.0;
  double omega = 0.0;
  double g_E = kCodata.g_E;
  double dx = 0.0;
  double p20 = 0.0;
  std::optional<double> x20;  // defaults to g_E/ω²
  double hbar = kCodata.hbar;

  double initial_height() const { return x20 ? *x20 : g_E / (omega * omega); }
  double period() const { return kTwoPi / omega; }
};

struct TransientSample {
  double t = 0.0;
  double dphi_harmonic = 0.0;
  double dphi_grav = 0.0;
  double rel_error = 0.0;
};

/// Samples the phase curves on `points` equally spaced times over [0, t_end].
/// OpenMP-parallel; transient_curve_serial is the reference.
std::vector<TransientSample> transient_curve(const TransientSpec& spec, double t_end,
                                             std::size_t points);
std::vector<TransientSample> transient_curve_serial(const TransientSpec& spec, double t_end,
                                                    std::size_t points);

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double p = 0.0;
  double phase = 0.0;
  double rel_error = 0.0;
};

/// Equilibrium-frame trajectory of the upper branch (x20 + Δx) with its
/// action phase; rel_error compares the closed form with ode_oracle.
std::vector<TrajectorySample> trajectory(const TransientSpec& spec, double t_end,
                                         std::size_t points);

void write_trajectory_csv(std::ostream& os, std::span<const TrajectorySample> rows);
void write_transient_csv(std::ostream& os, std::span<const TransientSample> rows);

}  // namespace catsim::classical
