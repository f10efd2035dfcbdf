#pragma once

// Experimental design formulas and the inequality budget that decides
// whether a parameter set can produce a gravitational phase of order one.

#include <iosfwd>
#include <string>
#include <vector>

#include "catsim/params.hpp"

namespace catsim::feasibility {

/// Optical trap frequency of the atom. Throws DomainError for Δ <= 0
/// ("blue-detuned or resonant") or I <= 0.
double atom_trap_frequency(const AtomSpec& atom, const TrapConfig& trap,
                           const PhysicalConstants& k = kCodata);

/// (m_a c² / ħω_l²)(Δ/Γ) with ω_l = 2πc/λ_l.
double trap_lifetime(const AtomSpec& atom, const TrapConfig& trap,
                     const PhysicalConstants& k = kCodata);

/// Two-photon coupling (E d/ħ)²/Δ₃ with E = sqrt(2I/(ε₀c)), equal legs.
double raman_coupling(const AtomSpec& atom, double beam_intensity, double raman_detuning,
                      const PhysicalConstants& k = kCodata);

/// ħ k Ω_gg δt / (2 m ω_n) with m the nanoparticle mass.
double superposition_size(const PhysicalScenario& s, double omega_n, double pulse_duration);

enum class Grade { Pass, Warn, Fail };
const char* to_string(Grade g);

struct Verdict {
  std::string name;
  std::string relation;  // e.g. "omega2 << (m_a/m_n) omega_a"
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;   // >= 1 means the inequality holds
  Grade grade = Grade::Pass;
};

struct Quantity {
  std::string name;
  double value = 0.0;
  std::string unit;
};

struct FeasibilityReport {
  double omega_a = 0.0;
  double tau_trap = 0.0;
  double lamb_dicke = 0.0;
  double raman = 0.0;
  double dx_beam = 0.0;  // from the beam parameters at ω₂
  double dx = 0.0;       // used for the phase (override or dx_beam)
  double phi_grav = 0.0;
  double phi_cubic = 0.0;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;

  std::vector<Quantity> quantities() const;
  Grade worst() const;
  /// 0 all pass, 1 any warning, 2 any failure
  int exit_code() const;
  std::vector<std::string> failures() const;
};

// Grading of "a << b" style inequalities on the margin b/a.
inline constexpr double kMuchPass = 1e2;
inline constexpr double kMuchWarn = 1e1;

Grade grade_much_less(double margin);

FeasibilityReport constraint_check(const PhysicalScenario& s);

void write_table(std::ostream& os, const FeasibilityReport& r);
void write_csv(std::ostream& os, const FeasibilityReport& r);

}  // namespace catsim::feasibility
