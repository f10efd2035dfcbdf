#pragma once

// Physical constants, experiment parameter records and the derived
// quantities (zero-point motions, Lamb-Dicke parameter, gravitational
// coupling) shared by the rest of the library.
//
// Every frequency is angular (rad/s). Conversion from Hz happens once, when a
// configuration document is loaded.

#include <optional>
#include <string>
#include <vector>

namespace catsim {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;    // J s
  double c = 299792458.0;           // m/s
  double g_E = 9.81;                // m/s^2
  double eps0 = 8.8541878128e-12;   // F/m
  double q_e = 1.602176634e-19;     // C
  double k_B = 1.380649e-23;        // J/K
};

inline constexpr PhysicalConstants kCodata{};

struct AtomSpec {
  double mass = 0.0;                 // kg
  double transition_frequency = 0.0; // rad/s
  double linewidth = 0.0;            // rad/s
  double dipole_moment = 0.0;        // C m  (q D_jk)
};

struct NanoparticleSpec {
  double radius = 0.0;  // m
  double mass = 0.0;    // kg
};

struct TrapConfig {
  double omega1 = 0.0;           // stiff Paul trap, rad/s
  double omega2 = 0.0;           // soft Paul trap, rad/s
  double wavelength = 0.0;       // trapping laser, m
  double intensity = 0.0;        // backscattered intensity at the atom, W/m^2
  double detuning = 0.0;         // trap detuning Δ = ω_e - ω_l, rad/s
  double raman_detuning = 0.0;   // Δ₃, rad/s
  double raman_wavevector = 0.0; // δk, rad/m; 0 selects 2π/λ
  double separation = 0.0;       // d, m
  double radiation_force = 0.0;  // F during free fall, N
  double trap_width = 0.0;       // w, m; 0 selects λ/2
  double laser_phase = 0.0;      // constant phase carried by the Raman pulses, rad

  double wavevector() const;
  double width() const;
};

// Displacement beam and timing of the interferometer.
struct BeamConfig {
  double intensity = 0.0;         // W/m^2
  double pulse_duration = 0.0;    // δt, s
  double free_fall_time = 0.0;    // Δt, s
  double experiment_time = 0.0;   // τ_exp, s
  std::optional<double> superposition_size;  // Δx override, m
};

struct PhysicalScenario {
  PhysicalConstants constants{};
  AtomSpec atom{};
  NanoparticleSpec nanoparticle{};
  TrapConfig trap{};
  BeamConfig beam{};

  /// Throws DomainError naming the first field that breaks an invariant.
  void validate() const;

  /// Non-fatal findings (e.g. m_n/m_a below 1e6).
  std::vector<std::string> warnings() const;
};

struct DerivedQuantities {
  double zpm_com = 0.0;        // δ_R, m
  double zpm_rel = 0.0;        // δ_r, m
  double total_mass = 0.0;     // M, kg
  double reduced_mass = 0.0;   // μ, kg
  double lamb_dicke = 0.0;     // η = k δ_R
  double grav_coupling = 0.0;  // g, rad/s
  double wavevector = 0.0;     // k, rad/m
  double atom_frequency = 0.0; // ω_a used for δ_r, rad/s
};

/// Pure function of (scenario, ω_n).
DerivedQuantities derive(const PhysicalScenario& scenario, double omega_n);

// Building blocks, exposed because several modules need them individually.

/// sqrt(ħ / (2 m ω))
double zero_point_position(double mass, double omega, double hbar = kCodata.hbar);

/// sqrt(ħ m ω / 2)
double zero_point_momentum(double mass, double omega, double hbar = kCodata.hbar);

/// g = g_E sqrt(m / (2ħω))
double gravitational_coupling(double mass, double omega, double g_E,
                              double hbar = kCodata.hbar);

/// Optical dipole-trap frequency of the atom,
/// ω_a = sqrt(6πc² / (m_a w² ω_e³) · IΓ/Δ).
double optical_trap_frequency(const AtomSpec& atom, const TrapConfig& trap,
                              const PhysicalConstants& k = kCodata);

}  // namespace catsim
