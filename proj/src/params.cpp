#include "catsim/params.hpp"

#include <cmath>
#include <sstream>

#include "catsim/errors.hpp"
#include "catsim/numeric.hpp"

namespace catsim {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << field << " must be positive and finite (got " << v << ")";
    throw DomainError(os.str());
  }
}

void require_non_negative(double v, const char* field) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << field << " must be non-negative and finite (got " << v << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

double TrapConfig::wavevector() const {
  return raman_wavevector > 0.0 ? raman_wavevector : kTwoPi / wavelength;
}

double TrapConfig::width() const {
  return trap_width > 0.0 ? trap_width : 0.5 * wavelength;
}

void PhysicalScenario::validate() const {
  require_positive(constants.hbar, "constants.hbar");
  require_positive(constants.c, "constants.c");
  require_non_negative(constants.g_E, "constants.g_E");
  require_positive(constants.eps0, "constants.eps0");
  require_positive(constants.q_e, "constants.q_e");

  require_positive(atom.mass, "atom.mass");
  require_positive(atom.linewidth, "atom.linewidth");
  require_positive(atom.transition_frequency, "atom.transition_frequency");
  if (!(atom.transition_frequency > atom.linewidth))
    throw DomainError("atom.transition_frequency must exceed atom.linewidth");
  require_positive(atom.dipole_moment, "atom.dipole_moment");

  require_positive(nanoparticle.radius, "nanoparticle.radius");
  require_positive(nanoparticle.mass, "nanoparticle.mass");

  require_positive(trap.omega1, "trap.omega1");
  require_positive(trap.omega2, "trap.omega2");
  if (!(trap.omega2 < trap.omega1))
    throw DomainError("trap.omega2 must be smaller than trap.omega1");
  require_positive(trap.wavelength, "trap.wavelength");
  require_positive(trap.intensity, "trap.intensity");
  require_positive(trap.detuning, "trap.detuning");
  require_positive(trap.raman_detuning, "trap.raman_detuning");
  require_non_negative(trap.raman_wavevector, "trap.raman_wavevector");
  require_non_negative(trap.separation, "trap.separation");
  require_non_negative(trap.radiation_force, "trap.radiation_force");
  require_non_negative(trap.trap_width, "trap.trap_width");

  require_non_negative(beam.intensity, "beam.intensity");
  require_non_negative(beam.pulse_duration, "beam.pulse_duration");
  require_positive(beam.free_fall_time, "beam.free_fall_time");
  require_non_negative(beam.experiment_time, "beam.experiment_time");
  if (beam.superposition_size)
    require_non_negative(*beam.superposition_size, "beam.superposition_size");
}

std::vector<std::string> PhysicalScenario::warnings() const {
  std::vector<std::string> out;
  const double ratio = nanoparticle.mass / atom.mass;
  if (ratio < 1e6) {
    std::ostringstream os;
    os << "nanoparticle/atom mass ratio " << ratio
       << " is below 1e6; O(m_a/m_n) corrections are no longer negligible";
    out.push_back(os.str());
  }
  return out;
}

double zero_point_position(double mass, double omega, double hbar) {
  return std::sqrt(hbar / (2.0 * mass * omega));
}

double zero_point_momentum(double mass, double omega, double hbar) {
  return std::sqrt(0.5 * hbar * mass * omega);
}

double gravitational_coupling(double mass, double omega, double g_E, double hbar) {
  // ratio first: m/ħ ~ 1e19, ω can be ~1e-6
  return g_E * std::sqrt((mass / hbar) / (2.0 * omega));
}

double optical_trap_frequency(const AtomSpec& atom, const TrapConfig& trap,
                              const PhysicalConstants& k) {
  const double w = trap.width();
  const double we = atom.transition_frequency;
  // group as (c/ω_e)² (1/ω_e) to keep intermediates in range
  const double c_over_we = k.c / we;
  const double geom = 6.0 * kPi * c_over_we * c_over_we / (atom.mass * w * w * we);
  return std::sqrt(geom * trap.intensity * (atom.linewidth / trap.detuning));
}

DerivedQuantities derive(const PhysicalScenario& scenario, double omega_n) {
  if (!(omega_n > 0.0) || !std::isfinite(omega_n))
    throw DomainError("omega_n must be positive and finite");
  scenario.validate();

  const auto& k = scenario.constants;
  DerivedQuantities d;
  d.total_mass = scenario.nanoparticle.mass + scenario.atom.mass;
  d.reduced_mass = scenario.atom.mass * (scenario.nanoparticle.mass / d.total_mass);
  d.zpm_com = zero_point_position(d.total_mass, omega_n, k.hbar);
  d.atom_frequency = optical_trap_frequency(scenario.atom, scenario.trap, k);
  d.zpm_rel = zero_point_position(d.reduced_mass, d.atom_frequency, k.hbar);
  d.wavevector = scenario.trap.wavevector();
  d.lamb_dicke = d.wavevector * d.zpm_com;
  d.grav_coupling = gravitational_coupling(d.total_mass, omega_n, k.g_E, k.hbar);
  return d;
}

}  // namespace catsim

#include "catsim/presets.hpp"

namespace catsim::presets {

AtomSpec cesium_d2(const PhysicalConstants& k) {
  AtomSpec a;
  a.mass = 2.207e-25;
  a.transition_frequency = kTwoPi * k.c / 852e-9;
  a.linewidth = 3e7;
  a.dipole_moment = 4e-29;
  return a;
}

PhysicalScenario discussion() {
  PhysicalScenario s;
  s.atom = cesium_d2(s.constants);
  s.nanoparticle.radius = 500e-9;
  s.nanoparticle.mass = 1e-15;

  s.trap.omega1 = 100.0;
  s.trap.omega2 = 5e-6;
  s.trap.wavelength = 1e-6;
  s.trap.intensity = 3e7;
  s.trap.detuning = 5e11;
  s.trap.raman_detuning = 1e11;
  s.trap.separation = 1e-6;
  s.trap.radiation_force = 1e-18;

  s.beam.intensity = 1.0;
  s.beam.pulse_duration = 100e-12;
  s.beam.free_fall_time = 1e-6;
  s.beam.experiment_time = 1e-6;
  s.beam.superposition_size = 1e-14;
  return s;
}

}  // namespace catsim::presets
