#include "catsim/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "catsim/csv.hpp"
#include "catsim/errors.hpp"
#include "catsim/gaussian.hpp"
#include "catsim/numeric.hpp"

namespace catsim::feasibility {

double atom_trap_frequency(const AtomSpec& atom, const TrapConfig& trap,
                           const PhysicalConstants& k) {
  if (!(trap.detuning > 0.0)) throw DomainError("trap.detuning: blue-detuned or resonant");
  if (!(trap.intensity > 0.0)) throw DomainError("trap.intensity must be positive");
  if (!(atom.mass > 0.0) || !(atom.transition_frequency > 0.0))
    throw DomainError("atom.mass and atom.transition_frequency must be positive");
  return optical_trap_frequency(atom, trap, k);
}

double trap_lifetime(const AtomSpec& atom, const TrapConfig& trap, const PhysicalConstants& k) {
  if (!(trap.detuning > 0.0)) throw DomainError("trap.detuning: blue-detuned or resonant");
  if (!(trap.wavelength > 0.0)) throw DomainError("trap.wavelength must be positive");
  // ω_l is the trapping laser's own frequency; the detuning enters only
  // through the Δ/Γ factor.
  const double c_over_wl = trap.wavelength / kTwoPi;
  return (atom.mass / k.hbar) * c_over_wl * c_over_wl * (trap.detuning / atom.linewidth);
}

double raman_coupling(const AtomSpec& atom, double beam_intensity, double raman_detuning,
                      const PhysicalConstants& k) {
  if (!(raman_detuning > 0.0)) throw DomainError("trap.raman_detuning must be positive");
  if (!(beam_intensity >= 0.0)) throw DomainError("beam intensity must be non-negative");
  const double field = std::sqrt(2.0 * beam_intensity / (k.eps0 * k.c));
  const double leg = field * atom.dipole_moment / k.hbar;
  return leg * leg / raman_detuning;
}

double superposition_size(const PhysicalScenario& s, double omega_n, double pulse_duration) {
  if (!(omega_n > 0.0)) throw DomainError("omega_n must be positive");
  const auto& k = s.constants;
  const double raman = raman_coupling(s.atom, s.beam.intensity, s.trap.raman_detuning, k);
  return (k.hbar / s.nanoparticle.mass) * s.trap.wavevector() * raman * pulse_duration /
         (2.0 * omega_n);
}

const char* to_string(Grade g) {
  switch (g) {
    case Grade::Pass: return "pass";
    case Grade::Warn: return "warn";
    case Grade::Fail: return "fail";
  }
  return "?";
}

Grade grade_much_less(double margin) {
  if (margin >= kMuchPass) return Grade::Pass;
  if (margin >= kMuchWarn) return Grade::Warn;
  return Grade::Fail;
}

std::vector<Quantity> FeasibilityReport::quantities() const {
  return {{"omega_a", omega_a, "rad/s"},       {"tau_trap", tau_trap, "s"},
          {"lamb_dicke", lamb_dicke, "1"},     {"omega_gg", raman, "rad/s"},
          {"dx_beam", dx_beam, "m"},           {"dx", dx, "m"},
          {"phi_grav", phi_grav, "rad"},       {"phi_cubic", phi_cubic, "rad"}};
}

Grade FeasibilityReport::worst() const {
  Grade w = Grade::Pass;
  for (const auto& v : verdicts) w = std::max(w, v.grade);
  return w;
}

int FeasibilityReport::exit_code() const { return static_cast<int>(worst()); }

std::vector<std::string> FeasibilityReport::failures() const {
  std::vector<std::string> out;
  for (const auto& v : verdicts)
    if (v.grade == Grade::Fail)
      out.push_back(fmt::format("{} ({}; margin {:.3g})", v.name, v.relation, v.margin));
  return out;
}

namespace {

// Typical background gas for the decoherence note.
constexpr double kGasMass = 4.65e-26;  // N₂, kg
constexpr double kGasTemperature = 300.0;

Verdict much_less(std::string name, std::string relation, double small, double large) {
  const double margin = large / small;
  return {std::move(name), std::move(relation), small, large, margin, grade_much_less(margin)};
}

}  // namespace

FeasibilityReport constraint_check(const PhysicalScenario& s) {
  s.validate();
  const auto& k = s.constants;
  const auto& trap = s.trap;
  const double m = s.nanoparticle.mass;
  const double w2 = trap.omega2;
  const double dt = s.beam.free_fall_time;

  FeasibilityReport r;
  r.omega_a = atom_trap_frequency(s.atom, trap, k);
  r.tau_trap = trap_lifetime(s.atom, trap, k);
  r.raman = raman_coupling(s.atom, s.beam.intensity, trap.raman_detuning, k);
  r.lamb_dicke = derive(s, w2).lamb_dicke;
  r.dx_beam = superposition_size(s, w2, s.beam.pulse_duration);
  r.dx = s.beam.superposition_size.value_or(r.dx_beam);
  r.phi_grav = gaussian::gravitational_phase(m, k.g_E, r.dx, dt, k.hbar);
  r.phi_cubic = -r.phi_grav * (w2 * dt) * (w2 * dt) / 6.0;

  const double coupling_bound = (s.atom.mass / m) * r.omega_a;
  r.verdicts.push_back(much_less("coupling", "omega2 << (m_a/m_n) omega_a", w2, coupling_bound));

  const double lamb_bound = k.hbar / (2.0 * m * trap.wavelength * trap.wavelength);
  r.verdicts.push_back(much_less("lamb_dicke_bound", "hbar/(2 m_n lambda^2) << omega2",
                                 lamb_bound, w2));

  {
    Verdict v{"lamb_dicke", "eta < 1 (pass <= 0.3)", r.lamb_dicke, 1.0, 1.0 / r.lamb_dicke,
              Grade::Pass};
    if (r.lamb_dicke >= 1.0) v.grade = Grade::Fail;
    else if (r.lamb_dicke > 0.3) v.grade = Grade::Warn;
    r.verdicts.push_back(v);
  }

  {
    const double texp = s.beam.experiment_time > 0.0 ? s.beam.experiment_time : dt;
    const double margin = r.tau_trap / texp;
    r.verdicts.push_back({"trap_lifetime", "tau_exp <~ tau_trap", texp, r.tau_trap, margin,
                          margin >= 1.0 ? Grade::Pass : Grade::Fail});
  }

  r.verdicts.push_back(much_less("free_fall", "omega2 dt << 1", w2 * dt, 1.0));
  r.verdicts.push_back(much_less("quench", "omega1 dt << 1", trap.omega1 * dt, 1.0));

  const double weight = m * k.g_E;
  if (trap.radiation_force > 0.0) {
    r.verdicts.push_back(much_less("radiation_force", "F << m_n g_E", trap.radiation_force,
                                   weight));
  } else {
    r.verdicts.push_back({"radiation_force", "F << m_n g_E", 0.0, weight,
                          std::numeric_limits<double>::infinity(), Grade::Pass});
  }

  {
    const double ratio = m / s.atom.mass;
    r.verdicts.push_back({"mass_ratio", "m_n/m_a >= 1e6", 1e6, ratio, ratio / 1e6,
                          ratio >= 1e6 ? Grade::Pass : Grade::Warn});
  }

  // Informational notes.
  r.notes.push_back(fmt::format(
      "coupling bound with omega_a read as a frequency in Hz (omega_a/2pi): {:.4g} rad/s",
      coupling_bound / kTwoPi));
  const double gas_wavelength =
      kTwoPi * k.hbar / std::sqrt(kTwoPi * kGasMass * k.k_B * kGasTemperature);
  r.notes.push_back(fmt::format(
      "thermal wavelength of N2 at {:g} K is {:.3g} m, {} the superposition size {:.3g} m",
      kGasTemperature, gas_wavelength, gas_wavelength > r.dx ? "above" : "below", r.dx));
  if (s.beam.superposition_size)
    r.notes.push_back(fmt::format("phase uses the configured superposition size; the beam "
                                  "parameters give {:.4g} m",
                                  r.dx_beam));
  for (const auto& w : s.warnings()) r.notes.push_back(w);
  return r;
}

void write_table(std::ostream& os, const FeasibilityReport& r) {
  os << fmt::format("{:<12} {:>14}  {}\n", "quantity", "value", "unit");
  for (const auto& q : r.quantities())
    os << fmt::format("{:<12} {:>14.6g}  {}\n", q.name, q.value, q.unit);
  os << '\n';
  os << fmt::format("{:<18} {:<32} {:>12} {:>12} {:>10}  {}\n", "constraint", "relation", "lhs",
                    "rhs", "margin", "verdict");
  for (const auto& v : r.verdicts)
    os << fmt::format("{:<18} {:<32} {:>12.4g} {:>12.4g} {:>10.4g}  {}\n", v.name, v.relation,
                      v.lhs, v.rhs, v.margin, to_string(v.grade));
  if (!r.notes.empty()) {
    os << '\n';
    for (const auto& n : r.notes) os << "note: " << n << '\n';
  }
}

void write_csv(std::ostream& os, const FeasibilityReport& r) {
  os << "kind,name,relation,lhs,rhs,margin,verdict\n";
  for (const auto& q : r.quantities())
    os << "quantity," << q.name << ',' << q.unit << ',' << csv::num(q.value) << ",,,\n";
  for (const auto& v : r.verdicts)
    os << "constraint," << v.name << ",\"" << v.relation << "\"," << csv::num(v.lhs) << ','
       << csv::num(v.rhs) << ',' << csv::num(v.margin) << ',' << to_string(v.grade) << '\n';
}

}  // namespace catsim::feasibility
