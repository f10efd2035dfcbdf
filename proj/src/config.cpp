#include "catsim/config.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "catsim/errors.hpp"
#include "catsim/numeric.hpp"

namespace catsim::config {

using nlohmann::json;

namespace {

enum class Unit { Plain, Frequency };

struct Field {
  std::string key;  // without unit suffix for frequencies
  Unit unit;
  bool required;
  double* target;
  std::optional<double>* optional_target = nullptr;
};

// Reads one section, collecting every problem before throwing so the user
// sees the whole list at once.
void read_section(const json& doc, const std::string& name, std::vector<Field> fields,
                  bool section_required, std::vector<std::string>& errors) {
  if (!doc.contains(name)) {
    if (section_required) {
      for (const auto& f : fields)
        if (f.required)
          errors.push_back("missing required key: " + name + "." + f.key +
                           (f.unit == Unit::Frequency ? "_rad_per_s" : ""));
    }
    return;
  }
  const json& sec = doc.at(name);
  if (!sec.is_object()) {
    errors.push_back(name + ": expected an object");
    return;
  }

  std::set<std::string> known;
  for (auto& f : fields) {
    std::vector<std::pair<std::string, double>> keys;
    if (f.unit == Unit::Frequency) {
      keys = {{f.key + "_rad_per_s", 1.0}, {f.key + "_Hz", kTwoPi}};
    } else {
      keys = {{f.key, 1.0}};
    }
    int found = 0;
    for (const auto& [k, scale] : keys) {
      known.insert(k);
      if (!sec.contains(k)) continue;
      ++found;
      const json& v = sec.at(k);
      if (v.is_null() && f.optional_target) continue;
      if (!v.is_number()) {
        errors.push_back(name + "." + k + ": expected a number");
        continue;
      }
      const double value = v.get<double>() * scale;
      if (f.optional_target)
        *f.optional_target = value;
      else
        *f.target = value;
    }
    if (found > 1)
      errors.push_back(name + "." + f.key + ": given in more than one unit");
    if (found == 0 && f.required)
      errors.push_back("missing required key: " + name + "." + keys.front().first);
  }
  for (const auto& [k, v] : sec.items()) {
    if (!known.count(k)) errors.push_back("unknown key: " + name + "." + k);
  }
}

}  // namespace

PhysicalScenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration root must be a JSON object");

  PhysicalScenario s;
  std::vector<std::string> errors;

  static const std::set<std::string> sections = {"constants", "atom", "nanoparticle",
                                                 "trap", "protocol"};
  for (const auto& [k, v] : doc.items()) {
    bool aux = false;
    for (const char* a : kAuxiliarySections) aux = aux || k == a;
    if (!sections.count(k) && !aux) errors.push_back("unknown key: " + k);
  }

  read_section(doc, "constants",
               {{"hbar_Js", Unit::Plain, false, &s.constants.hbar},
                {"c_m_per_s", Unit::Plain, false, &s.constants.c},
                {"g_E_m_per_s2", Unit::Plain, false, &s.constants.g_E},
                {"eps0_F_per_m", Unit::Plain, false, &s.constants.eps0},
                {"q_e_C", Unit::Plain, false, &s.constants.q_e},
                {"k_B_J_per_K", Unit::Plain, false, &s.constants.k_B}},
               false, errors);

  // The transition may be given as a wavelength instead of a frequency.
  double transition_wavelength = 0.0;
  read_section(doc, "atom",
               {{"mass_kg", Unit::Plain, true, &s.atom.mass},
                {"transition_frequency", Unit::Frequency, false, &s.atom.transition_frequency},
                {"transition_wavelength_m", Unit::Plain, false, &transition_wavelength},
                {"linewidth", Unit::Frequency, true, &s.atom.linewidth},
                {"dipole_moment_Cm", Unit::Plain, true, &s.atom.dipole_moment}},
               true, errors);
  if (doc.contains("atom") && doc["atom"].is_object()) {
    const auto& a = doc["atom"];
    const bool has_freq = a.contains("transition_frequency_rad_per_s") ||
                          a.contains("transition_frequency_Hz");
    const bool has_wl = a.contains("transition_wavelength_m");
    if (has_freq && has_wl)
      errors.push_back("atom: give either transition_frequency or transition_wavelength_m");
    else if (!has_freq && !has_wl)
      errors.push_back("missing required key: atom.transition_wavelength_m");
    else if (has_wl && transition_wavelength > 0.0)
      s.atom.transition_frequency = kTwoPi * s.constants.c / transition_wavelength;
  } else {
    errors.push_back("missing required key: atom.transition_wavelength_m");
  }

  read_section(doc, "nanoparticle",
               {{"radius_m", Unit::Plain, true, &s.nanoparticle.radius},
                {"mass_kg", Unit::Plain, true, &s.nanoparticle.mass}},
               true, errors);

  read_section(doc, "trap",
               {{"omega1", Unit::Frequency, true, &s.trap.omega1},
                {"omega2", Unit::Frequency, true, &s.trap.omega2},
                {"wavelength_m", Unit::Plain, true, &s.trap.wavelength},
                {"intensity_W_per_m2", Unit::Plain, true, &s.trap.intensity},
                {"detuning", Unit::Frequency, true, &s.trap.detuning},
                {"raman_detuning", Unit::Frequency, true, &s.trap.raman_detuning},
                {"raman_wavevector_rad_per_m", Unit::Plain, false, &s.trap.raman_wavevector},
                {"separation_m", Unit::Plain, false, &s.trap.separation},
                {"radiation_force_N", Unit::Plain, true, &s.trap.radiation_force},
                {"trap_width_m", Unit::Plain, false, &s.trap.trap_width},
                {"laser_phase_rad", Unit::Plain, false, &s.trap.laser_phase}},
               true, errors);

  read_section(doc, "protocol",
               {{"beam_intensity_W_per_m2", Unit::Plain, true, &s.beam.intensity},
                {"pulse_duration_s", Unit::Plain, true, &s.beam.pulse_duration},
                {"free_fall_time_s", Unit::Plain, true, &s.beam.free_fall_time},
                {"experiment_time_s", Unit::Plain, false, &s.beam.experiment_time},
                {"superposition_size_m", Unit::Plain, false, nullptr,
                 &s.beam.superposition_size}},
               true, errors);
  if (s.beam.experiment_time == 0.0) s.beam.experiment_time = s.beam.free_fall_time;

  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& e : errors) os << "\n  " << e;
    throw ConfigError(os.str());
  }
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return s;
}

json scenario_to_json(const PhysicalScenario& s) {
  json j;
  j["constants"] = {{"hbar_Js", s.constants.hbar},
                    {"c_m_per_s", s.constants.c},
                    {"g_E_m_per_s2", s.constants.g_E},
                    {"eps0_F_per_m", s.constants.eps0},
                    {"q_e_C", s.constants.q_e},
                    {"k_B_J_per_K", s.constants.k_B}};
  j["atom"] = {{"mass_kg", s.atom.mass},
               {"transition_frequency_rad_per_s", s.atom.transition_frequency},
               {"linewidth_rad_per_s", s.atom.linewidth},
               {"dipole_moment_Cm", s.atom.dipole_moment}};
  j["nanoparticle"] = {{"radius_m", s.nanoparticle.radius}, {"mass_kg", s.nanoparticle.mass}};
  j["trap"] = {{"omega1_rad_per_s", s.trap.omega1},
               {"omega2_rad_per_s", s.trap.omega2},
               {"wavelength_m", s.trap.wavelength},
               {"intensity_W_per_m2", s.trap.intensity},
               {"detuning_rad_per_s", s.trap.detuning},
               {"raman_detuning_rad_per_s", s.trap.raman_detuning},
               {"raman_wavevector_rad_per_m", s.trap.raman_wavevector},
               {"separation_m", s.trap.separation},
               {"radiation_force_N", s.trap.radiation_force},
               {"trap_width_m", s.trap.trap_width},
               {"laser_phase_rad", s.trap.laser_phase}};
  j["protocol"] = {{"beam_intensity_W_per_m2", s.beam.intensity},
                   {"pulse_duration_s", s.beam.pulse_duration},
                   {"free_fall_time_s", s.beam.free_fall_time},
                   {"experiment_time_s", s.beam.experiment_time}};
  if (s.beam.superposition_size)
    j["protocol"]["superposition_size_m"] = *s.beam.superposition_size;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

PhysicalScenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path));
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like section.key=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) throw ConfigError("empty path component in override: " + assignment);
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

}  // namespace catsim::config

namespace catsim::config {

TransientRun transient_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("transient"))
    throw ConfigError("missing required key: transient");
  const json& sec = doc.at("transient");
  if (!sec.is_object()) throw ConfigError("transient: expected an object");

  TransientRun run;
  std::vector<std::string> errors;
  static const std::set<std::string> known = {
      "mass_kg",       "omega_rad_per_s", "omega_Hz", "superposition_size_m",
      "initial_momentum_kgms", "initial_height_m", "g_E_m_per_s2", "points", "periods"};
  for (const auto& [k, v] : sec.items())
    if (!known.count(k)) errors.push_back("unknown key: transient." + k);

  auto number = [&](const std::string& key, bool required) -> std::optional<double> {
    if (!sec.contains(key)) {
      if (required) errors.push_back("missing required key: transient." + key);
      return std::nullopt;
    }
    if (!sec.at(key).is_number()) {
      errors.push_back("transient." + key + ": expected a number");
      return std::nullopt;
    }
    return sec.at(key).get<double>();
  };

  if (auto v = number("mass_kg", true)) run.spec.mass = *v;
  const bool rad = sec.contains("omega_rad_per_s");
  const bool hz = sec.contains("omega_Hz");
  if (rad && hz) errors.push_back("transient.omega: given in more than one unit");
  if (auto v = number(hz ? "omega_Hz" : "omega_rad_per_s", true))
    run.spec.omega = hz ? kTwoPi * *v : *v;
  if (auto v = number("superposition_size_m", true)) run.spec.dx = *v;
  if (auto v = number("initial_momentum_kgms", false)) run.spec.p20 = *v;
  if (auto v = number("initial_height_m", false)) run.spec.x20 = *v;
  if (auto v = number("g_E_m_per_s2", false)) run.spec.g_E = *v;
  if (auto v = number("points", false)) {
    if (*v < 2 || *v != std::floor(*v)) errors.push_back("transient.points: integer >= 2");
    else run.points = static_cast<std::size_t>(*v);
  }
  if (auto v = number("periods", false)) run.periods = *v;

  if (errors.empty()) {
    if (!(run.spec.mass > 0.0)) errors.push_back("transient.mass_kg must be positive");
    if (!(run.spec.omega > 0.0)) errors.push_back("transient.omega must be positive");
    if (!(run.spec.dx >= 0.0)) errors.push_back("transient.superposition_size_m must be >= 0");
    if (!(run.periods > 0.0)) errors.push_back("transient.periods must be positive");
  }
  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& e : errors) os << "\n  " << e;
    throw ConfigError(os.str());
  }
  return run;
}

}  // namespace catsim::config
