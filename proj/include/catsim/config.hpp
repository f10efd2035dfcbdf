#pragma once

// Scenario documents are JSON with the unit in every key name, e.g.
//
//   { "nanoparticle": { "radius_m": 5e-7, "mass_kg": 1e-15 }, ... }
//
// Frequencies may be given either as "<name>_rad_per_s" or "<name>_Hz"; Hz
// values are multiplied by 2π here and nowhere else. Unknown keys and
// missing required keys are errors that carry the JSON path.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "catsim/params.hpp"

namespace catsim::config {

/// Sections that are not part of the physical scenario but may live in the
/// same document (e.g. "transient").
inline constexpr const char* kAuxiliarySections[] = {"transient"};

PhysicalScenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const PhysicalScenario& s);

nlohmann::json read_json_file(const std::filesystem::path& path);
PhysicalScenario load_scenario(const std::filesystem::path& path);

/// Applies "section.key=value" to a document. The value is parsed as JSON
/// (numbers, booleans, null) and falls back to a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace catsim::config

#include "catsim/classical.hpp"

namespace catsim::config {

struct TransientRun {
  classical::TransientSpec spec;
  std::size_t points = 2001;
  double periods = 1.0;  // t_f = periods · 2π/ω

  double t_end() const { return periods * spec.period(); }
};

/// Reads the "transient" section: mass_kg, omega_rad_per_s | omega_Hz,
/// superposition_size_m, and optionally initial_momentum_kgms,
/// initial_height_m, g_E_m_per_s2, points, periods.
TransientRun transient_from_json(const nlohmann::json& doc);

}  // namespace catsim::config
