#pragma once

#include "catsim/params.hpp"

namespace catsim::presets {

/// Cs atom (D2 line) coupled to a 500 nm silica nanoparticle with the
/// tabletop numbers used for the φ_grav ~ 1 budget. Mirrors
/// presets/discussion.json.
PhysicalScenario discussion();

/// Cs D2 line.
AtomSpec cesium_d2(const PhysicalConstants& k = kCodata);

}  // namespace catsim::presets
