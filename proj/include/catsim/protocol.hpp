#pragma once

// The interferometric protocol as a state machine over hybrid states of the
// atom's hyperfine qubit and the nanoparticle's centre-of-mass mode. Pulses
// are instantaneous ideal maps; the motional parts are coherent states
// tracked in closed form.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catsim/gaussian.hpp"
#include "catsim/params.hpp"

namespace catsim::protocol {

enum class Level { Down, Up };
const char* to_string(Level l);

struct Branch {
  Level level = Level::Down;
  gaussian::CoherentBranch motion;
};

// Usually one branch per level. A level may hold two branches whose motional
// amplitudes differ (imperfect disentangling); norm and populations then
// include the coherent-state overlaps.
struct HybridState {
  std::vector<Branch> branches;

  static HybridState product(Level level, cplx alpha);

  double norm_squared() const;
  double population(Level level) const;
  /// Combined weight of a level when all its branches share one amplitude.
  std::optional<cplx> level_weight(Level level) const;
  const Branch* find(Level level) const;
};

/// Branches on the same level whose amplitudes agree within `tol` are merged
/// by adding their weights.
HybridState merge(const HybridState& s, double tol = 1e-9);

/// Beam splitter with laser phase ϕ: |↓> -> (|↓> + e^{iϕ}|↑>)/√2,
/// |↑> -> (|↑> - e^{-iϕ}|↓>)/√2. At ϕ = 0 this is the carrier π/2 map.
HybridState pi_half_pulse(const HybridState& s, double laser_phase = 0.0);

/// |↓> -> e^{iϕ}|↑>, |↑> -> -e^{-iϕ}|↓>.
HybridState pi_pulse(const HybridState& s, double laser_phase = 0.0);

/// Displaces the motion of the branches on `target` by the coherent shift
/// (D(shift) acting on the left, composition phase included).
HybridState displacement_beam(const HybridState& s, cplx shift, Level target = Level::Down);

struct FreeFallOptions {
  double guard = 0.1;
};

struct FreeFallResult {
  HybridState state;
  std::vector<std::string> warnings;
};

/// Evolves every branch through the trap release (ω₁ -> ω₂ with gravity
/// switched on) for Δt. Throws ProtocolError when the radiation-pressure
/// force is not small (F >= 0.1 m g_E).
FreeFallResult free_fall_segment(const HybridState& s, const PhysicalScenario& scenario,
                                 double dt, const FreeFallOptions& opt = {});

struct Readout {
  double p_down = 0.0;
  double visibility = 1.0;  // |<α_↓|α_↑>| of the motional parts
  double residual = 0.0;    // |α_↓ - α_↑|
  bool reduced_visibility = false;
};

Readout readout(const HybridState& s);

struct StepRecord {
  int step = 0;
  std::string name;
  HybridState state;
};

struct ProtocolOptions {
  bool exact_phase = true;  // undo the displacement with the evolved shift
  bool force = false;       // run even if feasibility reports failures
  std::optional<double> beta;  // displacement parameter β (coherent shift β/2)
  bool include_cubic = false;
  double guard = 0.1;
  bool keep_log = true;
};

struct ProtocolResult {
  HybridState final_state;
  double phi_grav = 0.0;           // extracted from the branch weights
  double phi_expected = 0.0;       // g t β
  double phi_cubic = 0.0;
  double beta = 0.0;
  double p_down = 0.0;
  double visibility = 1.0;
  double residual = 0.0;
  double norm_error = 0.0;         // max |1 - norm²| over the steps
  cplx initial_alpha{0.0, 0.0};
  std::vector<StepRecord> log;
  std::vector<std::string> warnings;
};

/// Displacement parameter β for the scenario: Δx/δ₁ with δ₁ the zero-point
/// motion in the stiff trap and Δx either configured or derived from the
/// beam at ω₂.
double displacement_parameter(const PhysicalScenario& s);

/// Steps 2 to 9 for an initial coherent state |↓>|α>. Throws ProtocolError
/// if feasibility reports failures and opt.force is not set.
ProtocolResult run_protocol(const PhysicalScenario& s, cplx alpha,
                            const ProtocolOptions& opt = {});

struct ThermalSpec {
  double nbar = 0.0;
  std::uint64_t seed = 0;
  std::size_t count = 0;
};

struct ThermalSummary {
  std::vector<ProtocolResult> runs;  // logs dropped
  double p_down_mean = 0.0;
  double p_down_std = 0.0;
  double phi_mean = 0.0;
  double phi_max_dev = 0.0;  // max |φ_i - φ_0|
};

/// Initial amplitudes drawn from the thermal P-function (complex Gaussian,
/// variance n̄/2 per quadrature) in sequence from one seeded generator.
std::vector<cplx> sample_thermal(const ThermalSpec& spec);

/// Runs are OpenMP-parallel; the serial variant is the reference.
ThermalSummary run_thermal(const PhysicalScenario& s, const ThermalSpec& spec,
                           const ProtocolOptions& opt = {});
ThermalSummary run_thermal_serial(const PhysicalScenario& s, const ThermalSpec& spec,
                                  const ProtocolOptions& opt = {});

nlohmann::json step_to_json(const StepRecord& r);
void write_log_jsonl(std::ostream& os, const std::vector<StepRecord>& log);
void write_summary_csv(std::ostream& os, const std::vector<ProtocolResult>& runs);

}  // namespace catsim::protocol
