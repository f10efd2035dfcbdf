#pragma once

// Coherent-state algebra and the closed-form quantum evolutions of a trapped
// mode under gravity: the displaced oscillator, its quadratic-in-time
// expansion, and the sudden frequency-plus-equilibrium quench through its
// squeeze-displace-rotate decomposition.
//
// Global phases are carried in CoherentBranch::weight; the interferometer's
// observable is a relative phase between branches, so nothing is dropped.

#include <optional>
#include <string>

#include <json.hpp>

#include "catsim/numeric.hpp"
#include "catsim/params.hpp"

namespace catsim::gaussian {

struct CoherentBranch {
  cplx alpha{0.0, 0.0};
  cplx weight{1.0, 0.0};
};

void to_json(nlohmann::json& j, const CoherentBranch& b);
void from_json(const nlohmann::json& j, CoherentBranch& b);

/// <a|b> for normalised coherent states.
cplx coherent_overlap(cplx a, cplx b);

struct Composition {
  cplx gamma;    // α + β
  double phase;  // Im(αβ*)
};

/// D(α)D(β) = e^{i Im(αβ*)} D(α+β)
Composition displace_compose(cplx alpha, cplx beta);

/// D(shift)|α> with the composition phase folded into the weight.
CoherentBranch displace(const CoherentBranch& b, cplx shift);

/// Exact evolution of |α> under H/ħ = ω a†a + g(a + a†). Includes the
/// α-independent phase (g/ω)²(ωt - sin ωt). Throws DomainError for ω <= 0.
CoherentBranch evolve_displaced_oscillator(const CoherentBranch& b, double omega, double g,
                                           double t);

/// The α-independent part of the phase above.
double displaced_oscillator_global_phase(double omega, double g, double t);

struct Guard {
  double value = 0.0;  // |ωt|
  double limit = 0.1;
  bool ok = true;
  std::optional<std::string> warning;
};

struct QuadraticEvolution {
  CoherentBranch branch;
  double boost_phase = 0.0;        // -Re(α) g t
  double translation_phase = 0.0;  // -Im(α) ω g t²/2
  Guard guard;
};

/// Second-order (in t) evolution under the same Hamiltonian.
QuadraticEvolution quadratic_branch_expansion(const CoherentBranch& b, double omega, double g,
                                              double t, double guard = 0.1);

struct PhysicalPhases {
  double boost = 0.0;        // -x m g_E t / (2ħ)
  double translation = 0.0;  // -p g_E t² / (4ħ)
};

/// The boost and translation phases written with physical position and
/// momentum; they do not depend on the trap frequency.
PhysicalPhases boost_translation_phases(double x, double p, double mass, double g_E, double t,
                                        double hbar = kCodata.hbar);

struct QuenchParams {
  cplx z{0.0, 0.0};        // dynamical squeeze |z|e^{iθ}, θ ∈ (-π, π]
  cplx epsilon{0.0, 0.0};  // displacement
  double phi = 0.0;        // rotation
  double r = 0.0;          // static squeeze ½ ln(ω₂/ω₁)
};

/// Parameters of |α> -> S(z)D(ε)R(φ)|α> for a sudden switch ω₁ -> ω₂ with
/// the equilibrium moving by δ (in ω₂ zero-point units) at t = 0. Throws
/// DomainError for non-positive frequencies or when |z| diverges.
QuenchParams quench_params(double omega1, double omega2, double delta, double t);

/// γ with S(z)D(ξ) = D(γ)S(z).
cplx commute_squeeze_displacement(cplx z, cplx xi);

/// Harmonic part of the quench mode amplitude to O(t²):
/// α[1 - i(ω₁²+ω₂²)t/(2ω₁) - ω₂²t²/2] + α* i(ω₁²-ω₂²)t/(2ω₁).
cplx quench_harmonic_amplitude(cplx alpha, double omega1, double omega2, double t);

struct QuenchEvolution {
  CoherentBranch branch;
  double boost_phase = 0.0;
  double translation_phase = 0.0;
  double squeeze_magnitude = 0.0;  // |z| that the expansion neglects
  Guard guard;                     // on ω₁t
};

/// O(t²) evolution across the quench with squeezing neglected. The branch
/// amplitude is expressed in the ω₁ mode; g2 = g_E sqrt(m/(2ħω₂)).
QuenchEvolution evolve_quench(const CoherentBranch& b, double omega1, double omega2, double g2,
                              double t, double guard = 0.1);

struct BranchPhase {
  double phi_grav = 0.0;   // g t β
  double phi_cubic = 0.0;  // -g ω₂² t³ β / 6
};

/// Gravitational phase between the branches of a superposition whose
/// displacement parameter is β (separation Δx = δ β).
BranchPhase branch_phase_difference(double beta, double g, double t, double omega2);

/// m g_E Δx Δt / ħ
double gravitational_phase(double mass, double g_E, double dx, double dt,
                           double hbar = kCodata.hbar);

}  // namespace catsim::gaussian
