#include "catsim/gaussian.hpp"

#include <cmath>

#include "catsim/classical.hpp"
#include "catsim/errors.hpp"

namespace catsim::gaussian {

void to_json(nlohmann::json& j, const CoherentBranch& b) {
  j = nlohmann::json{{"re_alpha", b.alpha.real()},
                     {"im_alpha", b.alpha.imag()},
                     {"re_weight", b.weight.real()},
                     {"im_weight", b.weight.imag()}};
}

void from_json(const nlohmann::json& j, CoherentBranch& b) {
  b.alpha = {j.at("re_alpha").get<double>(), j.at("im_alpha").get<double>()};
  b.weight = {j.at("re_weight").get<double>(), j.at("im_weight").get<double>()};
}

cplx coherent_overlap(cplx a, cplx b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

Composition displace_compose(cplx alpha, cplx beta) {
  return {alpha + beta, (alpha * std::conj(beta)).imag()};
}

CoherentBranch displace(const CoherentBranch& b, cplx shift) {
  const Composition c = displace_compose(shift, b.alpha);
  return {c.gamma, b.weight * std::polar(1.0, c.phase)};
}

double displaced_oscillator_global_phase(double omega, double g, double t) {
  const double delta = g / omega;
  return delta * delta * numeric::x_minus_sin(omega * t);
}

CoherentBranch evolve_displaced_oscillator(const CoherentBranch& b, double omega, double g,
                                           double t) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  const double delta = g / omega;
  const double wt = omega * t;
  // (δ/2)[α*(1 - e^{iωt}) - α(1 - e^{-iωt})] = iδ Im(α*(1 - e^{iωt}))
  const double alpha_phase = delta * (-std::conj(b.alpha) * numeric::expm1i(wt)).imag();
  const double phase = alpha_phase + displaced_oscillator_global_phase(omega, g, t);
  CoherentBranch out;
  out.alpha = classical::evolve_mode_exact(b.alpha, omega, g, t);
  out.weight = b.weight * std::polar(1.0, phase);
  return out;
}

namespace {

Guard make_guard(double value, double limit, const char* what) {
  Guard g;
  g.value = std::abs(value);
  g.limit = limit;
  if (g.value >= limit) {
    g.ok = false;
    g.warning = std::string(what) + " = " + std::to_string(g.value) +
                " exceeds the small-parameter guard " + std::to_string(limit);
  }
  return g;
}

}  // namespace

QuadraticEvolution quadratic_branch_expansion(const CoherentBranch& b, double omega, double g,
                                              double t, double guard) {
  QuadraticEvolution out;
  const double wt = omega * t;
  out.boost_phase = -b.alpha.real() * g * t;
  out.translation_phase = -b.alpha.imag() * omega * g * t * t / 2.0;
  out.branch.alpha = b.alpha * cplx(1.0 - 0.5 * wt * wt, -wt) - kI * g * t - omega * g * t * t / 2.0;
  out.branch.weight = b.weight * std::polar(1.0, out.boost_phase + out.translation_phase);
  out.guard = make_guard(wt, guard, "|omega t|");
  return out;
}

PhysicalPhases boost_translation_phases(double x, double p, double mass, double g_E, double t,
                                        double hbar) {
  return {-(mass / hbar) * x * g_E * t / 2.0, -(p / hbar) * g_E * t * t / 4.0};
}

QuenchParams quench_params(double omega1, double omega2, double delta, double t) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    throw DomainError("quench frequencies must be positive");
  QuenchParams q;
  q.r = 0.5 * std::log(omega2 / omega1);

  // tanh r, sech² r, cosh r, sinh r from the frequency ratio directly
  const double sum = omega1 + omega2;
  const double th = (omega2 - omega1) / sum;
  const double sech2 = 4.0 * omega1 * omega2 / (sum * sum);
  const double root = 2.0 * std::sqrt(omega1 * omega2);
  const double ch = sum / root;
  const double sh = (omega2 - omega1) / root;
  const double th2 = th * th;
  const double w2t = omega2 * t;

  // e^{iθ} tanh|z| = (e^{-2iω₂t} - 1) tanh r / (1 - e^{-2iω₂t} tanh² r)
  const cplx num = numeric::expm1i(-2.0 * w2t) * th;
  const cplx den = sech2 - numeric::expm1i(-2.0 * w2t) * th2;
  const cplx rhs = num / den;
  const double mod = std::abs(rhs);
  if (!(mod < 1.0)) throw DomainError("squeeze parameter diverges (|tanh z| >= 1)");
  const double theta = mod > 0.0 ? std::arg(rhs) : 0.0;
  q.z = std::polar(std::atanh(mod), theta);

  // e^{iφ} = (1 - e^{2iω₂t} tanh² r) / |...| · e^{-iω₂t}
  const cplx phase_num = sech2 - numeric::expm1i(2.0 * w2t) * th2;
  q.phi = numeric::wrap_angle(std::arg(phase_num) - w2t);

  const cplx eps_bracket = ch + std::polar(1.0, -w2t) * sh;
  q.epsilon = delta * std::polar(1.0, q.phi) * (-numeric::expm1i(w2t)) * eps_bracket;
  return q;
}

cplx commute_squeeze_displacement(cplx z, cplx xi) {
  const double mod = std::abs(z);
  const double theta = mod > 0.0 ? std::arg(z) : 0.0;
  return xi * std::cosh(mod) - std::conj(xi) * std::sinh(mod) * std::polar(1.0, theta + kPi);
}

cplx quench_harmonic_amplitude(cplx alpha, double omega1, double omega2, double t) {
  const double w1sq = omega1 * omega1;
  const double w2sq = omega2 * omega2;
  const cplx direct(1.0 - 0.5 * w2sq * t * t, -(w1sq + w2sq) * t / (2.0 * omega1));
  const cplx cross(0.0, (w1sq - w2sq) * t / (2.0 * omega1));
  return alpha * direct + std::conj(alpha) * cross;
}

QuenchEvolution evolve_quench(const CoherentBranch& b, double omega1, double omega2, double g2,
                              double t, double guard) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    throw DomainError("quench frequencies must be positive");
  const double g1 = std::sqrt(omega2 / omega1) * g2;
  QuenchEvolution out;
  out.boost_phase = -b.alpha.real() * g1 * t;
  out.translation_phase = -b.alpha.imag() * omega1 * g1 * t * t / 2.0;
  out.branch.alpha = quench_harmonic_amplitude(b.alpha, omega1, omega2, t) - kI * g1 * t -
                     omega1 * g1 * t * t / 2.0;
  out.branch.weight = b.weight * std::polar(1.0, out.boost_phase + out.translation_phase);
  out.squeeze_magnitude = std::abs(quench_params(omega1, omega2, 0.0, t).z);
  out.guard = make_guard(omega1 * t, guard, "|omega1 t|");
  if (out.guard.warning)
    *out.guard.warning += "; neglected squeezing |z| = " + std::to_string(out.squeeze_magnitude);
  return out;
}

BranchPhase branch_phase_difference(double beta, double g, double t, double omega2) {
  const double phi = g * t * beta;
  return {phi, -phi * (omega2 * t) * (omega2 * t) / 6.0};
}

double gravitational_phase(double mass, double g_E, double dx, double dt, double hbar) {
  return classical::phase_difference_freefall(dx, mass, g_E, dt, hbar);
}

}  // namespace catsim::gaussian
