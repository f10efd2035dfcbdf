#include <doctest.h>

#include <cmath>

#include "catsim/classical.hpp"
#include "catsim/errors.hpp"
#include "catsim/gaussian.hpp"
#include "catsim/params.hpp"

using namespace catsim;
using namespace catsim::gaussian;
using doctest::Approx;

TEST_SUITE("gaussian") {
  TEST_CASE("displacement composition") {
    const cplx a(0.3, -0.7);
    auto c = displace_compose(a, 0.0);
    CHECK(c.gamma == a);
    CHECK(c.phase == 0.0);
    c = displace_compose(a, -a);
    CHECK(std::abs(c.gamma) == 0.0);
    CHECK(c.phase == Approx(0.0));
    c = displace_compose(1.0, cplx(0.0, 1.0));
    CHECK(c.gamma == cplx(1.0, 1.0));
    CHECK(c.phase == Approx(-1.0));
  }

  TEST_CASE("composition is associative up to phase bookkeeping") {
    const cplx a(0.4, 0.1), b(-0.2, 0.9), g(1.3, -0.5);
    const auto ab = displace_compose(a, b);
    const auto left = displace_compose(ab.gamma, g);
    const auto bg = displace_compose(b, g);
    const auto right = displace_compose(a, bg.gamma);
    CHECK(numeric::wrap_angle(ab.phase + left.phase - bg.phase - right.phase) ==
          Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(left.gamma - right.gamma) < 1e-15);
  }

  TEST_CASE("displace carries the phase of D(shift) on the left") {
    const CoherentBranch b{cplx(0.5, 0.25), 1.0};
    const auto d = displace(b, 0.1);
    CHECK(d.alpha == cplx(0.6, 0.25));
    CHECK(std::arg(d.weight) == Approx((0.1 * std::conj(b.alpha)).imag()));
  }

  TEST_CASE("coherent overlap") {
    CHECK(std::abs(coherent_overlap(0.3, 0.3) - 1.0) < 1e-15);
    const cplx ov = coherent_overlap(1.0, cplx(0.0, 1.0));
    CHECK(std::abs(ov) == Approx(std::exp(-1.0)));
    CHECK(std::arg(ov) == Approx(1.0));  // Im(a* b)
  }

  TEST_CASE("displaced oscillator") {
    const CoherentBranch b{cplx(0.8, -0.3), 1.0};
    const auto free = evolve_displaced_oscillator(b, 2.0, 0.0, 0.7);
    CHECK(std::abs(free.alpha - b.alpha * std::polar(1.0, -1.4)) < 1e-15);
    CHECK(free.weight == cplx(1.0, 0.0));

    const double w = 1.3, g = 0.4;
    const auto period = evolve_displaced_oscillator(b, w, g, kTwoPi / w);
    CHECK(std::abs(period.alpha - b.alpha) < 1e-14);
    // only the α-independent term survives a full period: 2π(g/ω)²
    const double delta = g / w;
    CHECK(numeric::wrap_angle(std::arg(period.weight) - kTwoPi * delta * delta) ==
          Approx(0.0).epsilon(1e-12));

    for (double t : {0.1, 1.0, 7.0}) {
      const auto e = evolve_displaced_oscillator(b, w, g, t);
      CHECK(std::abs(std::abs(e.weight) - 1.0) < 1e-12);
      CHECK(std::abs(e.alpha - classical::evolve_mode_exact(b.alpha, w, g, t)) == 0.0);
    }
    CHECK_THROWS_AS(evolve_displaced_oscillator(b, 0.0, g, 1.0), DomainError);
    CHECK_THROWS_AS(evolve_displaced_oscillator(b, -1.0, g, 1.0), DomainError);
  }

  TEST_CASE("quadratic expansion") {
    const double w = 1e-3, g = 1e-2, t = 1.0;
    const CoherentBranch real{0.9, 1.0};
    const auto r = quadratic_branch_expansion(real, w, g, t);
    CHECK(r.translation_phase == 0.0);
    CHECK(r.boost_phase == Approx(-0.9 * g * t));
    const auto id = quadratic_branch_expansion(real, w, g, 0.0);
    CHECK(id.branch.alpha == real.alpha);
    CHECK(id.branch.weight == real.weight);

    for (cplx a : {cplx(0.9, 0.0), cplx(0.0, 1.0), cplx(0.7, -0.7)}) {
      const CoherentBranch b{a, 1.0};
      const auto q = quadratic_branch_expansion(b, w, g, t);
      const auto e = evolve_displaced_oscillator(b, w, g, t);
      CHECK(std::abs(q.branch.alpha - e.alpha) < 1e-8);
      const double dphi = std::arg(e.weight) - displaced_oscillator_global_phase(w, g, t) -
                          std::arg(q.branch.weight);
      CHECK(std::abs(numeric::wrap_angle(dphi)) < 1e-8);
      CHECK(q.guard.ok);
    }
    const auto far = quadratic_branch_expansion(real, 1.0, g, 0.2);
    CHECK_FALSE(far.guard.ok);
    CHECK(far.guard.warning.has_value());
  }

  TEST_CASE("physical form of the boost and translation phases") {
    const double m = 1e-15, w = 5e-6, gE = 9.81, t = 1e-6;
    const double g = gravitational_coupling(m, w, gE);
    const classical::PhaseSpacePoint s{3e-9, -4e-23};
    const cplx a = classical::to_adimensional(s, m, w).mode();
    const auto q = quadratic_branch_expansion({a, 1.0}, w, g, t);
    const auto p = boost_translation_phases(s.x, s.p, m, gE, t);
    CHECK(q.boost_phase == Approx(p.boost).epsilon(1e-12));
    CHECK(q.translation_phase == Approx(p.translation).epsilon(1e-12));
  }

  TEST_CASE("quench parameters") {
    const auto zero = quench_params(100.0, 5e-6, 3.0, 0.0);
    CHECK(zero.z == cplx(0.0, 0.0));
    CHECK(std::abs(zero.epsilon) == 0.0);
    CHECK(zero.phi == 0.0);
    CHECK(zero.r == Approx(0.5 * std::log(5e-8)));

    // equal frequencies: no squeezing, pure equilibrium shift
    const double w = 0.7, delta = 0.3, t = 0.4;
    const auto eq = quench_params(w, w, delta, t);
    CHECK(eq.r == 0.0);
    CHECK(std::abs(eq.z) == 0.0);
    CHECK(eq.phi == Approx(-w * t));
    CHECK(std::abs(eq.epsilon - delta * numeric::expm1i(-w * t)) < 1e-15);

    // short times: z ≈ i t (ω₁² - ω₂²)/(2ω₁)
    const double w1 = 1.0, w2 = 0.01;
    const double ts = 1e-3;
    const auto small = quench_params(w1, w2, 1.0, ts);
    const cplx series(0.0, ts * (w1 * w1 - w2 * w2) / (2 * w1));
    CHECK(std::abs(small.z - series) < 2e-3 * std::abs(series));
    CHECK(std::arg(small.z) == Approx(kPi / 2).epsilon(1e-3));
    CHECK(std::arg(small.z) <= kPi);

    // extreme ratio stays finite
    const auto disc = quench_params(100.0, 5e-6, 1e18, 1e-6);
    CHECK(std::isfinite(std::abs(disc.z)));
    CHECK(std::abs(disc.z) == Approx(100.0 * 1e-6 / 2).epsilon(1e-6));

    CHECK_THROWS_AS(quench_params(0.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(quench_params(1.0, -1.0, 1.0, 1.0), DomainError);
  }

  TEST_CASE("squeeze-displacement commutation, trivial cases") {
    CHECK(commute_squeeze_displacement(0.0, cplx(0.3, 0.2)) == cplx(0.3, 0.2));
    CHECK(commute_squeeze_displacement(cplx(0.0, 0.4), 0.0) == cplx(0.0, 0.0));
    // real ξ, z = r e^{iθ}: γ = ξ(cosh r + e^{iθ} sinh r)
    const cplx g = commute_squeeze_displacement(std::polar(0.3, 0.5), 1.0);
    CHECK(std::abs(g - (std::cosh(0.3) + std::polar(1.0, 0.5) * std::sinh(0.3))) < 1e-15);
  }

  TEST_CASE("quench evolution reduces to the equal-frequency expansion") {
    for (cplx a : {cplx(0.0, 0.0), cplx(1.0, 0.5), cplx(-0.3, 2.0)}) {
      for (double t : {0.0, 0.01, 0.05}) {
        const auto q = evolve_quench({a, 1.0}, 1.0, 1.0, 0.2, t);
        const auto e = quadratic_branch_expansion({a, 1.0}, 1.0, 0.2, t);
        CHECK(std::abs(q.branch.alpha - e.branch.alpha) < 1e-15);
        CHECK(std::abs(q.branch.weight - e.branch.weight) < 1e-15);
      }
    }
    const auto vac = evolve_quench({0.0, 1.0}, 100.0, 5e-6, 1e10, 1e-6);
    CHECK(vac.branch.weight == cplx(1.0, 0.0));
  }

  TEST_CASE("quench guard reports the neglected squeezing") {
    const auto q = evolve_quench({0.5, 1.0}, 100.0, 1.0, 1.0, 0.01);
    CHECK_FALSE(q.guard.ok);
    REQUIRE(q.guard.warning.has_value());
    CHECK(q.guard.warning->find("|z|") != std::string::npos);
    CHECK(q.squeeze_magnitude > 0.4);
  }

  TEST_CASE("the quench phases do not depend on the trap frequencies") {
    const double m = 1e-15, gE = 9.81, t = 1e-6, hbar = kCodata.hbar;
    const classical::PhaseSpacePoint s{2e-9, 3e-23};
    double reference_boost = 0.0, reference_translation = 0.0;
    bool first = true;
    for (auto [w1, w2] : {std::pair{100.0, 5e-6}, std::pair{37.0, 2e-3}, std::pair{1e3, 1.0}}) {
      const double g2 = gravitational_coupling(m, w2, gE, hbar);
      const cplx a = classical::to_adimensional(s, m, w1, hbar).mode();
      const auto q = evolve_quench({a, 1.0}, w1, w2, g2, t);
      if (first) {
        reference_boost = q.boost_phase;
        reference_translation = q.translation_phase;
        first = false;
      }
      CHECK(std::abs(q.boost_phase - reference_boost) < 1e-10);
      CHECK(std::abs(q.translation_phase - reference_translation) < 1e-10);
    }
    const auto p = boost_translation_phases(s.x, s.p, m, gE, t, hbar);
    CHECK(reference_boost == Approx(p.boost).epsilon(1e-12));
    CHECK(reference_translation == Approx(p.translation).epsilon(1e-12));
  }

  TEST_CASE("branch phase difference") {
    const auto zero = branch_phase_difference(0.0, 1e9, 1e-6, 5e-6);
    CHECK(zero.phi_grav == 0.0);
    CHECK(zero.phi_cubic == 0.0);
    CHECK(gravitational_phase(1e-15, 9.81, 1e-14, 1e-6) ==
          Approx(0.9302353658480141).epsilon(1e-13));
    const auto d = branch_phase_difference(4e-4, 2.1e9, 1e-6, 5e-6);
    CHECK(d.phi_cubic / d.phi_grav == Approx(-4.1666667e-24).epsilon(1e-7));
    // g t β is basis independent: Δx/δ with g ∝ 1/√ω and δ ∝ 1/√ω
    const double m = 1e-15, gE = 9.81, dx = 1e-14;
    for (double w : {100.0, 5e-6}) {
      const double delta = zero_point_position(m, w);
      const double g = gravitational_coupling(m, w, gE);
      CHECK(branch_phase_difference(dx / delta, g, 1e-6, 5e-6).phi_grav ==
            Approx(0.9302353658480141).epsilon(1e-13));
    }
  }

  TEST_CASE("JSON serialisation") {
    const CoherentBranch b{cplx(0.1, -0.2), cplx(0.6, 0.8)};
    const nlohmann::json j = b;
    CHECK(j.at("re_alpha") == 0.1);
    CHECK(j.at("im_weight") == 0.8);
    const auto back = j.get<CoherentBranch>();
    CHECK(back.alpha == b.alpha);
    CHECK(back.weight == b.weight);
  }
}
