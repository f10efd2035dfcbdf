#include <doctest.h>

#include <cmath>
#include <sstream>

#include "catsim/classical.hpp"
#include "catsim/errors.hpp"
#include "catsim/gaussian.hpp"
#include "catsim/params.hpp"

using namespace catsim;
using namespace catsim::classical;
using doctest::Approx;

namespace {
constexpr double kM = 1e-15;
constexpr double kW = 5e-6;
constexpr double kG = 9.81;
}  // namespace

TEST_SUITE("classical") {
  TEST_CASE("harmonic motion with gravity") {
    const PhaseSpacePoint s0{1e-9, 3e-24};
    const auto same = evolve_harmonic_gravity(s0, kM, kW, kG, 0.0);
    CHECK(same.x == s0.x);
    CHECK(same.p == s0.p);

    const auto drop = evolve_harmonic_gravity({0.0, 0.0}, kM, kW, kG, 1e-6);
    CHECK(drop.x == Approx(-4.905e-12).epsilon(1e-12));
    CHECK(drop.p == Approx(-9.81e-21).epsilon(1e-12));

    const auto ff = evolve_free_fall({0.0, kM * kG * 1e-6}, kM, kG, 1e-6);
    CHECK(std::abs(ff.p) < 1e-35);
    CHECK(ff.x == Approx(4.905e-12).epsilon(1e-12));

    // gravity-free equilibrium sits at -g/ω²
    const auto eq = evolve_harmonic_gravity({-kG / (kW * kW), 0.0}, kM, kW, kG, 12345.0);
    CHECK(eq.x == Approx(-kG / (kW * kW)).epsilon(1e-12));
    CHECK(std::abs(eq.p) < 1e-12 * kM * kG / kW);

    CHECK_THROWS_AS(evolve_harmonic_gravity(s0, kM, 0.0, kG, 1.0), DomainError);
    CHECK_THROWS_AS(evolve_harmonic_gravity({0.0, 0.0, Frame::Equilibrium}, kM, kW, kG, 1.0),
                    DomainError);
  }

  TEST_CASE("energy is conserved by the closed form") {
    const PhaseSpacePoint s0{2e-8, -5e-23};
    const double e0 = energy(s0, kM, kW, kG);
    for (double t : {1e3, 4e5, 9e5}) {
      const auto s = evolve_harmonic_gravity(s0, kM, kW, kG, t);
      CHECK(energy(s, kM, kW, kG) == Approx(e0).epsilon(1e-6));
    }
  }

  TEST_CASE("frames and adimensional units") {
    const PhaseSpacePoint s{1e-9, 2e-24};
    const auto eq = to_equilibrium_frame(s, kW, kG);
    CHECK(eq.frame == Frame::Equilibrium);
    const auto back = to_trap_frame(eq, kW, kG);
    CHECK(back.x == Approx(s.x).epsilon(1e-6));
    const auto a = to_adimensional(s, kM, kW);
    const auto s2 = from_adimensional(a, kM, kW);
    CHECK(s2.x == Approx(s.x).epsilon(1e-15));
    CHECK(s2.p == Approx(s.p).epsilon(1e-15));
    const cplx mode = a.mode();
    const auto a2 = AdimensionalPoint::from_mode(mode);
    CHECK(a2.X == Approx(a.X));
    CHECK(a2.P == Approx(a.P));
  }

  TEST_CASE("quadratic mode amplitude") {
    CHECK(evolve_mode_quadratic(cplx(0.3, 0.4), 1.0, 0.0, 0.0).quadratic == cplx(0.3, 0.4));
    const double w = 0.01;
    const double g = 0.2;
    const double t = 0.5;
    const auto src = evolve_mode_quadratic(0.0, w, g, t);
    CHECK(src.quadratic.real() == Approx(-w * g * t * t / 2));
    CHECK(src.quadratic.imag() == Approx(-g * t));

    const double gd = gravitational_coupling(kM, kW, kG);
    const auto r = evolve_mode_quadratic(cplx(1.0, 1.0), kW, gd, 1e-6);
    CHECK(numeric::rel_diff(r.quadratic.real(), r.exact.real()) < 1e-15);
    CHECK(numeric::rel_diff(r.quadratic.imag(), r.exact.imag()) < 1e-15);
    CHECK(r.within_guard);

    const auto far = evolve_mode_quadratic(1.0, 1.0, 0.1, 0.5);
    CHECK_FALSE(far.within_guard);
    CHECK(far.warning.has_value());
    CHECK(evolve_mode_quadratic(1.0, 1.0, 0.1, 0.5, 1.0).within_guard);
  }

  TEST_CASE("mode amplitude matches the physical trajectory") {
    const double g = gravitational_coupling(kM, kW, kG);
    const PhaseSpacePoint s0{3e-8, 1e-23};
    const double t = 2e4;
    const cplx a = evolve_mode_exact(to_adimensional(s0, kM, kW).mode(), kW, g, t);
    const auto s = evolve_harmonic_gravity(s0, kM, kW, kG, t);
    const cplx ref = to_adimensional(s, kM, kW).mode();
    CHECK(std::abs(a - ref) < 1e-9 * std::abs(ref));
  }

  TEST_CASE("RK4 oracle over one period") {
    const PhaseSpacePoint s0{1e-9, 2e-24};
    const double period = kTwoPi / kW;
    const auto spec = TimeDependentTrapSpec::harmonic_gravity(kM, kW, kG);
    const auto cf = evolve_harmonic_gravity(s0, kM, kW, kG, period);
    const double sx = kG / (kW * kW);
    const double sp = kM * kG / kW;
    const auto coarse = ode_oracle(s0, spec, period, period / 500.0);
    const auto fine = ode_oracle(s0, spec, period, period / 1000.0);
    const double e_coarse = std::hypot((coarse.x - cf.x) / sx, (coarse.p - cf.p) / sp);
    const double e_fine = std::hypot((fine.x - cf.x) / sx, (fine.p - cf.p) / sp);
    CHECK(e_fine < 1e-9);
    // fourth order: halving the step divides the error by ~16
    CHECK(e_coarse / e_fine == Approx(16.0).epsilon(0.1));
  }

  TEST_CASE("RK4 is exact for free fall") {
    const PhaseSpacePoint s0{1e-9, 2e-24};
    const auto spec = TimeDependentTrapSpec::harmonic_gravity(kM, 0.0, kG);
    for (double dt : {1e-4, 3e-5}) {
      const auto rk = ode_oracle(s0, spec, 1e-2, dt);
      const auto ff = evolve_free_fall(s0, kM, kG, 1e-2);
      CHECK(numeric::rel_diff(rk.x, ff.x) < 1e-13);
      CHECK(numeric::rel_diff(rk.p, ff.p) < 1e-13);
    }
  }

  TEST_CASE("quench trajectory is continuous across the switch") {
    const double w1 = 100.0;
    const double w2 = 5.0;
    auto spec = TimeDependentTrapSpec::quench(kM, w1, w2, kG, -0.01);
    const PhaseSpacePoint s0{1e-9, 0.0};
    const auto left = ode_oracle(s0, spec, 0.01 - 1e-9, 1e-5);
    const auto right = ode_oracle(s0, spec, 0.01 + 1e-9, 1e-5);
    CHECK(std::abs(left.x - right.x) < 1e-15);
    CHECK(std::abs(left.p - right.p) < 1e-6 * kM * kG);
    // after the switch the motion is the closed form with ω₂ and gravity
    const auto at_switch = ode_oracle(s0, spec, 0.01, 1e-5);
    const auto later = ode_oracle(s0, spec, 0.01 + 0.2, 1e-5);
    const auto cf = evolve_harmonic_gravity(at_switch, kM, w2, kG, 0.2);
    CHECK(numeric::rel_diff(later.x, cf.x) < 1e-9);
  }

  TEST_CASE("RK4 step precondition") {
    const auto spec = TimeDependentTrapSpec::harmonic_gravity(kM, 1.0, kG);
    CHECK_THROWS_AS(ode_oracle({0.0, 0.0}, spec, 1.0, 0.2), DomainError);
    CHECK_THROWS_AS(ode_oracle({0.0, 0.0}, spec, 1.0, 0.0), DomainError);
    CHECK_NOTHROW(ode_oracle({0.0, 0.0}, spec, 1.0, 0.1));
  }

  TEST_CASE("action phases") {
    CHECK_THROWS_AS(action_phase({0.0, 0.0, Frame::TrapOrigin}, kM, kW, 1.0), DomainError);
    CHECK(action_phase({1e-9, 0.0, Frame::Equilibrium}, kM, kW, 0.0) == 0.0);
    // the harmonic difference is minus the difference of the two actions;
    // checked at a scale where subtracting the actions loses no digits
    const double x20 = 2e-9;
    const double dx = 5e-10;
    const double t = 3e4;
    const double p20 = 1e-26;
    const double direct = phase_difference_harmonic(x20, p20, dx, kM, kW, t);
    const double diff = action_phase({x20 + dx, p20, Frame::Equilibrium}, kM, kW, t) -
                        action_phase({x20, p20, Frame::Equilibrium}, kM, kW, t);
    CHECK(std::abs(direct + diff) < 1e-10 * std::abs(direct));
    CHECK_THROWS_AS(phase_difference_harmonic(x20, 0.0, -1.0, kM, kW, t), DomainError);
    CHECK(phase_difference_freefall(1e-14, kM, kG, 1e-6) ==
          Approx(0.9302353658480141).epsilon(1e-13));
  }

  TEST_CASE("transient curves") {
    TransientSpec spec;
    spec.mass = kM;
    spec.omega = kW;
    spec.dx = 1e-14;
    const double tf = spec.period();
    CHECK(tf == Approx(1.2566370614359173e6));
    const auto par = transient_curve(spec, tf, 4001);
    const auto ser = transient_curve_serial(spec, tf, 4001);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].t == ser[i].t);
      CHECK(par[i].dphi_harmonic == ser[i].dphi_harmonic);
      CHECK(par[i].rel_error == ser[i].rel_error);
    }
    CHECK(par[0].t == 0.0);
    CHECK(par[0].dphi_harmonic == 0.0);
    CHECK(par[0].dphi_grav == 0.0);
    CHECK(std::abs(par[0].rel_error) < 1e-20);

    CHECK(std::abs(transient_relative_error(spec.initial_height(), 0.0, spec.dx, kM, kW, 1e-6)) <
          1e-20);
    // monotone on (0, t_f/4)
    double prev = -1.0;
    for (const auto& r : par) {
      if (r.t <= 0.0 || r.t >= tf / 4) continue;
      CHECK(r.rel_error > prev);
      prev = r.rel_error;
    }
  }

  TEST_CASE("trajectory agrees with RK4 and writes CSV") {
    TransientSpec spec;
    spec.mass = kM;
    spec.omega = kW;
    spec.dx = 1e-14;
    const auto rows = trajectory(spec, spec.period(), 41);
    REQUIRE(rows.size() == 41);
    for (const auto& r : rows) CHECK(r.rel_error < 1e-8);
    std::ostringstream os;
    write_trajectory_csv(os, rows);
    CHECK(os.str().rfind("t_s,x_m,p_kgms,phase_rad,rel_error\n", 0) == 0);
  }
}
