#include <doctest.h>

#include <cmath>

#include "catsim/errors.hpp"
#include "catsim/fock.hpp"
#include "catsim/gaussian.hpp"

using namespace catsim;
using namespace catsim::fock;
using doctest::Approx;

namespace {

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace

TEST_SUITE("fock") {
  TEST_CASE("ladder operators") {
    const std::size_t n = 12;
    const auto a = annihilation(n);
    const auto ad = creation(n);
    CHECK(max_abs_diff(a.adjoint(), ad) == 0.0);
    CHECK(a(2, 3) == cplx(std::sqrt(3.0), 0.0));
    CHECK(max_abs_diff(ad * a, number(n)) < 1e-14);
    // [a, a†] = 1 except in the truncated corner
    DenseMatrix comm = a * ad;
    comm += cplx(-1.0) * (ad * a);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(comm(i, i).real() == Approx(1.0));
    CHECK(comm(n - 1, n - 1).real() == Approx(1.0 - static_cast<double>(n)));
    CHECK(number(n).is_hermitian());
  }

  TEST_CASE("coherent states") {
    const cplx alpha(1.2, -0.5);
    const auto psi = coherent_to_fock(alpha, 60);
    CHECK(psi.norm() == Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(expectation(psi, annihilation(60)) - alpha) < 1e-13);
    CHECK(expectation(psi, number(60)).real() == Approx(std::norm(alpha)).epsilon(1e-13));
    const auto phi = coherent_to_fock(cplx(-0.3, 0.9), 60);
    CHECK(std::abs(overlap(psi, phi) - gaussian::coherent_overlap(alpha, cplx(-0.3, 0.9))) <
          1e-14);
    CHECK(fidelity(psi, psi) == Approx(1.0));
    CHECK(distance(psi, psi) == 0.0);

    CHECK(required_dim(0.0) == 26);
    CHECK(required_dim(2.0) == 42);
    CHECK_THROWS_AS(coherent_to_fock(2.0, 41), TruncationError);
    CHECK_NOTHROW(coherent_to_fock(2.0, 42));
    CHECK_THROWS_AS(coherent_to_fock(0.0, kMaxDim + 1), TruncationError);

    const auto w = branch_to_fock({0.5, cplx(0.0, 2.0)}, 40);
    CHECK(w.norm() == Approx(2.0));
  }

  TEST_CASE("diagonal Hamiltonian gives exact phases") {
    const std::size_t n = 30;
    const auto h = number(n);
    const auto psi = coherent_to_fock(0.7, n);
    const auto out = evolve_schrodinger(psi, h, 0.9);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(out.amps[k] - psi.amps[k] * std::polar(1.0, -0.9 * double(k))) < 1e-14);
    // a free rotation of a coherent state is a coherent state
    CHECK(fidelity(out, coherent_to_fock(0.7 * std::polar(1.0, -0.9), n)) ==
          Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("matrix exponential") {
    const std::size_t n = 20;
    const auto z = DenseMatrix(n);
    CHECK(max_abs_diff(expm(z), DenseMatrix::identity(n)) == 0.0);
    // e^{iθN} is diagonal with unit-modulus entries, also for large norms
    const auto e = expm(cplx(0.0, 3.7) * number(n));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(e(k, k) - std::polar(1.0, 3.7 * k)) < 1e-12);
    // e^{A} e^{-A} = 1
    DenseMatrix a = annihilation(n);
    a += creation(n);
    a *= cplx(0.0, 0.8);
    const auto prod = expm(a) * expm(cplx(-1.0) * a);
    CHECK(max_abs_diff(prod, DenseMatrix::identity(n)) < 1e-12);
    // parallel and serial products agree bit for bit
    CHECK(max_abs_diff(expm(a) * expm(a), multiply_serial(expm(a), expm(a))) == 0.0);
  }

  TEST_CASE("gates against coherent-state algebra") {
    const std::size_t n = 80;
    const cplx alpha(0.4, 0.3), beta(-0.6, 0.2);
    const auto psi = coherent_to_fock(alpha, n);
    const auto d = apply_gate(psi, Displace{beta});
    const auto ref = gaussian::displace({alpha, 1.0}, beta);
    CHECK(distance(d, branch_to_fock(ref, n)) < 1e-12);

    const auto r = apply_gate(psi, Rotate{0.5});
    CHECK(distance(r, coherent_to_fock(alpha * std::polar(1.0, 0.5), n)) < 1e-13);

    // S(z) on vacuum: ⟨n⟩ = sinh²|z|
    const auto sq = apply_gate(coherent_to_fock(0.0, n), Squeeze{std::polar(0.4, 1.0)});
    CHECK(expectation(sq, number(n)).real() == Approx(std::pow(std::sinh(0.4), 2)).epsilon(1e-12));
    CHECK(gate_matrix(Squeeze{cplx(0.0, 0.3)}, 10).dim() == 10);

    CHECK_THROWS_AS(apply_gate(coherent_to_fock(0.0, 26), Displace{3.0}), TruncationError);
  }

  TEST_CASE("commutation of squeezing and displacement") {
    const std::size_t n = 80;
    const cplx z(0.0, 0.2), xi(1.0, 0.0);
    const auto vac = coherent_to_fock(0.0, n);
    const auto lhs = apply_gate(apply_gate(vac, Displace{xi}), Squeeze{z});
    const auto rhs =
        apply_gate(apply_gate(vac, Squeeze{z}), Displace{gaussian::commute_squeeze_displacement(z, xi)});
    CHECK(1.0 - fidelity(lhs, rhs) < 1e-7);
  }

  TEST_CASE("displaced-oscillator oracle") {
    const double w = 1.0, g = 0.1;
    for (cplx a : {cplx(1.0, 0.0), cplx(0.3, -0.8)}) {
      for (double t : {0.1, 0.3, 0.5}) {
        const std::size_t n = 60;
        const auto out = evolve_schrodinger(coherent_to_fock(a, n),
                                            displaced_oscillator_hamiltonian(n, w, g), t, 4);
        const auto cf = gaussian::evolve_displaced_oscillator({a, 1.0}, w, g, t);
        const auto ref = branch_to_fock(cf, n);
        CHECK(1.0 - fidelity(out, ref) < 1e-10);
        CHECK(std::abs(std::arg(overlap(ref, out))) < 1e-6);
        // doubling the truncation changes nothing
        const auto big = evolve_schrodinger(coherent_to_fock(a, 2 * n),
                                            displaced_oscillator_hamiltonian(2 * n, w, g), t, 4);
        CHECK(std::abs(overlap(big, branch_to_fock(cf, 2 * n)) - overlap(out, ref)) < 1e-10);
      }
    }
  }

  TEST_CASE("non-Hermitian generators are caught") {
    const std::size_t n = 30;
    DenseMatrix h = number(n);
    h(0, 1) = cplx(0.0, 0.5);  // breaks hermiticity and unitarity
    CHECK_FALSE(h.is_hermitian());
    CHECK_THROWS_AS(evolve_schrodinger(coherent_to_fock(0.5, n), h, 1.0), NormDriftError);
  }

  TEST_CASE("piecewise evolution") {
    const std::size_t n = 40;
    const auto psi = coherent_to_fock(0.6, n);
    const auto h = displaced_oscillator_hamiltonian(n, 1.0, 0.2);
    const auto one = evolve_schrodinger(psi, h, 0.6, 6);
    const auto two = evolve_piecewise(psi, {Segment{h, 0.2, 2}, Segment{h, 0.4, 4}});
    CHECK(distance(one, two) < 1e-13);
    CHECK_THROWS_AS(evolve_schrodinger(coherent_to_fock(0.0, 26), 
                                       displaced_oscillator_hamiltonian(26, 0.01, 20.0), 1.0),
                    TruncationError);
  }

  TEST_CASE("quench decomposition matches direct propagation") {
    const double w1 = 1.0, w2 = 0.3, g2 = 0.05;
    const cplx alpha(0.5, 0.2);
    // δ in ω₂ units, the equilibrium shift of the soft trap
    const double delta = g2 / w2;
    const double g1 = std::sqrt(w2 / w1) * g2;
    for (double t : {0.02, 0.05, 0.5}) {
      CAPTURE(t);
      double prev = -1.0;
      for (std::size_t n : {60u, 120u}) {
        const auto q = gaussian::quench_params(w1, w2, delta, t);
        const auto h = quench_hamiltonian(n, w1, w2, g1);
        const auto cf = quench_decomposition_state(alpha, q, n);
        const auto direct = evolve_schrodinger(coherent_to_fock(alpha, n), h, t, 4);
        const double f = fidelity(cf, direct);
        CHECK(1.0 - f < 1e-10);
        if (prev >= 0.0) CHECK(std::abs(f - prev) < 1e-12);
        prev = f;
        // The decomposition fixes the state up to a global phase, which must
        // be the same for every input amplitude.
        const cplx other(-0.7, 0.4);
        const auto cf2 = quench_decomposition_state(other, q, n);
        const auto direct2 = evolve_schrodinger(coherent_to_fock(other, n), h, t, 4);
        const double dphi =
            numeric::wrap_angle(std::arg(overlap(cf, direct)) - std::arg(overlap(cf2, direct2)));
        CHECK(std::abs(dphi) < 1e-8);
      }
    }
  }

  TEST_CASE("the second-order quench expansion drops only squeezing") {
    const double w1 = 1.0, w2 = 0.3, g2 = 0.05, t = 0.02;
    const std::size_t n = 60;
    const cplx alpha(0.5, 0.2);
    const double g1 = std::sqrt(w2 / w1) * g2;
    const auto approx = gaussian::evolve_quench({alpha, 1.0}, w1, w2, g2, t);
    const auto direct =
        evolve_schrodinger(coherent_to_fock(alpha, n), quench_hamiltonian(n, w1, w2, g1), t, 2);
    const double infidelity = 1.0 - fidelity(branch_to_fock(approx.branch, n), direct);
    // infidelity of a pure squeeze of size |z| on a coherent state ~ |z|²/2
    CHECK(infidelity < approx.squeeze_magnitude * approx.squeeze_magnitude);
    CHECK(infidelity > 0.1 * approx.squeeze_magnitude * approx.squeeze_magnitude);
  }
}
