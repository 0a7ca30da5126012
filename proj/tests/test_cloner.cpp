#include <doctest.h>

#include "qclone/cloner.hpp"
#include "qclone/symmetry.hpp"
#include "qclone/tradeoff.hpp"

using namespace qclone;

TEST_CASE("from_alpha1: constraint endpoints and the symmetric point") {
    for (int d : {2, 3, 5}) {
        const CloneChannel a0 = from_alpha1(0.0, d);
        CHECK(a0.alpha2 == doctest::Approx(1.0).epsilon(1e-15));
        const CloneChannel a1 = from_alpha1(1.0, d);
        CHECK(std::abs(a1.alpha2) < 1e-12);

        // symmetric point solves alpha^2 = d / (2(d+1))
        const double sym = std::sqrt(double(d) / (2.0 * (d + 1.0)));
        const CloneChannel s = from_alpha1(sym, d);
        CHECK(s.alpha2 == doctest::Approx(sym).epsilon(1e-12));
        if (d == 2) CHECK(sym * sym == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

        // constraint holds along the sweep
        for (int i = 0; i <= 50; ++i) {
            const CloneChannel c = from_alpha1(i / 50.0, d);
            CHECK(std::abs(c.alpha1 * c.alpha1 + c.alpha2 * c.alpha2 +
                           2.0 * c.alpha1 * c.alpha2 / d - 1.0) < 1e-12);
        }
    }
    CHECK_THROWS_AS(from_alpha1(-0.1, 2), std::invalid_argument);
    CHECK_THROWS_AS(from_alpha1(1.2, 2), std::invalid_argument);
    CHECK_THROWS_AS(CloneChannel(2, 0.9, 0.9), std::invalid_argument);
}

TEST_CASE("build: CP-TP, Eq-24b coefficients, boundary residual") {
    for (int d : {2, 3, 4}) {
        for (int i = 0; i <= 20; ++i) {
            const CloneChannel cc = from_alpha1(i / 20.0, d);
            const ChoiChannel ch = build(cc);
            CHECK(ch.cp_residual() < 1e-9);
            CHECK(ch.tp_residual() < 1e-9);
            CHECK(frobenius_distance(ch.choi,
                                     reconstruct(cloner_coeffs(cc.alpha1, cc.alpha2, d))) < 1e-12);
            const auto [f1, f2] = marginal_fidelities(cc);
            CHECK(std::abs(boundary_g(f1, f2, d)) < 1e-10);
        }
        // alpha1 = 0: marginal 1 is the identity channel, marginal 2 fully depolarizing
        const ChoiChannel ch0 = build(from_alpha1(0.0, d));
        CHECK(max_abs(marginal(ch0, 1).choi.mat - max_entangled(d).mat) < 1e-12);
        CHECK(max_abs(marginal(ch0, 2).choi.mat -
                      Matrix::Identity(d * d, d * d) / double(d * d)) < 1e-12);
        // already symmetrized: invariant under the exact commutant projection
        const ChoiChannel chs = build(from_alpha1(0.6, d));
        CHECK(frobenius_distance(chs.choi, project_to_commutant(chs.choi, d)) < 1e-9);
    }
}

TEST_CASE("trivial cloner: marginals and strict suboptimality") {
    Rng rng(31);
    for (int d : {2, 3}) {
        const ChoiChannel t1 = trivial(1.0, d);
        CHECK(t1.cp_residual() < 1e-12);
        CHECK(t1.tp_residual() < 1e-12);
        const DenseOperator rho = random_pure_state(d, rng);
        CHECK(max_abs(apply(marginal(t1, 1), rho).mat - rho.mat) < 1e-12);

        // interior alphas lie strictly inside C^F
        const Vector om = max_entangled_ket(d);
        for (double alpha : {0.2, 0.5, 0.8}) {
            const ChoiChannel t = trivial(alpha, d);
            const double f1 = (om.adjoint() * marginal(t, 1).choi.mat * om)(0).real();
            const double f2 = (om.adjoint() * marginal(t, 2).choi.mat * om)(0).real();
            CHECK(boundary_g(f1, f2, d) < -1e-4);
        }
    }
    // alpha = 1/2, d = 2: F1 = F2 = 1/2 + 1/8 = 5/8 < 3/4
    const ChoiChannel t = trivial(0.5, 2);
    const Vector om = max_entangled_ket(2);
    const double f1 = (om.adjoint() * marginal(t, 1).choi.mat * om)(0).real();
    CHECK(f1 == doctest::Approx(0.625).epsilon(1e-12));
    CHECK_THROWS_AS(trivial(-0.1, 2), std::invalid_argument);
    CHECK_THROWS_AS(trivial(1.1, 2), std::invalid_argument);
}

TEST_CASE("marginal_fidelities: corners, symmetric point, Choi cross-check") {
    for (int d : {2, 3, 4}) {
        const auto [f1a, f2a] = marginal_fidelities(from_alpha1(0.0, d));
        CHECK(f1a == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(f2a == doctest::Approx(1.0 / (double(d) * d)).epsilon(1e-12));

        // fidelities equal the direct Choi overlap with Omega
        const CloneChannel cc = from_alpha1(0.45, d);
        const auto [f1, f2] = marginal_fidelities(cc);
        const ChoiChannel ch = build(cc);
        const Vector om = max_entangled_ket(d);
        CHECK(f1 == doctest::Approx((om.adjoint() * marginal(ch, 1).choi.mat * om)(0).real())
                        .epsilon(1e-12));
        CHECK(f2 == doctest::Approx((om.adjoint() * marginal(ch, 2).choi.mat * om)(0).real())
                        .epsilon(1e-12));
    }
    // d = 2 symmetric point: entanglement fidelity 3/4, average state fidelity 5/6
    const CloneChannel sym = from_alpha1(std::sqrt(1.0 / 3.0), 2);
    const auto [f1, f2] = marginal_fidelities(sym);
    CHECK(f1 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(f2 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK((f1 * 2.0 + 1.0) / 3.0 == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("extended branch reaches the outer extreme points") {
    for (int d : {2, 3, 4}) {
        const double a1max = double(d) / std::sqrt(double(d) * d - 1.0);
        const double a2 = alpha2_extended(a1max, d);
        CHECK(a2 < 0.0);
        CHECK(std::abs(a1max * a1max + a2 * a2 + 2.0 * a1max * a2 / d - 1.0) < 1e-12);
        // the conjugation form still yields a CP-TP channel there
        const ChoiChannel ch = build_cloner_choi(a1max, a2, d);
        CHECK(ch.cp_residual() < 1e-9);
        CHECK(ch.tp_residual() < 1e-9);
        const Vector om = max_entangled_ket(d);
        const double f1 = (om.adjoint() * marginal(ch, 1).choi.mat * om)(0).real();
        const double f2 = (om.adjoint() * marginal(ch, 2).choi.mat * om)(0).real();
        CHECK(std::abs(f1) < 1e-12);
        CHECK(std::abs(f2 - (double(d) * d - 1.0) / (double(d) * d)) < 1e-12);
    }
}

TEST_CASE("d = 8 envelope: full Choi construction stays within tolerances") {
    const int d = 8;
    const CloneChannel cc = from_alpha1(0.5, d);
    const ChoiChannel ch = build(cc);  // 512 x 512
    CHECK(ch.tp_residual() < 1e-9);
    CHECK(ch.cp_residual() < 1e-9);
    const auto [f1, f2] = marginal_fidelities(cc);
    const Vector om = max_entangled_ket(d);
    CHECK((om.adjoint() * marginal(ch, 1).choi.mat * om)(0).real() ==
          doctest::Approx(f1).epsilon(1e-12));
    CHECK((om.adjoint() * marginal(ch, 2).choi.mat * om)(0).real() ==
          doctest::Approx(f2).epsilon(1e-12));
    CHECK(std::abs(boundary_g(f1, f2, d)) < 1e-10);
}

TEST_CASE("monotone tradeoff along the sweep") {
    for (int d : {2, 3, 4, 5}) {
        double prev_f1 = 2.0, prev_f2 = -1.0;
        for (int i = 0; i <= 200; ++i) {
            const auto [f1, f2] = marginal_fidelities(from_alpha1(i / 200.0, d));
            if (i > 0) {
                CHECK(f1 < prev_f1);
                CHECK(f2 > prev_f2);
            }
            prev_f1 = f1;
            prev_f2 = f2;
        }
    }
}
