#include <doctest.h>

#include "qclone/cloner.hpp"
#include "qclone/symmetry.hpp"

using namespace qclone;

namespace {

PermCoeffs random_hermitian_coeffs(int d, Rng& rng, bool normalized) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Complex c5(gauss(rng), gauss(rng));
    PermCoeffs a(gauss(rng), gauss(rng), gauss(rng), gauss(rng), c5, std::conj(c5), d);
    if (normalized) {
        const double tr = a.trace();
        a = PermCoeffs(a.a1 / tr, a.a2 / tr, a.a3 / tr, a.a4 / tr, a.a5 / tr, a.a6 / tr, d);
    }
    return a;
}

DenseOperator sum_perm_operators(const PermCoeffs& a) {
    const auto& perms = Permutation3::all();
    const std::array<Complex, 6> coeffs{Complex(a.a1), Complex(a.a2), Complex(a.a3),
                                        Complex(a.a4), a.a5, a.a6};
    DenseOperator acc = DenseOperator::zero(HilbertSpec({a.dim, a.dim, a.dim}));
    for (size_t i = 0; i < 6; ++i)
        acc = acc + coeffs[i] * perm_operator(perms[i], a.dim);
    return acc;
}

}  // namespace

TEST_CASE("reconstruct equals the partially transposed permutation sum") {
    // explicit term list against sum a_pi V_pi followed by t0, brute force
    Rng rng(21);
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 5; ++trial) {
            const PermCoeffs a = random_hermitian_coeffs(d, rng, false);
            const DenseOperator direct = reconstruct(a);
            const DenseOperator via_perm = partial_transpose(sum_perm_operators(a), 0);
            CHECK(max_abs(direct.mat - via_perm.mat) < 1e-12);
        }
    }
    // a = (1/d^3, 0, ..., 0) -> identity / d^3
    const PermCoeffs mixed = PermCoeffs::real_coeffs(1.0 / 27.0, 0, 0, 0, 0, 3);
    CHECK(max_abs(reconstruct(mixed).mat - Matrix::Identity(27, 27) / 27.0) < 1e-15);
}

TEST_CASE("expand_in_perm_basis: maximally mixed, cloner, round trip") {
    // unique expansion at d >= 3
    const int d = 3;
    const DenseOperator mixed{HilbertSpec({d, d, d}),
                              Matrix::Identity(27, 27) / 27.0};
    const PermCoeffs am = expand_in_perm_basis(mixed, d);
    CHECK(am.a1 == doctest::Approx(1.0 / 27.0).epsilon(1e-12));
    for (double v : {am.a2, am.a3, am.a4, am.a5.real(), am.a6.real()})
        CHECK(std::abs(v) < 1e-12);

    // optimal cloner: a1 = a4 = 0, a2 = alpha2^2/d^2, a3 = alpha1^2/d^2, a5 = a6 = a1a2/d^2
    const CloneChannel cc = from_alpha1(0.6, d);
    const PermCoeffs ac = expand_in_perm_basis(build(cc).choi, d);
    const double d2 = double(d) * d;
    CHECK(std::abs(ac.a1) < 1e-12);
    CHECK(std::abs(ac.a4) < 1e-12);
    CHECK(ac.a2 == doctest::Approx(cc.alpha2 * cc.alpha2 / d2).epsilon(1e-10));
    CHECK(ac.a3 == doctest::Approx(cc.alpha1 * cc.alpha1 / d2).epsilon(1e-10));
    CHECK(ac.a5.real() == doctest::Approx(cc.alpha1 * cc.alpha2 / d2).epsilon(1e-10));
    CHECK(std::abs(ac.a5.imag()) < 1e-12);
    CHECK(ac.hermitian());

    // round trip expand ∘ reconstruct on random feasible coefficients
    Rng rng(22);
    for (int dd : {2, 3, 4}) {
        for (int trial = 0; trial < 5; ++trial) {
            const PermCoeffs a = random_hermitian_coeffs(dd, rng, true);
            const DenseOperator tau = reconstruct(a);
            const PermCoeffs back = expand_in_perm_basis(tau, dd);
            // representations may differ at d = 2; the operator must not
            CHECK(frobenius_distance(reconstruct(back), tau) < 1e-9);
            if (dd > 2) {
                CHECK(back.a1 == doctest::Approx(a.a1).epsilon(1e-9));
                CHECK(back.a4 == doctest::Approx(a.a4).epsilon(1e-9));
            }
        }
    }

    // operators outside the commutant span are rejected with a residual
    Rng rng2(23);
    const DenseOperator noise = tensor(tensor(random_density(2, rng2), random_density(2, rng2)),
                                       random_density(2, rng2));
    CHECK_THROWS_AS(expand_in_perm_basis(noise, 2), std::invalid_argument);
}

TEST_CASE("a_to_s matches the matrix oracle Tr[reconstruct(a) S_k]") {
    Rng rng(24);
    for (int d : {2, 3, 4}) {
        const SBasisOperators s = s_basis_operators(d);
        for (int trial = 0; trial < 10; ++trial) {
            const PermCoeffs a = random_hermitian_coeffs(d, rng, false);
            const DenseOperator tau = reconstruct(a);
            const SBasisCoords got = a_to_s(a);
            const auto tr = [&](const DenseOperator& op) {
                return (tau.mat * op.mat).trace().real();
            };
            CHECK(got.s_plus == doctest::Approx(tr(s.S_plus)).epsilon(1e-9));
            CHECK(got.s_minus == doctest::Approx(tr(s.S_minus)).epsilon(1e-9));
            CHECK(got.s0 == doctest::Approx(tr(s.S0)).epsilon(1e-9));
            CHECK(got.s1 == doctest::Approx(tr(s.S1)).epsilon(1e-9));
            CHECK(got.s2 == doctest::Approx(tr(s.S2)).epsilon(1e-9));
            CHECK(got.s3 == doctest::Approx(tr(s.S3)).epsilon(1e-9));
        }
    }
}

TEST_CASE("a_to_s: normalization and symmetry properties") {
    // normalized coefficients give s+ + s- + s0 = 1
    Rng rng(25);
    for (int d : {2, 3, 4}) {
        for (int trial = 0; trial < 5; ++trial) {
            const PermCoeffs a = random_hermitian_coeffs(d, rng, true);
            const SBasisCoords s = a_to_s(a);
            CHECK(s.s_plus + s.s_minus + s.s0 == doctest::Approx(1.0).epsilon(1e-10));
        }
        // real a5 = a6 forces s3 = 0
        const PermCoeffs a = PermCoeffs::real_coeffs(0.01, 0.02, 0.03, 0.04, 0.05, d);
        CHECK(a_to_s(a).s3 == 0.0);
    }
}

TEST_CASE("S-basis algebra: X^2 = dX, V^2 = 1, XVX = X") {
    for (int d : {2, 3, 4, 5}) {
        const SBasisOperators s = s_basis_operators(d);
        CHECK(max_abs(s.X.mat * s.X.mat - double(d) * s.X.mat) < 1e-12);
        CHECK(max_abs(s.V.mat * s.V.mat - Matrix::Identity(s.V.dim(), s.V.dim())) < 1e-12);
        CHECK(max_abs(s.X.mat * s.V.mat * s.X.mat - s.X.mat) < 1e-12);
    }
}

TEST_CASE("feasibility: maximally mixed, cloner boundary, sign violation") {
    for (int d : {2, 3, 4}) {
        const double d3 = std::pow(double(d), 3);
        const PermCoeffs mixed = PermCoeffs::real_coeffs(1.0 / d3, 0, 0, 0, 0, d);
        const FeasibilityReport rm = feasibility(mixed, d);
        CHECK(rm.feasible(1e-9));
        CHECK(rm.sector_plus > 1e-3);  // strictly interior
        CHECK(rm.block_trace > 1e-3);
        CHECK(rm.block_det > 1e-9);

        // boundary channels saturate the PSD constraint: determinant slack ~ 0 and
        // the reconstructed Choi has min eigenvalue ~ 0
        const CloneChannel cc = from_alpha1((d == 2) ? 1.0 / std::sqrt(3.0) : 0.5, d);
        const PermCoeffs ac = cloner_coeffs(cc.alpha1, cc.alpha2, d);
        const FeasibilityReport rc = feasibility(ac, d);
        CHECK(rc.feasible(1e-9));
        CHECK(std::abs(rc.block_det) < 1e-10);
        CHECK(std::abs(min_eigenvalue(reconstruct(ac))) < 1e-10);

        const PermCoeffs bad = PermCoeffs::real_coeffs(-1.0, 0, 0, 0, 0, d);
        CHECK_FALSE(feasibility(bad, d).feasible(1e-9));
        CHECK(feasibility(bad, d).sector_plus < 0.0);
    }
    // at d = 2 the second inequality is identically zero and marked vacuous
    Rng rng(26);
    for (int trial = 0; trial < 10; ++trial) {
        const PermCoeffs a = random_hermitian_coeffs(2, rng, false);
        const FeasibilityReport r = feasibility(a, 2);
        CHECK(r.sector_minus == 0.0);
        CHECK(r.sector_minus_vacuous);
    }
}

TEST_CASE("CP criteria agree with the direct PSD check") {
    Rng rng(27);
    for (int d : {2, 3, 4}) {
        int hard = 0;
        for (int trial = 0; trial < 400; ++trial) {
            PermCoeffs a = random_hermitian_coeffs(d, rng, true);
            const FeasibilityReport rep = feasibility(a, d);
            const double mineig = min_eigenvalue(reconstruct(a));
            const bool feas = rep.feasible(1e-9);
            const bool psd = mineig >= -1e-9;
            if (feas != psd &&
                std::min(std::abs(rep.min_inequality_slack()), std::abs(mineig)) > 1e-8)
                ++hard;
        }
        CHECK(hard == 0);
    }
}

TEST_CASE("trace normalization is equivalent to the TP marginal condition in the span") {
    Rng rng(28);
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 10; ++trial) {
            const PermCoeffs a = random_hermitian_coeffs(d, rng, true);
            const DenseOperator tau = reconstruct(a);
            CHECK(std::abs(tau.trace().real() - 1.0) < 1e-12);
            CHECK(max_abs(partial_trace(tau, {0}).mat - Matrix::Identity(d, d) / double(d)) <
                  1e-10);
        }
    }
}

TEST_CASE("project_to_commutant: fixed point, convergence target, inner products") {
    Rng rng(29);
    const int d = 2;
    const ChoiChannel ch = random_choi_channel(d, {d, d}, rng);
    const DenseOperator p1 = project_to_commutant(ch.choi, d);
    const DenseOperator p2 = project_to_commutant(p1, d);
    CHECK(frobenius_distance(p1, p2) < 1e-12);
    CHECK(std::abs((p1.trace() - ch.choi.trace()).real()) < 1e-12);

    // commutant-symmetric tau is its own projection
    const DenseOperator cl = build(from_alpha1(0.3, d)).choi;
    CHECK(frobenius_distance(project_to_commutant(cl, d), cl) < 1e-12);

    // projection of |0><0|^{⊗3} preserves inner products against the span
    Matrix p0 = Matrix::Zero(d, d);
    p0(0, 0) = 1.0;
    const DenseOperator probe =
        tensor(tensor(DenseOperator{HilbertSpec::single(d), p0},
                      DenseOperator{HilbertSpec::single(d), p0}),
               DenseOperator{HilbertSpec::single(d), p0});
    const DenseOperator proj = project_to_commutant(probe, d);
    const DenseOperator sig_in = partial_transpose(probe, 0);
    const DenseOperator sig_out = partial_transpose(proj, 0);
    for (const auto& p : Permutation3::all()) {
        const Matrix v = perm_operator(p, d).mat;
        CHECK(std::abs((v.adjoint() * sig_in.mat).trace() -
                       (v.adjoint() * sig_out.mat).trace()) < 1e-12);
    }
}

TEST_CASE("PermCoeffs invariants") {
    const PermCoeffs a(0.1, 0.2, 0.3, 0.4, Complex(0.5, 0.1), Complex(0.5, -0.1), 2);
    CHECK(a.hermitian());
    const PermCoeffs b(0.1, 0.2, 0.3, 0.4, Complex(0.5, 0.1), Complex(0.5, 0.1), 2);
    CHECK_FALSE(b.hermitian());
    CHECK_THROWS_AS(PermCoeffs(0, 0, 0, 0, Complex(0, 0), Complex(0, 0), 1),
                    std::invalid_argument);
}
