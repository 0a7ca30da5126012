#include <doctest.h>

#include "qclone/cloner.hpp"
#include "qclone/optimizer.hpp"

using namespace qclone;

TEST_CASE("optimize_direction: anchors at d = 2") {
    OptimizerConfig cfg;
    // z = (1,1): value 3/2 at the symmetric point (3/4, 3/4)
    const OptimizerResult r = optimize_direction({1.0, 1.0}, MeritKind::F, 2, cfg);
    CHECK(r.value == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(r.argmax_point.x1 == doctest::Approx(0.75).epsilon(1e-4));
    CHECK(r.argmax_point.x2 == doctest::Approx(0.75).epsilon(1e-4));
    CHECK(r.slacks.feasible(1e-8));

    // z = (1,0): value 1 at the corner (1, 1/d^2)
    const OptimizerResult r2 = optimize_direction({1.0, 0.0}, MeritKind::F, 2, cfg);
    CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r2.argmax_point.x1 == doctest::Approx(1.0).epsilon(1e-4));

    // z = (1,1) in the trace-norm merit lands on (5/6, 5/6)
    const OptimizerResult r3 = optimize_direction({1.0, 1.0}, MeritKind::One, 2, cfg);
    CHECK(r3.argmax_point.x1 == doctest::Approx(5.0 / 6.0).epsilon(1e-4));
    CHECK(r3.argmax_point.x2 == doctest::Approx(5.0 / 6.0).epsilon(1e-4));

    CHECK_THROWS_AS(optimize_direction({1.0, 1.0}, MeritKind::F, 2,
                                       OptimizerConfig{8, 12, 10.0, 1e-8, 0}),
                    std::invalid_argument);
}

TEST_CASE("duality sandwich: line search <= barrier ~= lambda_max on random directions") {
    Rng rng(51);
    std::uniform_real_distribution<double> uni(0.05, 2.0);
    OptimizerConfig cfg;
    for (int d : {2, 3, 4}) {
        for (int i = 0; i < 12; ++i) {
            const DirectionWeights z{uni(rng), uni(rng)};
            const double lam = lambda_max_closed(z, d);
            const OptimizerResult rb = optimize_direction(z, MeritKind::F, d, cfg);
            const OptimizerResult rl = alpha_line_search(z, MeritKind::F, d, 200);
            CHECK(rl.value <= rb.value + 1e-6);
            CHECK(rb.value <= lam + 1e-6);
            CHECK(std::abs(rl.value - lam) < 1e-6);
            CHECK(std::abs(rb.value - lam) < 1e-6);
            CHECK(rb.slacks.min_inequality_slack() >= -1e-8);
            CHECK(std::abs(rb.slacks.normalization) < 1e-8);
            CHECK(min_eigenvalue(reconstruct(rb.argmax_a)) >= -1e-8);
        }
    }
}

TEST_CASE("barrier matches lambda_max on mixed-sign directions too") {
    OptimizerConfig cfg;
    for (int d : {2, 3}) {
        for (auto [z1, z2] : {std::pair{1.5, -0.3}, {0.8, -0.79}, {-0.2, 1.0}, {2.0, -1.99}}) {
            const DirectionWeights z{z1, z2};
            const OptimizerResult r = optimize_direction(z, MeritKind::F, d, cfg);
            CHECK(std::abs(r.value - lambda_max_closed(z, d)) < 1e-8);
        }
    }
}

TEST_CASE("argmax structure: a1 = a4 = 0 for d > 2; same Choi at d = 2") {
    OptimizerConfig cfg;
    for (int d : {3, 4}) {
        const OptimizerResult r = optimize_direction({1.0, 0.7}, MeritKind::F, d, cfg);
        CHECK(std::abs(r.argmax_a.a1) < 1e-6);
        CHECK(std::abs(r.argmax_a.a4) < 1e-6);
    }
    // d = 2: the parametrization freedom may move a1, a4 away from zero, but
    // the reconstructed Choi still equals the canonical-branch cloner
    const OptimizerResult r = optimize_direction({1.0, 0.7}, MeritKind::F, 2, cfg);
    const double al1 = std::sqrt(std::max(
        r.argmax_a.a1 * 8.0 + r.argmax_a.a3 * 4.0 + r.argmax_a.a4 * 4.0, 0.0));
    const ChoiChannel canonical = build(from_alpha1(al1, 2));
    CHECK(frobenius_distance(reconstruct(r.argmax_a), canonical.choi) < 1e-6);
}

TEST_CASE("alpha_line_search: corner directions and symmetric direction") {
    // z = (0,1): the partner clone becomes perfect, alpha1 -> 1, point (1/d^2, 1)
    for (int d : {2, 3}) {
        const OptimizerResult r = alpha_line_search({0.0, 1.0}, MeritKind::F, d, 400);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.argmax_point.x2 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.argmax_point.x1 == doctest::Approx(1.0 / (double(d) * d)).epsilon(1e-6));
    }
    // z = (1,1): symmetric alpha1 = alpha2
    const OptimizerResult rs = alpha_line_search({1.0, 1.0}, MeritKind::F, 3, 400);
    const double sym = std::sqrt(3.0 / 8.0);
    CHECK(rs.argmax_a.a2 == doctest::Approx(rs.argmax_a.a3).epsilon(1e-5));
    CHECK(std::abs(std::sqrt(rs.argmax_a.a3 * 9.0) - sym) < 1e-4);

    CHECK_THROWS_AS(alpha_line_search({-1.0, 1.0}, MeritKind::F, 2, 100), std::invalid_argument);
    CHECK_THROWS_AS(alpha_line_search({0.0, 0.0}, MeritKind::F, 2, 100), std::invalid_argument);
}

TEST_CASE("verify_sdp_block: boundary saturation, infeasible input, interior point") {
    // optimal cloner at the d = 3 symmetric point: feasible with zero
    // determinant slack on the 2x2 block (boundary saturation)
    const int d = 3;
    const double sym = std::sqrt(double(d) / (2.0 * (d + 1.0)));
    const CloneChannel cc = from_alpha1(sym, d);
    const PermCoeffs a = cloner_coeffs(cc.alpha1, cc.alpha2, d);
    const BlockReport rep = verify_sdp_block(a, {cc.alpha1 * cc.alpha1, cc.alpha2 * cc.alpha2}, d);
    CHECK(rep.feasible(1e-9));
    for (const auto& e : rep.entries)
        if (e.name == "block2x2_det") CHECK(std::abs(e.slack) < 1e-10);

    // infeasible coefficients report a negative slack
    const PermCoeffs bad = PermCoeffs::real_coeffs(-1.0, 0, 0, 0, 0, d);
    const BlockReport rb = verify_sdp_block(bad, {0.5, 0.5}, d);
    CHECK(rb.min_slack() < 0.0);

    // maximally mixed: strictly positive slacks except the normalization pair
    const PermCoeffs mixed = PermCoeffs::real_coeffs(1.0 / 27.0, 0, 0, 0, 0, d);
    const BlockReport rm = verify_sdp_block(mixed, {1.0, 1.0}, d);
    for (const auto& e : rm.entries) {
        if (e.name == "norm_lower" || e.name == "norm_upper")
            CHECK(std::abs(e.slack) < 1e-12);
        else
            CHECK(e.slack > 1e-3);
    }
}

TEST_CASE("SDP block verdicts agree with the coefficient criteria on random input") {
    Rng rng(53);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int d : {2, 3, 4}) {
        for (int trial = 0; trial < 200; ++trial) {
            PermCoeffs a = PermCoeffs::real_coeffs(gauss(rng), gauss(rng), gauss(rng),
                                                   gauss(rng), gauss(rng), d);
            const double tr = a.trace();
            if (std::abs(tr) < 1e-3) continue;
            a = PermCoeffs::real_coeffs(a.a1 / tr, a.a2 / tr, a.a3 / tr, a.a4 / tr,
                                        a.a5.real() / tr, d);
            const double d3 = double(d) * d * d, d2 = double(d) * d;
            const double al1 = a.a1 * d3 + a.a3 * d2 + a.a4 * d2;
            const double al2 = a.a1 * d3 + a.a2 * d2 + a.a4 * d2;
            const BlockReport block = verify_sdp_block(a, {al1, al2}, d);
            const FeasibilityReport rep = feasibility(a, d);
            // away from the decision boundary the two formulations agree;
            // every block entry is the coefficient slack times a factor >= 1
            if (std::abs(rep.min_inequality_slack()) > 1e-8)
                CHECK(block.feasible(1e-9) == rep.feasible(1e-9));
        }
    }
}

TEST_CASE("every OptimizerResult argmax reconstructs to a CP-TP state") {
    Rng rng(52);
    std::uniform_real_distribution<double> uni(0.05, 2.0);
    OptimizerConfig cfg;
    for (int d : {2, 3}) {
        for (int i = 0; i < 5; ++i) {
            const DirectionWeights z{uni(rng), uni(rng)};
            for (MeritKind k : {MeritKind::F, MeritKind::One, MeritKind::Two}) {
                const OptimizerResult r = optimize_direction(z, k, d, cfg);
                const DenseOperator tau = reconstruct(r.argmax_a);
                CHECK(min_eigenvalue(tau) >= -1e-8);
                CHECK(std::abs(tau.trace().real() - 1.0) < 1e-8);
            }
        }
    }
}
