#include "qclone/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qclone/channel.hpp"
#include "qclone/cloner.hpp"
#include "qclone/optimizer.hpp"
#include "qclone/symmetry.hpp"
#include "qclone/tradeoff.hpp"

namespace qclone {

namespace {

struct Battery {
    std::vector<CheckResult> results;
    std::optional<double> tol_override;

    void add(const std::string& name, double residual, double tolerance) {
        const double tol = tol_override.value_or(tolerance);
        results.push_back({name, residual, tol, residual <= tol});
    }
};

std::string tag(const std::string& base, int d) { return base + "_d" + std::to_string(d); }

void perm_checks(Battery& b, int d) {
    const auto& perms = Permutation3::all();
    std::vector<DenseOperator> vs;
    for (const auto& p : perms) vs.push_back(perm_operator(p, d));
    double worst_hom = 0.0, worst_gram = 0.0;
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            const auto comp = perms[i].compose(perms[j]);
            const auto* target = &vs[0];
            for (size_t k = 0; k < 6; ++k)
                if (perms[k] == comp) target = &vs[k];
            worst_hom = std::max(worst_hom, max_abs(vs[i].mat * vs[j].mat - target->mat));
            const double gram = (vs[i].mat.adjoint() * vs[j].mat).trace().real();
            const double want = std::pow(d, perms[i].inverse().compose(perms[j]).cycles());
            worst_gram = std::max(worst_gram, std::abs(gram - want));
        }
    b.add(tag("perm_group_homomorphism", d), worst_hom, 1e-12);
    b.add(tag("perm_gram_cycle_count", d), worst_gram, 1e-9);
}

void tensor_checks(Battery& b, int d, Rng& rng) {
    // partial transpose: involution + Frobenius isometry on random operators
    double worst_inv = 0.0, worst_iso = 0.0, worst_pt = 0.0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    const HilbertSpec spec({d, d, d});
    for (int trial = 0; trial < 5; ++trial) {
        Matrix m(spec.total_dim(), spec.total_dim());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
        const DenseOperator op{spec, std::move(m)};
        for (int f = 0; f < 3; ++f) {
            const DenseOperator t = partial_transpose(op, f);
            worst_inv = std::max(worst_inv, max_abs(partial_transpose(t, f).mat - op.mat));
            worst_iso =
                std::max(worst_iso, std::abs(frobenius_norm(t.mat) - frobenius_norm(op.mat)));
        }
        // partial_trace(tensor(a,b), {0}) = Tr[b] a
        const DenseOperator a = random_density(d, rng);
        const DenseOperator c = random_density(d, rng);
        const DenseOperator prod = tensor(a, c);
        worst_pt = std::max(worst_pt, max_abs(partial_trace(prod, {0}).mat - a.mat));
    }
    b.add(tag("partial_transpose_involution", d), worst_inv, 1e-12);
    b.add(tag("partial_transpose_isometry", d), worst_iso, 1e-12);
    b.add(tag("partial_trace_product", d), worst_pt, 1e-12);

    // eigh reconstruction on a random hermitian d^3 operator
    Matrix h(spec.total_dim(), spec.total_dim());
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j) h(i, j) = Complex(gauss(rng), gauss(rng));
    const DenseOperator herm{spec, (h + Matrix(h.adjoint())) / 2.0};
    const EighResult e = eigh(herm);
    const Matrix recon =
        e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
    b.add(tag("eigh_reconstruction", d), max_abs(herm.mat - recon), 1e-9);
    double sorted = 0.0;
    for (int i = 0; i + 1 < e.eigenvalues.size(); ++i)
        sorted = std::max(sorted, e.eigenvalues(i + 1) - e.eigenvalues(i));
    b.add(tag("eigh_descending", d), std::max(sorted, 0.0), 0.0);

    // Haar unitarity + Omega invariance under U ⊗ Ubar
    double worst_u = 0.0, worst_om = 0.0;
    const DenseOperator om = max_entangled(d);
    for (int trial = 0; trial < 50; ++trial) {
        const DenseOperator u = haar_unitary(d, rng);
        worst_u = std::max(
            worst_u, max_abs(u.mat * u.mat.adjoint() - Matrix::Identity(d, d)));
        const DenseOperator w = tensor(u, DenseOperator{u.spec, u.mat.conjugate()});
        worst_om = std::max(worst_om, max_abs(w.mat * om.mat * w.mat.adjoint() - om.mat));
    }
    b.add(tag("haar_unitarity", d), worst_u, 1e-12);
    b.add(tag("omega_uubar_invariance", d), worst_om, 1e-12);
}

void haar_mean_check(Battery& b, int d, int samples, Rng& rng) {
    const DenseOperator a = random_density(d, rng);
    Matrix acc = Matrix::Zero(d, d);
    for (int s = 0; s < samples; ++s) {
        const DenseOperator u = haar_unitary(d, rng);
        acc += u.mat * a.mat * u.mat.adjoint();
    }
    acc /= static_cast<double>(samples);
    const Matrix want = a.mat.trace() * Matrix::Identity(d, d) / static_cast<double>(d);
    b.add(tag("haar_schur_mean", d), frobenius_norm(acc - want), 0.05);
}

void sbasis_checks(Battery& b, int d, Rng& rng) {
    const SBasisOperators s = s_basis_operators(d);
    double worst = 0.0;
    worst = std::max(worst, max_abs(s.X.mat * s.X.mat - static_cast<double>(d) * s.X.mat));
    worst = std::max(worst, max_abs(s.V.mat * s.V.mat -
                                    Matrix::Identity(s.V.dim(), s.V.dim())));
    worst = std::max(worst, max_abs(s.X.mat * s.V.mat * s.X.mat - s.X.mat));
    b.add(tag("s_basis_algebra", d), worst, 1e-12);

    // a_to_s against the matrix oracle Tr[reconstruct(a) S_k]
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst_s = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Complex c5(gauss(rng), gauss(rng));
        const PermCoeffs a(gauss(rng), gauss(rng), gauss(rng), gauss(rng), c5, std::conj(c5), d);
        const DenseOperator tau = reconstruct(a);
        const SBasisCoords got = a_to_s(a);
        const auto tr = [&](const DenseOperator& op) {
            return (tau.mat * op.mat).trace().real();
        };
        worst_s = std::max({worst_s, std::abs(got.s_plus - tr(s.S_plus)),
                            std::abs(got.s_minus - tr(s.S_minus)), std::abs(got.s0 - tr(s.S0)),
                            std::abs(got.s1 - tr(s.S1)), std::abs(got.s2 - tr(s.S2)),
                            std::abs(got.s3 - tr(s.S3))});
    }
    b.add(tag("a_to_s_matrix_oracle", d), worst_s, 1e-9);
}

void cp_equivalence_check(Battery& b, int d, int n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    int hard = 0;
    for (int trial = 0; trial < n; ++trial) {
        const Complex c5(gauss(rng), gauss(rng));
        PermCoeffs a(gauss(rng), gauss(rng), gauss(rng), gauss(rng), c5, std::conj(c5), d);
        const double tr = a.trace();
        if (std::abs(tr) < 1e-3) continue;
        a = PermCoeffs(a.a1 / tr, a.a2 / tr, a.a3 / tr, a.a4 / tr, a.a5 / tr, a.a6 / tr, d);
        const FeasibilityReport rep = feasibility(a, d);
        const double mineig = min_eigenvalue(reconstruct(a));
        const bool feas = rep.feasible(1e-9);
        const bool psd = mineig >= -1e-9;
        if (feas != psd) {
            const double margin = std::min(std::abs(rep.min_inequality_slack()), std::abs(mineig));
            if (margin > 1e-8) ++hard;
        }
    }
    b.add(tag("cp_criteria_equivalence_hard_disagreements", d), hard, 0.0);
}

void trace_tp_equivalence_check(Battery& b, int d, Rng& rng) {
    // within the commutant span: Tr[tau] = 1  <=>  Tr_12[tau] = 1/d
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Complex c5(gauss(rng), gauss(rng));
        PermCoeffs a(gauss(rng), gauss(rng), gauss(rng), gauss(rng), c5, std::conj(c5), d);
        const double tr = a.trace();
        if (std::abs(tr) < 1e-3) continue;
        a = PermCoeffs(a.a1 / tr, a.a2 / tr, a.a3 / tr, a.a4 / tr, a.a5 / tr, a.a6 / tr, d);
        const DenseOperator tau = reconstruct(a);
        const DenseOperator red = partial_trace(tau, {0});
        worst = std::max(
            worst, max_abs(red.mat - Matrix::Identity(d, d) / static_cast<double>(d)));
        worst = std::max(worst, std::abs(tau.trace().real() - 1.0));
    }
    b.add(tag("trace_tp_equivalence", d), worst, 1e-9);
}

void projection_checks(Battery& b, int d, Rng& rng) {
    const ChoiChannel ch = random_choi_channel(d, {d, d}, rng);
    const DenseOperator proj = project_to_commutant(ch.choi, d);
    const DenseOperator proj2 = project_to_commutant(proj, d);
    b.add(tag("commutant_projection_idempotent", d), frobenius_distance(proj, proj2), 1e-12);
    b.add(tag("commutant_projection_trace", d),
          std::abs((proj.trace() - ch.choi.trace()).real()), 1e-10);
    // inner products against the span are preserved
    double worst_ip = 0.0;
    const DenseOperator sig_in = partial_transpose(ch.choi, 0);
    const DenseOperator sig_out = partial_transpose(proj, 0);
    for (const auto& p : Permutation3::all()) {
        const DenseOperator v = perm_operator(p, d);
        const Complex lhs = (v.mat.adjoint() * sig_in.mat).trace();
        const Complex rhs = (v.mat.adjoint() * sig_out.mat).trace();
        worst_ip = std::max(worst_ip, std::abs(lhs - rhs));
    }
    b.add(tag("commutant_projection_inner_products", d), worst_ip, 1e-9);

    // projected channels commute with Ubar ⊗ U ⊗ U and are covariant
    double worst_comm = 0.0, worst_comm_t0 = 0.0;
    const DenseOperator sig = partial_transpose(proj, 0);
    for (int s = 0; s < 25; ++s) {
        const Matrix u = haar_unitary(d, rng).mat;
        const DenseOperator ub{HilbertSpec::single(d), u.conjugate()};
        const DenseOperator uu{HilbertSpec::single(d), u};
        const Matrix w = tensor(tensor(ub, uu), uu).mat;
        worst_comm = std::max(worst_comm, frobenius_norm(w * proj.mat - proj.mat * w));
        const Matrix w3 = tensor(tensor(uu, uu), uu).mat;
        worst_comm_t0 = std::max(worst_comm_t0, frobenius_norm(w3 * sig.mat - sig.mat * w3));
    }
    b.add(tag("projected_choi_commutes_uubar", d), worst_comm, 1e-9);
    b.add(tag("projected_choi_t0_commutes_uuu", d), worst_comm_t0, 1e-9);

    ChoiChannel projected(d, {d, d}, proj);
    Rng rng2(rng());
    const double cov1 = covariance_residual(marginal(projected, 1), 20, rng2);
    const double cov2 = covariance_residual(marginal(projected, 2), 20, rng2);
    b.add(tag("projected_marginals_covariant", d), std::max(cov1, cov2), 1e-9);
}

void twirl_check(Battery& b, int d, int samples, double tol, Rng& rng) {
    const ChoiChannel ch = random_choi_channel(d, {d, d}, rng);
    const DenseOperator exact = project_to_commutant(ch.choi, d);
    const ChoiChannel tw = twirl_mc(ch, samples, rng);
    b.add(tag("twirl_mc_convergence", d), frobenius_distance(tw.choi, exact), tol);
}

void cloner_checks(Battery& b, int d) {
    double worst_cp = 0.0, worst_tp = 0.0, worst_g = 0.0, worst_24b = 0.0, worst_fix = 0.0;
    double worst_block = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double al1 = static_cast<double>(i) / 40.0;
        const CloneChannel cc = from_alpha1(al1, d);
        const ChoiChannel ch = build(cc);
        worst_cp = std::max(worst_cp, ch.cp_residual());
        worst_tp = std::max(worst_tp, ch.tp_residual());
        const auto [f1, f2] = marginal_fidelities(cc);
        worst_g = std::max(worst_g, std::abs(boundary_g(f1, f2, d)));
        const PermCoeffs a = cloner_coeffs(cc.alpha1, cc.alpha2, d);
        worst_24b = std::max(worst_24b, frobenius_distance(ch.choi, reconstruct(a)));
        worst_fix =
            std::max(worst_fix, frobenius_distance(ch.choi, project_to_commutant(ch.choi, d)));
        const BlockReport block =
            verify_sdp_block(a, {cc.alpha1 * cc.alpha1, cc.alpha2 * cc.alpha2}, d);
        worst_block = std::max(worst_block, std::max(0.0, -block.min_slack()));
    }
    b.add(tag("cloner_cp", d), worst_cp, 1e-9);
    b.add(tag("cloner_tp", d), worst_tp, 1e-9);
    b.add(tag("cloner_boundary_g", d), worst_g, 1e-10);
    b.add(tag("cloner_choi_equals_perm_expansion", d), worst_24b, 1e-9);
    b.add(tag("cloner_twirl_fixed_point", d), worst_fix, 1e-9);
    b.add(tag("cloner_sdp_block_feasible", d), worst_block, 1e-9);
}

void lambda_checks(Battery& b, int d, int n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        DirectionWeights z{};
        switch (i % 3) {
            case 0: z = DirectionWeights::from_v_positive(uni(rng), std::abs(gauss(rng)) + 0.1); break;
            case 1: z = DirectionWeights::from_v_negative(uni(rng), std::abs(gauss(rng)) + 0.1); break;
            default: z = DirectionWeights::from_v_ray(uni(rng)); break;
        }
        const double closed = lambda_max_closed(z, d);
        const double dense = eigh(h_z(z, d)).eigenvalues(0);
        worst = std::max(worst, std::abs(closed - dense));
    }
    b.add(tag("lambda_max_closed_vs_eigh", d), worst, 1e-9);
    double worst_scale = 0.0;
    for (int i = 0; i < 20; ++i) {
        const DirectionWeights z{gauss(rng), gauss(rng)};
        const double bscale = std::abs(gauss(rng)) + 0.5;
        const DirectionWeights bz{bscale * z.z1, bscale * z.z2};
        worst_scale = std::max(
            worst_scale, std::abs(lambda_max_closed(bz, d) - bscale * lambda_max_closed(z, d)));
    }
    b.add(tag("lambda_max_scaling", d), worst_scale, 1e-12);
}

void fk_checks(Battery& b, int d) {
    double worst = 0.0;
    const double amax = alpha_sq_max(d);
    for (int i = 0; i <= 200; ++i) {
        const double a2 = amax * i / 200.0;
        const double ff = merit_of_depolarizing(MeritKind::F, a2, d);
        for (MeritKind k : {MeritKind::F, MeritKind::One, MeritKind::Two, MeritKind::Inf,
                            MeritKind::Diamond})
            worst = std::max(worst, std::abs(f_map(k, merit_of_depolarizing(k, a2, d), d) - ff));
    }
    b.add(tag("fk_consistency", d), worst, 1e-12);
}

void merit_numeric_checks(Battery& b, int d, int probes, Rng& rng) {
    double worst = 0.0;
    for (double al1 : {0.25, 0.8}) {
        const ChoiChannel ch = build(from_alpha1(al1, d));
        for (int i = 1; i <= 2; ++i) {
            const ChoiChannel m = marginal(ch, i);
            const double a2 = (i == 1) ? al1 * al1
                                       : std::pow(alpha2_extended(al1, d), 2);
            for (MeritKind k : {MeritKind::F, MeritKind::One, MeritKind::Two, MeritKind::Inf,
                                MeritKind::Diamond}) {
                const double num = merit_numeric(k, m, probes, rng);
                worst = std::max(worst, std::abs(num - merit_of_depolarizing(k, a2, d)));
            }
        }
    }
    b.add(tag("merit_numeric_vs_closed_form", d), worst, 1e-9);
}

void membership_checks(Battery& b, int d, Rng& rng) {
    // corners and origin are members for every kind; a point just outside fails
    int bad = 0;
    for (MeritKind k : {MeritKind::F, MeritKind::One, MeritKind::Two, MeritKind::Inf,
                        MeritKind::Diamond}) {
        const double partner = corner_partner_value(k, d);
        if (!membership({1.0, partner, k}, d)) ++bad;
        if (!membership({partner, 1.0, k}, d)) ++bad;
        if (!membership({0.0, 0.0, k}, d)) ++bad;
        if (membership({1.0, partner + 0.01, k}, d)) ++bad;
    }
    // convexity: midpoints of random member pairs are members (F)
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<TradeoffPoint> members;
    while (members.size() < 20) {
        TradeoffPoint p{uni(rng), uni(rng), MeritKind::F};
        if (membership(p, d)) members.push_back(p);
    }
    for (size_t i = 0; i + 1 < members.size(); i += 2) {
        const TradeoffPoint mid{(members[i].x1 + members[i + 1].x1) / 2.0,
                                (members[i].x2 + members[i + 1].x2) / 2.0, MeritKind::F};
        if (!membership(mid, d)) ++bad;
    }
    b.add(tag("membership_corners_and_convexity", d), bad, 0.0);
}

void optimizer_checks(Battery& b, int d, int n_dirs, Rng& rng) {
    std::uniform_real_distribution<double> uni(0.05, 2.0);
    OptimizerConfig cfg;
    double worst_bar = 0.0, worst_line = 0.0, worst_slack = 0.0;
    for (int i = 0; i < n_dirs; ++i) {
        const DirectionWeights z{uni(rng), uni(rng)};
        const double lam = lambda_max_closed(z, d);
        const OptimizerResult rb = optimize_direction(z, MeritKind::F, d, cfg);
        const OptimizerResult rl = alpha_line_search(z, MeritKind::F, d, 200);
        worst_bar = std::max(worst_bar, std::abs(rb.value - lam));
        worst_line = std::max(worst_line, std::abs(rl.value - lam));
        worst_slack = std::max(worst_slack, std::max(0.0, -rb.slacks.min_inequality_slack()));
        worst_slack = std::max(worst_slack, std::abs(rb.slacks.normalization));
    }
    b.add(tag("optimizer_barrier_vs_lambda_max", d), worst_bar, 1e-6);
    b.add(tag("optimizer_line_search_vs_lambda_max", d), worst_line, 1e-6);
    b.add(tag("optimizer_argmax_feasible", d), worst_slack, 1e-8);
}

void no_cloning_checks(Battery& b, int d, Rng& rng) {
    double min_margin = std::numeric_limits<double>::infinity();
    for (double al1 : {0.0, 0.3, 1.0 / std::sqrt(3.0), 0.9, 1.0})
        min_margin = std::min(min_margin, no_cloning_witness(build(from_alpha1(al1, d)), rng));
    for (double alpha : {0.0, 0.5, 1.0})
        min_margin = std::min(min_margin, no_cloning_witness(trivial(alpha, d), rng));
    for (int i = 0; i < 3; ++i)
        min_margin = std::min(min_margin, no_cloning_witness(random_choi_channel(d, {d, d}, rng), rng));
    b.add(tag("no_cloning_witness_margin", d), std::max(0.0, 0.01 - min_margin), 0.0);
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    Battery b;
    b.tol_override = opt.tolerance_override;
    std::vector<int> dims = opt.dims;
    if (opt.deep)
        for (int extra : {4, 5})
            if (std::find(dims.begin(), dims.end(), extra) == dims.end()) dims.push_back(extra);

    Rng rng(opt.seed);
    for (int d : dims) {
        perm_checks(b, d);
        tensor_checks(b, d, rng);
        sbasis_checks(b, d, rng);
        cp_equivalence_check(b, d, opt.deep ? 1000 : 300, rng);
        trace_tp_equivalence_check(b, d, rng);
        cloner_checks(b, d);
        lambda_checks(b, d, opt.deep ? 500 : 150, rng);
        fk_checks(b, d);
        if (d <= 4) {
            projection_checks(b, d, rng);
            twirl_check(b, d, opt.deep ? 5000 : 1200, opt.deep ? 0.05 : 0.1, rng);
            merit_numeric_checks(b, d, opt.deep ? 500 : 120, rng);
            membership_checks(b, d, rng);
            no_cloning_checks(b, d, rng);
            optimizer_checks(b, d, opt.deep ? 25 : 8, rng);
        }
        if (opt.deep && d <= 3) haar_mean_check(b, d, 5000, rng);
    }
    return b.results;
}

}  // namespace qclone
