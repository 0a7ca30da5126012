#include "qclone/cloner.hpp"

#include <cmath>

namespace qclone {

CloneChannel::CloneChannel(int d_, double a1, double a2) : d(d_), alpha1(a1), alpha2(a2) {
    if (d < 2) throw std::invalid_argument("CloneChannel: d must be >= 2");
    if (a1 < 0.0 || a2 < 0.0)
        throw std::invalid_argument("CloneChannel: canonical branch requires alpha1, alpha2 >= 0");
    const double c = a1 * a1 + a2 * a2 + 2.0 * a1 * a2 / d - 1.0;
    if (std::abs(c) > 1e-12)
        throw std::invalid_argument("CloneChannel: constraint violated by " + std::to_string(c));
}

double alpha1_max_canonical() { return 1.0; }

double alpha2_extended(double alpha1, int d) {
    const double dd = d;
    const double disc = 1.0 - alpha1 * alpha1 * (1.0 - 1.0 / (dd * dd));
    if (disc < -1e-12)
        throw std::invalid_argument("alpha2_extended: alpha1 beyond d/sqrt(d^2-1)");
    // at the tangency point the discriminant is 0 by construction; snapping
    // avoids the sqrt(eps) precision loss there
    if (disc < 1e-14) return -alpha1 / dd;
    return -alpha1 / dd + std::sqrt(disc);
}

CloneChannel from_alpha1(double alpha1, int d) {
    if (d < 2) throw std::invalid_argument("from_alpha1: d must be >= 2");
    if (alpha1 < 0.0 || alpha1 > 1.0 + 1e-12)
        throw std::invalid_argument("from_alpha1: alpha1 must lie in [0,1] for a nonnegative root");
    const double a2 = alpha2_extended(std::min(alpha1, 1.0), d);
    return CloneChannel(d, std::min(alpha1, 1.0), std::max(a2, 0.0));
}

ChoiChannel build_cloner_choi(double alpha1, double alpha2, int d) {
    const double c = alpha1 * alpha1 + alpha2 * alpha2 + 2.0 * alpha1 * alpha2 / d - 1.0;
    if (std::abs(c) > 1e-10)
        throw std::invalid_argument("build_cloner_choi: constraint violated");
    const DenseOperator f = flip_operator(d);
    const DenseOperator m{f.spec,
                          alpha2 * Matrix::Identity(d * d, d * d) + alpha1 * f.mat};
    const DenseOperator big = tensor(DenseOperator::identity(HilbertSpec::single(d)), m);
    const DenseOperator base =
        (1.0 / d) * tensor(max_entangled(d), DenseOperator::identity(HilbertSpec::single(d)));
    Matrix tau = big.mat * base.mat * big.mat.adjoint();
    return ChoiChannel(d, {d, d}, DenseOperator(HilbertSpec({d, d, d}), std::move(tau)));
}

ChoiChannel build(const CloneChannel& ch) { return build_cloner_choi(ch.alpha1, ch.alpha2, ch.d); }

ChoiChannel trivial(double alpha, int d) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("trivial: alpha must be in [0,1]");
    if (d < 2) throw std::invalid_argument("trivial: d must be >= 2");
    const DenseOperator id1 = DenseOperator::identity(HilbertSpec::single(d));
    // (id ⊗ T)(Ω) = alpha Ω_{01} ⊗ 1_2/d + (1-alpha) Ω_{02} ⊗ 1_1/d
    const DenseOperator om01 = tensor(max_entangled(d), id1);
    DenseOperator om02 = om01;  // permute factors 1 <-> 2
    {
        const DenseOperator v12 = perm_operator(Permutation3::transposition(1, 2), d);
        om02 = DenseOperator{om01.spec, v12.mat * om01.mat * v12.mat.adjoint()};
    }
    Matrix tau = (alpha / d) * om01.mat + ((1.0 - alpha) / d) * om02.mat;
    return ChoiChannel(d, {d, d}, DenseOperator(HilbertSpec({d, d, d}), std::move(tau)));
}

std::pair<double, double> marginal_fidelities(const CloneChannel& ch) {
    const double dd = ch.d;
    const double c = (dd * dd - 1.0) / (dd * dd);
    return {1.0 - ch.alpha1 * ch.alpha1 * c, 1.0 - ch.alpha2 * ch.alpha2 * c};
}

PermCoeffs cloner_coeffs(double alpha1, double alpha2, int d) {
    const double d2 = static_cast<double>(d) * d;
    return PermCoeffs::real_coeffs(0.0, alpha2 * alpha2 / d2, alpha1 * alpha1 / d2, 0.0,
                                   alpha1 * alpha2 / d2, d);
}

}  // namespace qclone
