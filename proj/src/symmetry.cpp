#include "qclone/symmetry.hpp"

#include <cmath>

namespace qclone {

PermCoeffs::PermCoeffs(double a1_, double a2_, double a3_, double a4_, Complex a5_, Complex a6_,
                       int d)
    : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a5(a5_), a6(a6_), dim(d) {
    if (d < 2) throw std::invalid_argument("PermCoeffs: dim must be >= 2");
}

PermCoeffs PermCoeffs::real_coeffs(double a1, double a2, double a3, double a4, double a56, int d) {
    return PermCoeffs(a1, a2, a3, a4, Complex(a56, 0.0), Complex(a56, 0.0), d);
}

bool PermCoeffs::hermitian(double tol) const { return std::abs(a5 - std::conj(a6)) <= tol; }

double PermCoeffs::trace() const {
    const double d = dim;
    return a1 * d * d * d + (a2 + a3 + a4) * d * d + (a5 + a6).real() * d;
}

SBasisOperators s_basis_operators(int d) {
    SBasisOperators b{
        partial_transpose(perm_operator(Permutation3::transposition(0, 1), d), 0),
        perm_operator(Permutation3::transposition(1, 2), d),
        {}, {}, {}, {}, {}, {}};
    const DenseOperator id = DenseOperator::identity(HilbertSpec({d, d, d}));
    const double dd = d;
    const DenseOperator pp = 0.5 * (id + b.V);
    const DenseOperator pm = 0.5 * (id - b.V);
    b.S_plus = pp * (id - (2.0 / (dd + 1.0)) * b.X) * pp;
    b.S_minus = pm * (id - (2.0 / (dd - 1.0)) * b.X) * pm;
    const DenseOperator vxv = b.V * b.X * b.V;
    const DenseOperator xv = b.X * b.V;
    const DenseOperator vx = b.V * b.X;
    const double c = 1.0 / (dd * dd - 1.0);
    b.S0 = c * (dd * (b.X + vxv) - (xv + vx));
    b.S1 = c * (dd * (xv + vx) - (b.X + vxv));
    const double cs = 1.0 / std::sqrt(dd * dd - 1.0);
    b.S2 = cs * (b.X - vxv);
    b.S3 = (Complex(0.0, 1.0) * cs) * (xv - vx);
    return b;
}

double FeasibilityReport::min_inequality_slack() const {
    double m = sector_plus;
    if (!sector_minus_vacuous) m = std::min(m, sector_minus);
    m = std::min(m, block_trace);
    m = std::min(m, block_det);
    return m;
}

bool FeasibilityReport::feasible(double tol) const {
    return min_inequality_slack() >= -tol && std::abs(normalization) <= tol;
}

Eigen::MatrixXd perm_gram_matrix(int d) {
    const auto& perms = Permutation3::all();
    Eigen::MatrixXd g(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Permutation3 comp =
                perms[static_cast<size_t>(i)].inverse().compose(perms[static_cast<size_t>(j)]);
            g(i, j) = std::pow(static_cast<double>(d), comp.cycles());
        }
    return g;
}

namespace {

Eigen::Matrix<Complex, 6, 1> expand_coefficients(const DenseOperator& tau, int d,
                                                 double* residual_out) {
    if (tau.spec.local_dims != std::vector<int>{d, d, d})
        throw std::invalid_argument("expand_in_perm_basis: operator is not on (C^d)^3");
    const DenseOperator sigma = partial_transpose(tau, 0);
    const auto& perms = Permutation3::all();
    std::vector<DenseOperator> vs;
    vs.reserve(6);
    for (const auto& p : perms) vs.push_back(perm_operator(p, d));

    Eigen::Matrix<Complex, 6, 1> m;
    for (int i = 0; i < 6; ++i)
        m(i) = (vs[static_cast<size_t>(i)].mat.adjoint() * sigma.mat).trace();

    const Eigen::MatrixXcd g = perm_gram_matrix(d).cast<Complex>();
    // minimum-norm least squares; the Gram matrix is singular at d = 2
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(g);
    Eigen::Matrix<Complex, 6, 1> a = cod.solve(m);

    if (residual_out) {
        Matrix recon = Matrix::Zero(tau.dim(), tau.dim());
        for (int i = 0; i < 6; ++i) recon += a(i) * vs[static_cast<size_t>(i)].mat;
        *residual_out = frobenius_norm(sigma.mat - recon);
    }
    return a;
}

}  // namespace

PermCoeffs expand_in_perm_basis(const DenseOperator& tau, int d) {
    double residual = 0.0;
    const auto a = expand_coefficients(tau, d, &residual);
    if (residual > 1e-6)
        throw std::invalid_argument(
            "expand_in_perm_basis: operator is not in the commutant span (residual " +
            std::to_string(residual) + ")");
    return PermCoeffs(a(0).real(), a(1).real(), a(2).real(), a(3).real(), a(4), a(5), d);
}

DenseOperator reconstruct(const PermCoeffs& a) {
    const int d = a.dim;
    const int n = d * d * d;
    Matrix out = Matrix::Zero(n, n);

    out += a.a1 * Matrix::Identity(n, n);

    // a2 * d |Ω><Ω|_{01} ⊗ 1_2 = a2 * Σ_{ijk} |iik><jjk|
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                out((i * d + i) * d + k, (j * d + j) * d + k) += a.a2;

    // a3 * d |Ω><Ω|_{02} ⊗ 1_1 = a3 * Σ_{ijk} |iki><jkj|
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                out((i * d + k) * d + i, (j * d + k) * d + j) += a.a3;

    // a4 * 1_0 ⊗ F_{12} = a4 * Σ_{ijk} |ikj><ijk|
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                out((i * d + k) * d + j, (i * d + j) * d + k) += a.a4;

    // a5 * Σ_{ijk} |jjk><iki|,  a6 * Σ_{ijk} |kjk><iij|
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                out((j * d + j) * d + k, (i * d + k) * d + i) += a.a5;
                out((k * d + j) * d + k, (i * d + i) * d + j) += a.a6;
            }

    return {HilbertSpec({d, d, d}), std::move(out)};
}

SBasisCoords a_to_s(const PermCoeffs& a) {
    const double d = a.dim;
    const double r = std::sqrt(d * d - 1.0);
    const double a56 = (a.a5 + a.a6).real();
    SBasisCoords s;
    s.s0 = 2.0 * d * a.a1 + d * d * (a.a2 + a.a3) + d * a56;
    s.s1 = d * (a.a2 + a.a3) + 2.0 * d * a.a4 + d * d * a56;
    s.s2 = d * r * (a.a2 - a.a3);
    // i d r (a6 - a5); real for hermitian coefficients
    s.s3 = (Complex(0.0, 1.0) * d * r * (a.a6 - a.a5)).real();
    s.s_plus = 0.5 * d * (d + 2.0) * (d - 1.0) * (a.a1 + a.a4);
    s.s_minus = 0.5 * d * (d - 2.0) * (d + 1.0) * (a.a1 - a.a4);
    return s;
}

FeasibilityReport feasibility(const PermCoeffs& a, int d) {
    if (a.dim != d) throw std::invalid_argument("feasibility: dimension mismatch");
    const double dd = d;
    const double a56 = (a.a5 + a.a6).real();
    const Complex prod56 = a.a5 * a.a6;
    FeasibilityReport r;
    r.sector_plus = a.a1 + a.a4;
    r.sector_minus = (a.a1 - a.a4) * 0.5 * dd * (dd - 2.0) * (dd + 1.0);
    r.sector_minus_vacuous = (d == 2);
    r.block_trace = 2.0 * a.a1 + (a.a2 + a.a3) * dd + a56;
    r.normalization = a.trace() - 1.0;
    r.block_det = (-(a.a2 + a.a4) * (a.a3 + a.a4) + ((a.a1 + a.a5) * (a.a1 + a.a6)).real() +
                   (a.a1 * (a.a2 + a.a3) - a.a4 * a56) * dd +
                   (a.a2 * a.a3 - prod56.real()) * dd * dd);
    return r;
}

DenseOperator project_to_commutant(const DenseOperator& tau, int d) {
    const auto a = expand_coefficients(tau, d, nullptr);
    const auto& perms = Permutation3::all();
    Matrix proj = Matrix::Zero(tau.dim(), tau.dim());
    for (int i = 0; i < 6; ++i) proj += a(i) * perm_operator(perms[static_cast<size_t>(i)], d).mat;
    return partial_transpose(DenseOperator{tau.spec, std::move(proj)}, 0);
}

}  // namespace qclone
