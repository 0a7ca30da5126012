#pragma once

#include "qclone/tensor.hpp"

namespace qclone {

/// Coefficients of tau^{t0} in the S3 permutation-operator basis, ordered
///   a1*1 + a2*V_(01) + a3*V_(02) + a4*V_(12) + a5*V_(012) + a6*V_(021).
/// Hermitian tau means a1..a4 real and a5 = conj(a6).
struct PermCoeffs {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
    Complex a5{0.0, 0.0}, a6{0.0, 0.0};
    int dim = 0;

    PermCoeffs() = default;
    PermCoeffs(double a1_, double a2_, double a3_, double a4_, Complex a5_, Complex a6_, int d);
    static PermCoeffs real_coeffs(double a1, double a2, double a3, double a4, double a56, int d);

    bool hermitian(double tol = 1e-12) const;
    /// Tr[tau] = a1 d^3 + (a2+a3+a4) d^2 + (a5+a6) d
    double trace() const;
};

/// Eggeling–Werner commutant coordinates s_k = Tr[tau S_k].
struct SBasisCoords {
    double s_plus = 0.0, s_minus = 0.0, s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
};

/// The six basis operators of the partially transposed commutant algebra,
/// built from X = V_(01)^{t0} and V = V_(12).
struct SBasisOperators {
    DenseOperator X, V;
    DenseOperator S_plus, S_minus, S0, S1, S2, S3;
};

SBasisOperators s_basis_operators(int d);

/// Slacks of the scalar CP/TP criteria, one per direct summand of the
/// commutant algebra (two one-dimensional sectors, the trace and determinant
/// of the 2x2 block) plus the trace normalization.  Inequality slacks are
/// feasible iff >= 0; `normalization` is a signed residual, feasible iff 0.
/// The minus-sector slack is identically zero at d = 2 and marked vacuous.
struct FeasibilityReport {
    double sector_plus = 0.0;   // a1 + a4
    double sector_minus = 0.0;  // (a1 - a4) d(d-2)(d+1)/2
    bool sector_minus_vacuous = false;
    double block_trace = 0.0;   // 2 a1 + (a2 + a3) d + a5 + a6
    double normalization = 0.0; // a1 d^3 + (a2+a3+a4) d^2 + (a5+a6) d - 1
    double block_det = 0.0;     // quadratic 2x2-block determinant
    double min_inequality_slack() const;
    bool feasible(double tol = 1e-9) const;
};

/// Coefficients of tau^{t0} in the permutation basis via the Gram system
/// G a = m, m_pi = Tr[V_pi^† tau^{t0}].  Throws if the reconstruction
/// residual exceeds 1e-6 (input not in the commutant span).
/// At d = 2 the operators are linearly dependent (the antisymmetrizer
/// vanishes) and the minimum-norm solution is returned.
PermCoeffs expand_in_perm_basis(const DenseOperator& tau, int d);

/// tau_{012} from the coefficients, assembled term by term from the
/// partially transposed permutation operators:
///   a1*1 + a2 d |Ω><Ω|_{01} ⊗ 1_2 + a3 d |Ω><Ω|_{02} ⊗ 1_1 + a4 1_0 ⊗ F_{12}
///   + a5 Σ|jjk><iki| + a6 Σ|kjk><iij|.
DenseOperator reconstruct(const PermCoeffs& a);

/// Linear a -> s conversion (closed form, matches Tr[reconstruct(a) S_k]).
SBasisCoords a_to_s(const PermCoeffs& a);

FeasibilityReport feasibility(const PermCoeffs& a, int d);

/// Orthogonal (Frobenius) projection of tau^{t0} onto span{V_pi}, transposed
/// back.  Exact fixed point of the twirl; idempotent and trace preserving.
DenseOperator project_to_commutant(const DenseOperator& tau, int d);

/// Gram matrix entry Tr[V_pi^† V_sigma] = d^cycles(pi^{-1} sigma).
Eigen::MatrixXd perm_gram_matrix(int d);

}  // namespace qclone
