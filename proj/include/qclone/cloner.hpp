#pragma once

#include "qclone/channel.hpp"
#include "qclone/symmetry.hpp"

namespace qclone {

/// Optimal universal 1 -> 2 asymmetric cloner, parametrized by (alpha1, alpha2)
/// on the canonical nonnegative branch of
///   alpha1^2 + alpha2^2 + 2 alpha1 alpha2 / d = 1.
struct CloneChannel {
    int d = 0;
    double alpha1 = 0.0;
    double alpha2 = 1.0;

    CloneChannel() = default;
    CloneChannel(int d_, double a1, double a2);
};

/// Largest admissible alpha1 on the canonical branch (alpha2 >= 0): 1.
/// The full marginal range alpha^2 in [0, d^2/(d^2-1)] needs the extended
/// branch where the partner alpha is negative.
double alpha1_max_canonical();

/// Solve the constraint for the nonnegative root:
///   alpha2 = -alpha1/d + sqrt(1 - alpha1^2 (1 - 1/d^2)).
CloneChannel from_alpha1(double alpha1, int d);

/// Same root formula on the extended branch alpha1 in [0, d/sqrt(d^2-1)];
/// alpha2 may be negative.  Used to trace the full upper-boundary arc.
double alpha2_extended(double alpha1, int d);

/// Choi matrix of T(rho) = (alpha2 1 + alpha1 F)(rho ⊗ 1/d)(alpha2 1 + alpha1 F).
ChoiChannel build(const CloneChannel& ch);

/// Same construction for any real (alpha1, alpha2) pair on the constraint.
ChoiChannel build_cloner_choi(double alpha1, double alpha2, int d);

/// T(rho) = alpha rho ⊗ 1/d + (1-alpha) 1/d ⊗ rho, alpha in [0,1].
ChoiChannel trivial(double alpha, int d);

/// Entanglement fidelities of the two marginals: F_i = 1 - alpha_i^2 (d^2-1)/d^2.
std::pair<double, double> marginal_fidelities(const CloneChannel& ch);

/// Permutation-basis coefficients of the cloner Choi:
/// a2 = alpha2^2/d^2, a3 = alpha1^2/d^2, a5 = a6 = alpha1 alpha2/d^2.
PermCoeffs cloner_coeffs(double alpha1, double alpha2, int d);

}  // namespace qclone
