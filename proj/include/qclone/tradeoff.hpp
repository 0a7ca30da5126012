#pragma once

#include <optional>
#include <string>

#include "qclone/channel.hpp"

namespace qclone {

/// The five single-clone figures of merit.
enum class MeritKind { F, One, Two, Inf, Diamond };

std::string merit_name(MeritKind k);
std::optional<MeritKind> parse_merit(const std::string& name);

/// A point in quality space, tagged with the merit it lives in.
struct TradeoffPoint {
    double x1 = 0.0;
    double x2 = 0.0;
    MeritKind kind = MeritKind::F;
};

/// Objective direction z = (z1, z2).
struct DirectionWeights {
    double z1 = 0.0;
    double z2 = 0.0;

    /// z = b (v, 1-v), b >= 0: the z1+z2 > 0 case.
    static DirectionWeights from_v_positive(double v, double b = 1.0) { return {b * v, b * (1.0 - v)}; }
    /// z = b (-v, v-1), b >= 0: the z1+z2 < 0 case.
    static DirectionWeights from_v_negative(double v, double b = 1.0) { return {-b * v, b * (v - 1.0)}; }
    /// z = (v, -v): the z1+z2 = 0 ray.
    static DirectionWeights from_v_ray(double v) { return {v, -v}; }
};

/// Maximal admissible alpha^2 for a depolarizing marginal: d^2/(d^2-1).
double alpha_sq_max(int d);

/// Merit of the depolarizing marginal T(rho) = alpha^2 1/d + (1-alpha^2) rho.
double merit_of_depolarizing(MeritKind kind, double alpha_sq, int d);

/// Numeric merit of a square channel.  One/Two/Inf take a sup over the d
/// basis states plus n_probes Haar-random pure states; F and Diamond are
/// single evaluations on the maximally entangled state.
double merit_numeric(MeritKind kind, const ChoiChannel& marginal, int n_probes, Rng& rng);

/// H_z = z1 |Ω><Ω|_{01} ⊗ 1_2 + z2 |Ω><Ω|_{02} ⊗ 1_1.
DenseOperator h_z(const DirectionWeights& w, int d);

/// Closed-form max eigenvalue of H_z (case split on sign of z1+z2).
double lambda_max_closed(const DirectionWeights& w, int d);

/// Signed boundary residual
///   g(x1,x2) = (sqrt(x1)+sqrt(x2))^2/(d+1) + (sqrt(x1)-sqrt(x2))^2/(d-1) - 2/d;
/// zero on the upper boundary of C^F, negative strictly inside.
double boundary_g(double x1, double x2, int d);

/// Merit-to-fidelity conversion f^k.
double f_map(MeritKind kind, double x, int d);

/// Partner coordinate of the x_max corner (1, partner) for the given merit.
double corner_partner_value(MeritKind kind, int d);

/// Point of the achievable set C^k?  F uses the support-function test on a
/// direction grid; other kinds test the convex hull of {0}, the corners and
/// the mapped boundary curve.
bool membership(const TradeoffPoint& p, int d);

/// Largest violation of z.x <= lambda_max(H_z) over the direction grid
/// (refined); <= 0 iff the point is in C^F.
double support_violation(double x1, double x2, int d);

struct BoundaryPoint {
    double x1 = 0.0;
    double x2 = 0.0;
    bool corner = false;
};

/// n >= 2 points tracing the upper boundary of C^k in walk order, the two
/// closed-form x_max corners included exactly.
std::vector<BoundaryPoint> sample_boundary(MeritKind kind, int d, int n);

}  // namespace qclone
