#include "qclone/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qclone/cloner.hpp"

namespace qclone {

void OptimizerConfig::validate() const {
    if (grid_points < 16) throw std::invalid_argument("OptimizerConfig: grid_points must be >= 16");
    if (tolerance <= 0.0) throw std::invalid_argument("OptimizerConfig: tolerance must be > 0");
    if (barrier_iterations < 1 || barrier_t_growth <= 1.0)
        throw std::invalid_argument("OptimizerConfig: bad barrier schedule");
}

namespace {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

double merit_slope(MeritKind kind, int d) {
    const double dd = d;
    switch (kind) {
        case MeritKind::F:
        case MeritKind::Diamond: return (dd * dd - 1.0) / (dd * dd);
        case MeritKind::One:
        case MeritKind::Inf: return (dd - 1.0) / dd;
        case MeritKind::Two: return std::sqrt((dd - 1.0) / dd);
    }
    return 0.0;
}

/// Feasible set in y = (a2, a3, a4, t) with a5 = a6 = t and a1 eliminated
/// via the normalization a1 d^3 + (a2+a3+a4) d^2 + 2 t d = 1.
struct BarrierProblem {
    int d;
    double d2, d3;
    double c2b;     // coefficient of the second inequality
    double amax;    // d^2/(d^2-1)
    Vec4 da1;       // gradient of a1(y)
    Vec4 g_al1, g_al2;
    Vec4 grad_obj;  // gradient of the (affine) objective
    double obj_const = 0.0;
    Mat4 hess_g5;   // constant Hessian of the quadratic determinant slack

    BarrierProblem(const DirectionWeights& w, MeritKind kind, int d_) : d(d_) {
        d2 = static_cast<double>(d) * d;
        d3 = d2 * d;
        c2b = 0.5 * d * (d - 2.0) * (d + 1.0);
        amax = d2 / (d2 - 1.0);
        da1 << -1.0 / d, -1.0 / d, -1.0 / d, -2.0 / d2;
        g_al1 = da1 * d3 + Vec4(0, d2, d2, 0);
        g_al2 = da1 * d3 + Vec4(d2, 0, d2, 0);
        const double c = merit_slope(kind, d);
        grad_obj = -c * (w.z1 * g_al1 + w.z2 * g_al2);
        // objective value at y = 0, where a1 = 1/d^3 and alpha_i^2 = 1
        obj_const = (w.z1 + w.z2) * (1.0 - c);

        // Hessian of g5 in (a1,a2,a3,a4,t), chained through a1(y)
        Eigen::Matrix<double, 5, 5> h5 = Eigen::Matrix<double, 5, 5>::Zero();
        h5(0, 0) = 2;
        h5(0, 4) = h5(4, 0) = 2;
        h5(0, 1) = h5(1, 0) = d;
        h5(0, 2) = h5(2, 0) = d;
        h5(1, 2) = h5(2, 1) = -1 + d2;
        h5(1, 3) = h5(3, 1) = -1;
        h5(2, 3) = h5(3, 2) = -1;
        h5(3, 3) = -2;
        h5(3, 4) = h5(4, 3) = -2.0 * d;
        h5(4, 4) = 2.0 - 2.0 * d2;
        Eigen::Matrix<double, 5, 4> j = Eigen::Matrix<double, 5, 4>::Zero();
        j.row(0) = da1.transpose();
        j(1, 0) = j(2, 1) = j(3, 2) = j(4, 3) = 1.0;
        hess_g5 = j.transpose() * h5 * j;
    }

    double a1_of(const Vec4& y) const {
        return (1.0 - (y(0) + y(1) + y(2)) * d2 - 2.0 * y(3) * d) / d3;
    }
    double alpha1_sq(const Vec4& y) const { return a1_of(y) * d3 + y(1) * d2 + y(2) * d2; }
    double alpha2_sq(const Vec4& y) const { return a1_of(y) * d3 + y(0) * d2 + y(2) * d2; }

    double objective(const Vec4& y) const { return obj_const + grad_obj.dot(y); }

    struct Constraint {
        double g;
        Vec4 grad;
        const Mat4* hess;  // nullptr for affine constraints
    };

    std::vector<Constraint> constraints(const Vec4& y) const {
        const double a1 = a1_of(y);
        const double a2 = y(0), a3 = y(1), a4 = y(2), t = y(3);
        const double al1 = alpha1_sq(y), al2 = alpha2_sq(y);
        std::vector<Constraint> cs;
        cs.push_back({a1 + a4, da1 + Vec4(0, 0, 1, 0), nullptr});
        if (d > 2) cs.push_back({(a1 - a4) * c2b, (da1 - Vec4(0, 0, 1, 0)) * c2b, nullptr});
        cs.push_back({2.0 * a1 + (a2 + a3) * d + 2.0 * t,
                      2.0 * da1 + Vec4(d, d, 0, 2), nullptr});
        // 2x2-block determinant, quadratic in the coefficients
        const double g5 = -(a2 + a4) * (a3 + a4) + (a1 + t) * (a1 + t) +
                          (a1 * (a2 + a3) - 2.0 * a4 * t) * d + (a2 * a3 - t * t) * d2;
        const double p_a1 = 2.0 * (a1 + t) + (a2 + a3) * d;
        Vec4 dg5(-(a3 + a4) + a1 * d + a3 * d2,
                 -(a2 + a4) + a1 * d + a2 * d2,
                 -(a2 + a4) - (a3 + a4) - 2.0 * t * d,
                 2.0 * (a1 + t) - 2.0 * a4 * d - 2.0 * t * d2);
        dg5 += p_a1 * da1;
        cs.push_back({g5, dg5, &hess_g5});
        cs.push_back({al1, g_al1, nullptr});
        cs.push_back({al2, g_al2, nullptr});
        cs.push_back({amax - al1, -g_al1, nullptr});
        cs.push_back({amax - al2, -g_al2, nullptr});
        return cs;
    }

    bool strictly_feasible(const Vec4& y) const {
        for (const auto& c : constraints(y))
            if (c.g <= 0.0) return false;
        return true;
    }

    double barrier_value(const Vec4& y, double tb) const {
        double v = -tb * objective(y);
        for (const auto& c : constraints(y)) {
            if (c.g <= 0.0) return std::numeric_limits<double>::infinity();
            v -= std::log(c.g);
        }
        return v;
    }
};

}  // namespace

OptimizerResult optimize_direction(const DirectionWeights& w, MeritKind kind, int d,
                                   const OptimizerConfig& cfg) {
    cfg.validate();
    const BarrierProblem prob(w, kind, d);

    Vec4 y = Vec4::Zero();  // maximally mixed state, strictly interior
    if (w.z1 >= 0.0 && w.z2 >= 0.0 && (w.z1 > 0.0 || w.z2 > 0.0)) {
        // warm start: best cloner-family channel on a coarse grid, blended
        // toward the interior so every barrier argument stays positive
        const double a1max = static_cast<double>(d) / std::sqrt(static_cast<double>(d) * d - 1.0);
        double best = -1e300, best_a1 = 0.0;
        for (int i = 0; i < cfg.grid_points; ++i) {
            const double al1 = a1max * i / (cfg.grid_points - 1);
            const double al2 = alpha2_extended(al1, d);
            const double v = w.z1 * merit_of_depolarizing(kind, al1 * al1, d) +
                             w.z2 * merit_of_depolarizing(kind, al2 * al2, d);
            if (v > best) {
                best = v;
                best_a1 = al1;
            }
        }
        const PermCoeffs c = cloner_coeffs(best_a1, alpha2_extended(best_a1, d), d);
        const Vec4 boundary(c.a2, c.a3, c.a4, c.a5.real());
        const Vec4 blended = 0.9 * boundary;  // convex mix with the mixed state at y = 0
        if (prob.strictly_feasible(blended)) y = blended;
    }
    double tb = 1.0;
    int iterations = 0;
    double prev_outer = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;

    for (int outer = 0; outer < cfg.barrier_iterations; ++outer) {
        for (int it = 0; it < 40; ++it) {
            const auto cs = prob.constraints(y);
            Vec4 grad = -tb * prob.grad_obj;
            Mat4 hess = Mat4::Zero();
            for (const auto& c : cs) {
                grad -= c.grad / c.g;
                hess += (c.grad * c.grad.transpose()) / (c.g * c.g);
                if (c.hess) hess -= *c.hess / c.g;
            }
            Vec4 step = hess.ldlt().solve(-grad);
            if (!step.allFinite()) step = -grad;
            const double decrement = -grad.dot(step);
            // backtracking line search, accepting only strictly feasible steps
            const double f0 = prob.barrier_value(y, tb);
            double s = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 80; ++bt) {
                const Vec4 yn = y + s * step;
                const double fn = prob.barrier_value(yn, tb);
                if (std::isfinite(fn) && fn <= f0 + 0.25 * s * grad.dot(step)) {
                    y = yn;
                    accepted = true;
                    break;
                }
                s *= 0.5;
            }
            ++iterations;
            if (!accepted) break;
            if (decrement / 2.0 < 1e-12) break;
        }
        const double val = prob.objective(y);
        if (outer > 0 && std::abs(val - prev_outer) < cfg.tolerance) converged = true;
        prev_outer = val;
        tb *= cfg.barrier_t_growth;
    }

    OptimizerResult res;
    res.value = prob.objective(y);
    const double a1 = prob.a1_of(y);
    res.argmax_a = PermCoeffs::real_coeffs(a1, y(0), y(1), y(2), y(3), d);
    const double al1 = std::clamp(prob.alpha1_sq(y), 0.0, alpha_sq_max(d));
    const double al2 = std::clamp(prob.alpha2_sq(y), 0.0, alpha_sq_max(d));
    res.argmax_point = {merit_of_depolarizing(kind, al1, d), merit_of_depolarizing(kind, al2, d),
                        kind};
    res.slacks = feasibility(res.argmax_a, d);
    res.iterations = iterations;
    res.converged = converged;
    return res;
}

OptimizerResult alpha_line_search(const DirectionWeights& w, MeritKind kind, int d, int n) {
    if (w.z1 < 0.0 || w.z2 < 0.0 || (w.z1 == 0.0 && w.z2 == 0.0))
        throw std::invalid_argument("alpha_line_search: need z1, z2 >= 0, not both zero");
    if (n < 2) throw std::invalid_argument("alpha_line_search: n must be >= 2");

    const double a1max = static_cast<double>(d) / std::sqrt(static_cast<double>(d) * d - 1.0);
    const auto value_at = [&](double al1) {
        const double al2 = alpha2_extended(al1, d);
        return w.z1 * merit_of_depolarizing(kind, al1 * al1, d) +
               w.z2 * merit_of_depolarizing(kind, al2 * al2, d);
    };

    int best_i = 0;
    double best = -1e300;
    for (int i = 0; i < n; ++i) {
        const double al1 = a1max * i / (n - 1);
        const double v = value_at(al1);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    // golden-section refinement on the bracketing interval (objective is
    // unimodal along the boundary sweep for nonnegative z)
    double lo = a1max * std::max(best_i - 1, 0) / (n - 1);
    double hi = a1max * std::min(best_i + 1, n - 1) / (n - 1);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = hi - phi * (hi - lo), c2 = lo + phi * (hi - lo);
    double f1 = value_at(c1), f2 = value_at(c2);
    int iterations = n;
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + phi * (hi - lo);
            f2 = value_at(c2);
        } else {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - phi * (hi - lo);
            f1 = value_at(c1);
        }
        ++iterations;
    }
    const double al1 = 0.5 * (lo + hi);
    const double al2 = alpha2_extended(al1, d);

    OptimizerResult res;
    res.value = value_at(al1);
    res.argmax_a = cloner_coeffs(al1, al2, d);
    res.argmax_point = {merit_of_depolarizing(kind, al1 * al1, d),
                        merit_of_depolarizing(kind, al2 * al2, d), kind};
    res.slacks = feasibility(res.argmax_a, d);
    res.iterations = iterations;
    res.converged = true;
    return res;
}

double BlockReport::min_slack() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) m = std::min(m, e.slack);
    return m;
}

BlockReport verify_sdp_block(const PermCoeffs& a, std::pair<double, double> alphas_sq, int d) {
    const SBasisCoords s = a_to_s(a);
    const double amax = alpha_sq_max(d);
    BlockReport r;
    r.entries = {
        {"s0", s.s0},
        {"s_plus", s.s_plus},
        {"s_minus", s.s_minus},
        {"block2x2_trace", 2.0 * s.s0},
        {"block2x2_det", s.s0 * s.s0 - s.s1 * s.s1 - s.s2 * s.s2 - s.s3 * s.s3},
        {"norm_lower", s.s_plus + s.s_minus + s.s0 - 1.0},
        {"norm_upper", 1.0 - (s.s_plus + s.s_minus + s.s0)},
        {"alpha1_sq", alphas_sq.first},
        {"alpha2_sq", alphas_sq.second},
        {"alpha1_sq_ub", amax - alphas_sq.first},
        {"alpha2_sq_ub", amax - alphas_sq.second},
    };
    return r;
}

}  // namespace qclone
