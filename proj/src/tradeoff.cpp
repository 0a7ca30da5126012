#include "qclone/tradeoff.hpp"

#include <algorithm>
#include <cmath>

#include "qclone/cloner.hpp"

namespace qclone {

std::string merit_name(MeritKind k) {
    switch (k) {
        case MeritKind::F: return "F";
        case MeritKind::One: return "one";
        case MeritKind::Two: return "two";
        case MeritKind::Inf: return "inf";
        case MeritKind::Diamond: return "diamond";
    }
    return "?";
}

std::optional<MeritKind> parse_merit(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "f" || s == "fidelity") return MeritKind::F;
    if (s == "one" || s == "1" || s == "trace") return MeritKind::One;
    if (s == "two" || s == "2" || s == "frobenius") return MeritKind::Two;
    if (s == "inf" || s == "infinity" || s == "operator") return MeritKind::Inf;
    if (s == "diamond" || s == "dia") return MeritKind::Diamond;
    return std::nullopt;
}

double alpha_sq_max(int d) {
    const double dd = d;
    return dd * dd / (dd * dd - 1.0);
}

double merit_of_depolarizing(MeritKind kind, double alpha_sq, int d) {
    if (d < 2) throw std::invalid_argument("merit_of_depolarizing: d must be >= 2");
    if (alpha_sq < -1e-12 || alpha_sq > alpha_sq_max(d) + 1e-12)
        throw std::invalid_argument("merit_of_depolarizing: alpha_sq outside [0, d^2/(d^2-1)]");
    const double dd = d;
    double v = 0.0;
    switch (kind) {
        case MeritKind::F:
        case MeritKind::Diamond:
            v = 1.0 - alpha_sq * (dd * dd - 1.0) / (dd * dd);
            break;
        case MeritKind::One:
        case MeritKind::Inf:
            v = 1.0 - alpha_sq * (dd - 1.0) / dd;
            break;
        case MeritKind::Two:
            v = 1.0 - alpha_sq * std::sqrt((dd - 1.0) / dd);
            break;
    }
    return std::clamp(v, 0.0, 1.0);
}

double merit_numeric(MeritKind kind, const ChoiChannel& marginal, int n_probes, Rng& rng) {
    if (marginal.n_outputs() != 1 || marginal.output_dims[0] != marginal.input_dim)
        throw std::invalid_argument("merit_numeric: channel must be square");
    const int d = marginal.input_dim;

    if (kind == MeritKind::F) {
        const Vector om = max_entangled_ket(d);
        return (om.adjoint() * marginal.choi.mat * om)(0).real();
    }
    if (kind == MeritKind::Diamond) {
        const DenseOperator diff = marginal.choi - max_entangled(d);
        return 1.0 - 0.5 * trace_norm_hermitian(diff);
    }

    std::vector<DenseOperator> probes;
    const HilbertSpec s1 = HilbertSpec::single(d);
    for (int i = 0; i < d; ++i) {
        Matrix m = Matrix::Zero(d, d);
        m(i, i) = 1.0;
        probes.emplace_back(s1, std::move(m));
    }
    for (int i = 0; i < n_probes; ++i) probes.push_back(random_pure_state(d, rng));

    double sup = 0.0;
    for (const auto& rho : probes) {
        const DenseOperator diff = apply(marginal, rho) - rho;
        double nrm = 0.0;
        switch (kind) {
            case MeritKind::One: nrm = 0.5 * trace_norm_hermitian(diff); break;
            case MeritKind::Two: nrm = frobenius_norm(diff.mat); break;
            case MeritKind::Inf: nrm = operator_norm_hermitian(diff); break;
            default: break;
        }
        sup = std::max(sup, nrm);
    }
    return 1.0 - sup;
}

DenseOperator h_z(const DirectionWeights& w, int d) {
    if (d < 2) throw std::invalid_argument("h_z: d must be >= 2");
    const DenseOperator id1 = DenseOperator::identity(HilbertSpec::single(d));
    const DenseOperator om01 = tensor(max_entangled(d), id1);
    const DenseOperator v12 = perm_operator(Permutation3::transposition(1, 2), d);
    const Matrix om02 = v12.mat * om01.mat * v12.mat.adjoint();
    return {HilbertSpec({d, d, d}), w.z1 * om01.mat + w.z2 * om02};
}

double lambda_max_closed(const DirectionWeights& w, int d) {
    const double dd = d;
    const double s = w.z1 + w.z2;
    const double scale = std::max(std::abs(w.z1), std::abs(w.z2));
    if (s == 0.0 || std::abs(s) < 1e-14 * scale) {
        // z = (±v, ∓v) ray (the case formulas reduce to it continuously)
        return std::abs(w.z1) * std::sqrt((dd * dd - 1.0) / (dd * dd));
    }
    const double b = std::abs(s);
    const double root_arg = [&] {
        const double v = w.z1 / s;
        return dd * dd + 4.0 * (dd * dd - 1.0) * (v - 1.0) * v;
    }();
    const double v = w.z1 / s;
    if (s > 0.0) return b * (dd + std::sqrt(root_arg)) / (2.0 * dd);
    if (v >= 0.0 && v <= 1.0) return 0.0;
    return b * (-dd + std::sqrt(root_arg)) / (2.0 * dd);
}

double boundary_g(double x1, double x2, int d) {
    if (x1 < 0.0 || x2 < 0.0) throw std::invalid_argument("boundary_g: inputs must be nonnegative");
    const double dd = d;
    const double sp = std::sqrt(x1) + std::sqrt(x2);
    const double sm = std::sqrt(x1) - std::sqrt(x2);
    return sp * sp / (dd + 1.0) + sm * sm / (dd - 1.0) - 2.0 / dd;
}

double f_map(MeritKind kind, double x, int d) {
    const double dd = d;
    switch (kind) {
        case MeritKind::F:
        case MeritKind::Diamond:
            return x;
        case MeritKind::One:
        case MeritKind::Inf:
            return 1.0 + (1.0 + dd) / dd * (x - 1.0);
        case MeritKind::Two:
            return 1.0 + (dd * dd - 1.0) / (dd * dd) * std::sqrt(dd / (dd - 1.0)) * (x - 1.0);
    }
    return x;
}

double corner_partner_value(MeritKind kind, int d) {
    const double dd = d;
    switch (kind) {
        case MeritKind::F:
        case MeritKind::Diamond:
            return 1.0 / (dd * dd);
        case MeritKind::One:
        case MeritKind::Inf:
            return 1.0 / dd;
        case MeritKind::Two:
            return 1.0 - std::sqrt((dd - 1.0) / dd);
    }
    return 0.0;
}

namespace {

double direction_violation(double x1, double x2, double theta, int d) {
    const DirectionWeights z{std::cos(theta), std::sin(theta)};
    return z.z1 * x1 + z.z2 * x2 - lambda_max_closed(z, d);
}

using Pt = std::pair<double, double>;

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

// monotone chain; returns CCW hull
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Pt> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool point_in_convex_hull(const std::vector<Pt>& hull, const Pt& p, double tol) {
    if (hull.empty()) return false;
    if (hull.size() == 1)
        return std::abs(p.first - hull[0].first) <= tol &&
               std::abs(p.second - hull[0].second) <= tol;
    if (hull.size() == 2) {
        // segment membership
        const double c = cross(hull[0], hull[1], p);
        if (std::abs(c) > tol) return false;
        const double t =
            (p.first - hull[0].first) * (hull[1].first - hull[0].first) +
            (p.second - hull[0].second) * (hull[1].second - hull[0].second);
        const double len2 = std::pow(hull[1].first - hull[0].first, 2) +
                            std::pow(hull[1].second - hull[0].second, 2);
        return t >= -tol && t <= len2 + tol;
    }
    for (size_t i = 0; i < hull.size(); ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < -tol) return false;
    }
    return true;
}

std::vector<Pt> hull_of_set(MeritKind kind, int d, int curve_samples) {
    std::vector<Pt> pts;
    pts.emplace_back(0.0, 0.0);
    const double partner = corner_partner_value(kind, d);
    pts.emplace_back(1.0, partner);
    pts.emplace_back(partner, 1.0);
    const double a1max = static_cast<double>(d) / std::sqrt(static_cast<double>(d) * d - 1.0);
    for (int i = 0; i <= curve_samples; ++i) {
        const double al1 = a1max * i / curve_samples;
        const double al2 = alpha2_extended(al1, d);
        const double x1 = merit_of_depolarizing(kind, al1 * al1, d);
        const double x2 = merit_of_depolarizing(kind, al2 * al2, d);
        pts.emplace_back(x1, x2);
        pts.emplace_back(x2, x1);  // swap-symmetric wing
    }
    return convex_hull(std::move(pts));
}

}  // namespace

double support_violation(double x1, double x2, int d) {
    constexpr int kDirs = 720;
    double best = -1e300;
    double best_theta = 0.0;
    for (int k = 0; k < kDirs; ++k) {
        const double theta = 2.0 * M_PI * k / kDirs;
        const double v = direction_violation(x1, x2, theta, d);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }
    // axis and diagonal corner directions
    for (const DirectionWeights z : {DirectionWeights{1, 0}, DirectionWeights{0, 1},
                                     DirectionWeights{-1, 0}, DirectionWeights{0, -1},
                                     DirectionWeights{1, -1}, DirectionWeights{-1, 1}}) {
        best = std::max(best, z.z1 * x1 + z.z2 * x2 - lambda_max_closed(z, d));
    }
    // golden-section refinement around the best grid direction
    double lo = best_theta - 2.0 * M_PI / kDirs;
    double hi = best_theta + 2.0 * M_PI / kDirs;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = hi - phi * (hi - lo), c2 = lo + phi * (hi - lo);
    double f1 = direction_violation(x1, x2, c1, d), f2 = direction_violation(x1, x2, c2, d);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + phi * (hi - lo);
            f2 = direction_violation(x1, x2, c2, d);
        } else {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - phi * (hi - lo);
            f1 = direction_violation(x1, x2, c1, d);
        }
    }
    return std::max(best, std::max(f1, f2));
}

bool membership(const TradeoffPoint& p, int d) {
    constexpr double kTol = 1e-9;
    if (p.x1 < -kTol || p.x2 < -kTol) return false;
    if (p.kind == MeritKind::F)
        return support_violation(std::max(p.x1, 0.0), std::max(p.x2, 0.0), d) <= kTol;
    const auto hull = hull_of_set(p.kind, d, 512);
    return point_in_convex_hull(hull, {p.x1, p.x2}, kTol);
}

namespace {

// merit value at alpha^2 = d^2/(d^2-1), the zero-fidelity end of the sweep
double merit_extreme_low(MeritKind kind, int d) {
    const double dd = d;
    switch (kind) {
        case MeritKind::F:
        case MeritKind::Diamond: return 0.0;
        case MeritKind::One:
        case MeritKind::Inf: return 1.0 / (dd + 1.0);
        case MeritKind::Two:
            return 1.0 - std::sqrt((dd - 1.0) / dd) * dd * dd / (dd * dd - 1.0);
    }
    return 0.0;
}

// merit value of the partner marginal there, alpha^2 = 1/(d^2-1)
double merit_extreme_outer(MeritKind kind, int d) {
    const double dd = d;
    switch (kind) {
        case MeritKind::F:
        case MeritKind::Diamond: return (dd * dd - 1.0) / (dd * dd);
        case MeritKind::One:
        case MeritKind::Inf: return 1.0 - 1.0 / (dd * (dd + 1.0));
        case MeritKind::Two: return 1.0 - std::sqrt((dd - 1.0) / dd) / (dd * dd - 1.0);
    }
    return 0.0;
}

}  // namespace

std::vector<BoundaryPoint> sample_boundary(MeritKind kind, int d, int n) {
    if (n < 2) throw std::invalid_argument("sample_boundary: n must be >= 2");
    if (d < 2) throw std::invalid_argument("sample_boundary: d must be >= 2");
    const double partner = corner_partner_value(kind, d);
    const double a1max = static_cast<double>(d) / std::sqrt(static_cast<double>(d) * d - 1.0);

    // walk parameter w in [0, W]: w in [0, a1max-1] is the swapped wing
    // (alpha1 = a1max - w), w in [a1max-1, W] the direct branch
    // (alpha1 = w - (a1max-1)); corners sit at alpha1 = 1 (wing end, swapped)
    // and alpha1 = 1 (direct branch).
    const double wing = a1max - 1.0;
    const double total = wing + a1max;
    const double w_corner1 = wing;          // (1, partner)
    const double w_corner2 = wing + 1.0;    // (partner, 1)

    std::vector<std::pair<double, BoundaryPoint>> walk;
    walk.push_back({w_corner1, {1.0, partner, true}});
    walk.push_back({w_corner2, {partner, 1.0, true}});
    const int n_curve = n - 2;
    for (int i = 0; i < n_curve; ++i) {
        const double w = (n_curve == 1) ? total / 2.0 : total * i / (n_curve - 1);
        double x1, x2;
        if (i == 0 && n_curve > 1) {
            // walk start: the outer extreme point, closed form
            x1 = merit_extreme_outer(kind, d);
            x2 = merit_extreme_low(kind, d);
        } else if (i == n_curve - 1 && n_curve > 1) {
            x1 = merit_extreme_low(kind, d);
            x2 = merit_extreme_outer(kind, d);
        } else if (w <= wing) {
            const double al1 = a1max - w;
            const double al2 = alpha2_extended(al1, d);
            x1 = merit_of_depolarizing(kind, al2 * al2, d);
            x2 = merit_of_depolarizing(kind, al1 * al1, d);
        } else {
            const double al1 = w - wing;
            const double al2 = alpha2_extended(al1, d);
            x1 = merit_of_depolarizing(kind, al1 * al1, d);
            x2 = merit_of_depolarizing(kind, al2 * al2, d);
        }
        walk.push_back({w, {x1, x2, false}});
    }
    std::stable_sort(walk.begin(), walk.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<BoundaryPoint> out;
    out.reserve(walk.size());
    for (auto& [w, p] : walk) out.push_back(p);
    return out;
}

}  // namespace qclone
