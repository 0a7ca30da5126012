#pragma once

#include "qclone/symmetry.hpp"
#include "qclone/tradeoff.hpp"

namespace qclone {

struct OptimizerConfig {
    int grid_points = 64;
    int barrier_iterations = 12;    // outer barrier updates
    double barrier_t_growth = 10.0;
    double tolerance = 1e-8;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

struct OptimizerResult {
    double value = 0.0;
    PermCoeffs argmax_a;
    TradeoffPoint argmax_point;
    FeasibilityReport slacks;
    int iterations = 0;
    bool converged = false;
};

/// Maximize z1 d^k(T1, id) + z2 d^k(T2, id) over the CP-TP constraint set
/// (sector, block-trace, determinant and normalization constraints with
/// a5 = a6 real), by a log-barrier Newton method on
/// (a2, a3, a4, a5) with a1 eliminated through the normalization.
OptimizerResult optimize_direction(const DirectionWeights& w, MeritKind kind, int d,
                                   const OptimizerConfig& cfg);

/// Restrict the search to the optimal-cloner family: grid over alpha1 on
/// the constraint arc, refined by golden section to 1e-10.  Requires
/// z1, z2 >= 0, not both zero.
OptimizerResult alpha_line_search(const DirectionWeights& w, MeritKind kind, int d, int n);

struct BlockEntry {
    std::string name;
    double slack = 0.0;
};

/// Slacks of every direct summand of the SDP block:
/// s0, s+, s-, the 2x2 PSD block (trace and determinant), the two one-sided
/// normalization constraints and the alpha_i^2 range constraints.
struct BlockReport {
    std::vector<BlockEntry> entries;
    double min_slack() const;
    bool feasible(double tol = 1e-9) const { return min_slack() >= -tol; }
};

BlockReport verify_sdp_block(const PermCoeffs& a, std::pair<double, double> alphas_sq, int d);

}  // namespace qclone
