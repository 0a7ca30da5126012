#pragma once

#include <functional>

#include "qclone/tensor.hpp"

namespace qclone {

/// Quantum channel represented by its Choi–Jamiolkowski matrix
///   tau = (id ⊗ T)(|Ω><Ω|)
/// in the trace-1 convention, factor order (reference, outputs...).
struct ChoiChannel {
    int input_dim = 0;
    std::vector<int> output_dims;
    DenseOperator choi;

    ChoiChannel() = default;
    ChoiChannel(int in_dim, std::vector<int> out_dims, DenseOperator tau);

    int output_total() const;
    int n_outputs() const { return static_cast<int>(output_dims.size()); }

    /// -min eigenvalue when negative, else 0 (CP holds iff <= 1e-9).
    double cp_residual() const;
    /// max-norm distance of Tr_out[tau] from 1/d (TP holds iff <= 1e-9).
    double tp_residual() const;
};

using StateTransformer = std::function<DenseOperator(const DenseOperator&)>;

/// Build the Choi matrix of a channel given as a state transformer: the
/// transformer receives each matrix unit |i><j| on the input space and must
/// return an operator on the output space.
ChoiChannel choi_of(const StateTransformer& apply, int input_dim, std::vector<int> output_dims);

/// Apply a channel through its Choi matrix: T(rho) = d Tr_0[(rho^T ⊗ 1) tau].
DenseOperator apply(const ChoiChannel& ch, const DenseOperator& rho);

/// Choi matrix of the reduced map T_i = Tr_{other}[T(.)], i in {1,2}.
ChoiChannel marginal(const ChoiChannel& ch, int i);

/// Monte Carlo estimate of the symmetrized channel: average of
/// (Ubar ⊗ U ⊗ U) tau (Ubar ⊗ U ⊗ U)† over Haar samples.
ChoiChannel twirl_mc(const ChoiChannel& ch, int n_samples, Rng& rng);

/// max over sampled (U, rho) of ||T(U rho U†) - U T(rho) U†||_F for a square
/// channel; ~0 iff the channel is covariant.
double covariance_residual(const ChoiChannel& ch, int n_samples, Rng& rng);

/// Random CP-TP channel: Ginibre Choi, then TP-normalized.
ChoiChannel random_choi_channel(int input_dim, std::vector<int> output_dims, Rng& rng);

/// max over probe states (basis states, a uniform superposition, and two
/// random pure states) of ||T(rho) - rho ⊗ rho||_F.  Positive for every
/// CP-TP channel: perfect cloning is impossible.
double no_cloning_witness(const ChoiChannel& ch, Rng& rng);

}  // namespace qclone
