#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qclone {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// Tensor-factor structure of a Hilbert space: one local dimension per factor.
struct HilbertSpec {
    std::vector<int> local_dims;

    HilbertSpec() = default;
    explicit HilbertSpec(std::vector<int> dims);
    static HilbertSpec single(int d) { return HilbertSpec({d}); }

    int total_dim() const;
    int factors() const { return static_cast<int>(local_dims.size()); }
    bool operator==(const HilbertSpec&) const = default;
};

/// Dense complex square matrix carrying its tensor-factor structure.
/// Universal carrier for states, Choi matrices and observables.
struct DenseOperator {
    HilbertSpec spec;
    Matrix mat;

    DenseOperator() = default;
    DenseOperator(HilbertSpec s, Matrix m);

    int dim() const { return static_cast<int>(mat.rows()); }
    Complex trace() const { return mat.trace(); }
    DenseOperator adjoint() const { return {spec, mat.adjoint()}; }

    DenseOperator operator+(const DenseOperator& o) const;
    DenseOperator operator-(const DenseOperator& o) const;
    DenseOperator operator*(const DenseOperator& o) const;  // matrix product, same spec

    static DenseOperator identity(HilbertSpec s);
    static DenseOperator zero(HilbertSpec s);
};

DenseOperator operator*(Complex c, const DenseOperator& op);
DenseOperator operator*(double c, const DenseOperator& op);

double frobenius_norm(const Matrix& m);
double frobenius_distance(const DenseOperator& a, const DenseOperator& b);
double max_abs(const Matrix& m);

bool is_hermitian(const DenseOperator& op, double tol = 1e-12);
/// hermitian, trace 1 within tol_trace, eigenvalues >= -tol_psd
bool is_density(const DenseOperator& op, double tol_herm = 1e-12, double tol_trace = 1e-12,
                double tol_psd = 1e-10);

/// Kronecker product; factor lists concatenate.
DenseOperator tensor(const DenseOperator& a, const DenseOperator& b);

/// Trace out every factor not in `keep`; kept factors stay in original order.
DenseOperator partial_trace(const DenseOperator& op, const std::vector<int>& keep);

/// Transpose one tensor factor. Involution.
DenseOperator partial_transpose(const DenseOperator& op, int factor);

/// Permutation of {0,1,2}, stored as the image map i -> image[i].
struct Permutation3 {
    std::array<int, 3> image{0, 1, 2};

    Permutation3() = default;
    explicit Permutation3(std::array<int, 3> img);

    int operator()(int i) const { return image[static_cast<size_t>(i)]; }
    Permutation3 inverse() const;
    /// (this ∘ other)(i) = this(other(i))
    Permutation3 compose(const Permutation3& other) const;
    int cycles() const;
    bool operator==(const Permutation3&) const = default;

    static Permutation3 identity() { return Permutation3({0, 1, 2}); }
    static Permutation3 transposition(int i, int j);
    /// cyclic 0->1->2->0
    static Permutation3 cycle012() { return Permutation3({1, 2, 0}); }
    /// anticyclic 0->2->1->0
    static Permutation3 cycle021() { return Permutation3({2, 0, 1}); }
    /// All six elements in the fixed order: id, (01), (02), (12), (012), (021).
    static const std::array<Permutation3, 6>& all();
};

/// V_pi (v_0 ⊗ v_1 ⊗ v_2) = v_{pi^{-1}(0)} ⊗ v_{pi^{-1}(1)} ⊗ v_{pi^{-1}(2)} on (C^d)^⊗3.
DenseOperator perm_operator(const Permutation3& pi, int d);

/// Flip (swap) operator F = Σ |ji><ij| on two d-dimensional factors.
DenseOperator flip_operator(int d);

/// |Ω> = (1/√d) Σ |ii> on two factors.
Vector max_entangled_ket(int d);
/// Projector |Ω><Ω| = (1/d) Σ |ii><jj|.
DenseOperator max_entangled(int d);

struct EighResult {
    Eigen::VectorXd eigenvalues;  // sorted descending
    Matrix eigenvectors;          // columns, matching order
};

/// Hermitian eigendecomposition; input must be hermitian within 1e-10.
EighResult eigh(const DenseOperator& op);

double min_eigenvalue(const DenseOperator& op);

/// Sum of absolute eigenvalues of a hermitian operator.
double trace_norm_hermitian(const DenseOperator& op);
/// Largest absolute eigenvalue of a hermitian operator.
double operator_norm_hermitian(const DenseOperator& op);

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// R-diagonal phase correction.
DenseOperator haar_unitary(int d, Rng& rng);

/// Haar-random pure state |ψ><ψ|.
DenseOperator random_pure_state(int d, Rng& rng);

/// Random full-rank density matrix (normalized Ginibre GG†).
DenseOperator random_density(int d, Rng& rng);

}  // namespace qclone
