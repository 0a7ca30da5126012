#include "qclone/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace qclone {

HilbertSpec::HilbertSpec(std::vector<int> dims) : local_dims(std::move(dims)) {
    if (local_dims.empty())
        throw std::invalid_argument("HilbertSpec: needs at least one factor");
    for (int d : local_dims)
        if (d < 2)
            throw std::invalid_argument("HilbertSpec: local dimension must be >= 2, got " +
                                        std::to_string(d));
}

int HilbertSpec::total_dim() const {
    int n = 1;
    for (int d : local_dims) n *= d;
    return n;
}

DenseOperator::DenseOperator(HilbertSpec s, Matrix m) : spec(std::move(s)), mat(std::move(m)) {
    const int n = spec.total_dim();
    if (mat.rows() != n || mat.cols() != n)
        throw std::invalid_argument("DenseOperator: matrix is " + std::to_string(mat.rows()) +
                                    "x" + std::to_string(mat.cols()) + " but spec dimension is " +
                                    std::to_string(n));
}

DenseOperator DenseOperator::operator+(const DenseOperator& o) const {
    if (spec != o.spec) throw std::invalid_argument("DenseOperator+: spec mismatch");
    return {spec, mat + o.mat};
}

DenseOperator DenseOperator::operator-(const DenseOperator& o) const {
    if (spec != o.spec) throw std::invalid_argument("DenseOperator-: spec mismatch");
    return {spec, mat - o.mat};
}

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
    if (spec != o.spec) throw std::invalid_argument("DenseOperator*: spec mismatch");
    return {spec, mat * o.mat};
}

DenseOperator DenseOperator::identity(HilbertSpec s) {
    const int n = s.total_dim();
    return {std::move(s), Matrix::Identity(n, n)};
}

DenseOperator DenseOperator::zero(HilbertSpec s) {
    const int n = s.total_dim();
    return {std::move(s), Matrix::Zero(n, n)};
}

DenseOperator operator*(Complex c, const DenseOperator& op) { return {op.spec, c * op.mat}; }
DenseOperator operator*(double c, const DenseOperator& op) { return {op.spec, c * op.mat}; }

double frobenius_norm(const Matrix& m) { return m.norm(); }

double frobenius_distance(const DenseOperator& a, const DenseOperator& b) {
    return (a.mat - b.mat).norm();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const DenseOperator& op, double tol) {
    return max_abs(op.mat - op.mat.adjoint()) <= tol;
}

bool is_density(const DenseOperator& op, double tol_herm, double tol_trace, double tol_psd) {
    if (!is_hermitian(op, tol_herm)) return false;
    if (std::abs(op.trace() - Complex(1.0, 0.0)) > tol_trace) return false;
    return min_eigenvalue(op) >= -tol_psd;
}

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
    std::vector<int> dims = a.spec.local_dims;
    dims.insert(dims.end(), b.spec.local_dims.begin(), b.spec.local_dims.end());
    const int na = a.dim(), nb = b.dim();
    Matrix out(na * nb, na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            out.block(i * nb, j * nb, nb, nb) = a.mat(i, j) * b.mat;
    return {HilbertSpec(std::move(dims)), std::move(out)};
}

namespace {

// strides for the row-major multi-index (factor 0 most significant)
std::vector<int> strides_of(const std::vector<int>& dims) {
    std::vector<int> s(dims.size());
    int acc = 1;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        s[static_cast<size_t>(i)] = acc;
        acc *= dims[static_cast<size_t>(i)];
    }
    return s;
}

}  // namespace

DenseOperator partial_trace(const DenseOperator& op, const std::vector<int>& keep_in) {
    std::vector<int> keep = keep_in;
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    const int nf = op.spec.factors();
    for (int k : keep)
        if (k < 0 || k >= nf)
            throw std::invalid_argument("partial_trace: factor index " + std::to_string(k) +
                                        " out of range [0," + std::to_string(nf) + ")");

    std::vector<int> traced;
    for (int f = 0; f < nf; ++f)
        if (!std::binary_search(keep.begin(), keep.end(), f)) traced.push_back(f);

    const auto& dims = op.spec.local_dims;
    const auto str = strides_of(dims);

    std::vector<int> kept_dims;
    for (int k : keep) kept_dims.push_back(dims[static_cast<size_t>(k)]);
    HilbertSpec out_spec(kept_dims);
    const int nk = out_spec.total_dim();
    const auto out_str = strides_of(kept_dims);

    int nt = 1;
    for (int t : traced) nt *= dims[static_cast<size_t>(t)];

    Matrix out = Matrix::Zero(nk, nk);
    // enumerate kept row/col multi-indices and sum over the traced diagonal
    for (int r = 0; r < nk; ++r) {
        // base offset of kept row index in the full space
        int row_base = 0, tmp = r;
        for (size_t q = 0; q < keep.size(); ++q) {
            const int iq = tmp / out_str[q];
            tmp %= out_str[q];
            row_base += iq * str[static_cast<size_t>(keep[q])];
        }
        for (int c = 0; c < nk; ++c) {
            int col_base = 0;
            tmp = c;
            for (size_t q = 0; q < keep.size(); ++q) {
                const int iq = tmp / out_str[q];
                tmp %= out_str[q];
                col_base += iq * str[static_cast<size_t>(keep[q])];
            }
            Complex sum = 0.0;
            for (int t = 0; t < nt; ++t) {
                int off = 0, tt = t;
                for (size_t q = traced.size(); q-- > 0;) {
                    const int dq = dims[static_cast<size_t>(traced[q])];
                    off += (tt % dq) * str[static_cast<size_t>(traced[q])];
                    tt /= dq;
                }
                sum += op.mat(row_base + off, col_base + off);
            }
            out(r, c) = sum;
        }
    }
    return {std::move(out_spec), std::move(out)};
}

DenseOperator partial_transpose(const DenseOperator& op, int factor) {
    const int nf = op.spec.factors();
    if (factor < 0 || factor >= nf)
        throw std::invalid_argument("partial_transpose: factor index " + std::to_string(factor) +
                                    " out of range [0," + std::to_string(nf) + ")");
    const auto& dims = op.spec.local_dims;
    const auto str = strides_of(dims);
    const int df = dims[static_cast<size_t>(factor)];
    const int sf = str[static_cast<size_t>(factor)];
    const int n = op.dim();

    Matrix out(n, n);
    for (int r = 0; r < n; ++r) {
        const int rf = (r / sf) % df;
        const int r0 = r - rf * sf;
        for (int c = 0; c < n; ++c) {
            const int cf = (c / sf) % df;
            const int c0 = c - cf * sf;
            out(r0 + cf * sf, c0 + rf * sf) = op.mat(r, c);
        }
    }
    return {op.spec, std::move(out)};
}

Permutation3::Permutation3(std::array<int, 3> img) : image(img) {
    std::array<bool, 3> seen{false, false, false};
    for (int v : image) {
        if (v < 0 || v > 2 || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("Permutation3: mapping is not a bijection on {0,1,2}");
        seen[static_cast<size_t>(v)] = true;
    }
}

Permutation3 Permutation3::inverse() const {
    std::array<int, 3> inv{};
    for (int i = 0; i < 3; ++i) inv[static_cast<size_t>(image[static_cast<size_t>(i)])] = i;
    return Permutation3(inv);
}

Permutation3 Permutation3::compose(const Permutation3& other) const {
    std::array<int, 3> img{};
    for (int i = 0; i < 3; ++i) img[static_cast<size_t>(i)] = (*this)(other(i));
    return Permutation3(img);
}

int Permutation3::cycles() const {
    std::array<bool, 3> seen{false, false, false};
    int c = 0;
    for (int i = 0; i < 3; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        ++c;
        int j = i;
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = true;
            j = (*this)(j);
        }
    }
    return c;
}

Permutation3 Permutation3::transposition(int i, int j) {
    if (i < 0 || i > 2 || j < 0 || j > 2 || i == j)
        throw std::invalid_argument("Permutation3::transposition: need distinct indices in {0,1,2}");
    std::array<int, 3> img{0, 1, 2};
    std::swap(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)]);
    return Permutation3(img);
}

const std::array<Permutation3, 6>& Permutation3::all() {
    static const std::array<Permutation3, 6> elems = {
        Permutation3::identity(),        Permutation3::transposition(0, 1),
        Permutation3::transposition(0, 2), Permutation3::transposition(1, 2),
        Permutation3::cycle012(),        Permutation3::cycle021(),
    };
    return elems;
}

DenseOperator perm_operator(const Permutation3& pi, int d) {
    if (d < 2) throw std::invalid_argument("perm_operator: d must be >= 2");
    const Permutation3 inv = pi.inverse();
    const int n = d * d * d;
    Matrix out = Matrix::Zero(n, n);
    for (int i0 = 0; i0 < d; ++i0)
        for (int i1 = 0; i1 < d; ++i1)
            for (int i2 = 0; i2 < d; ++i2) {
                const std::array<int, 3> in{i0, i1, i2};
                const int col = (i0 * d + i1) * d + i2;
                const int row = (in[static_cast<size_t>(inv(0))] * d +
                                 in[static_cast<size_t>(inv(1))]) *
                                    d +
                                in[static_cast<size_t>(inv(2))];
                out(row, col) = 1.0;
            }
    return {HilbertSpec({d, d, d}), std::move(out)};
}

DenseOperator flip_operator(int d) {
    if (d < 2) throw std::invalid_argument("flip_operator: d must be >= 2");
    Matrix out = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(j * d + i, i * d + j) = 1.0;
    return {HilbertSpec({d, d}), std::move(out)};
}

Vector max_entangled_ket(int d) {
    if (d < 2) throw std::invalid_argument("max_entangled_ket: d must be >= 2");
    Vector v = Vector::Zero(d * d);
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) v(i * d + i) = a;
    return v;
}

DenseOperator max_entangled(int d) {
    if (d < 2) throw std::invalid_argument("max_entangled: d must be >= 2");
    // (1/d) sum |ii><jj|, assembled exactly
    Matrix m = Matrix::Zero(d * d, d * d);
    const double inv = 1.0 / static_cast<double>(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = inv;
    return {HilbertSpec({d, d}), std::move(m)};
}

EighResult eigh(const DenseOperator& op) {
    if (!is_hermitian(op, 1e-10))
        throw std::invalid_argument("eigh: operator is not hermitian within 1e-10");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.mat);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: solver failed");
    const int n = op.dim();
    EighResult r;
    r.eigenvalues.resize(n);
    r.eigenvectors.resize(n, n);
    // Eigen returns ascending order; flip to descending
    for (int i = 0; i < n; ++i) {
        r.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        r.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return r;
}

double min_eigenvalue(const DenseOperator& op) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((op.mat + op.mat.adjoint()) / 2.0,
                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double trace_norm_hermitian(const DenseOperator& op) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((op.mat + op.mat.adjoint()) / 2.0,
                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double operator_norm_hermitian(const DenseOperator& op) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((op.mat + op.mat.adjoint()) / 2.0,
                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

DenseOperator haar_unitary(int d, Rng& rng) {
    if (d < 2) throw std::invalid_argument("haar_unitary: d must be >= 2");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // normalize the R diagonal to positive reals so Q is Haar
    for (int i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double a = std::abs(rii);
        q.col(i) *= (a > 0.0) ? rii / a : Complex(1.0, 0.0);
    }
    return {HilbertSpec::single(d), std::move(q)};
}

DenseOperator random_pure_state(int d, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v /= v.norm();
    return {HilbertSpec::single(d), v * v.adjoint()};
}

DenseOperator random_density(int d, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return {HilbertSpec::single(d), std::move(rho)};
}

}  // namespace qclone
