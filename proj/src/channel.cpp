#include "qclone/channel.hpp"

namespace qclone {

ChoiChannel::ChoiChannel(int in_dim, std::vector<int> out_dims, DenseOperator tau)
    : input_dim(in_dim), output_dims(std::move(out_dims)), choi(std::move(tau)) {
    std::vector<int> want{input_dim};
    want.insert(want.end(), output_dims.begin(), output_dims.end());
    if (choi.spec.local_dims != want)
        throw std::invalid_argument("ChoiChannel: Choi factor structure does not match dims");
}

int ChoiChannel::output_total() const {
    int n = 1;
    for (int d : output_dims) n *= d;
    return n;
}

double ChoiChannel::cp_residual() const {
    const double m = min_eigenvalue(choi);
    return m < 0.0 ? -m : 0.0;
}

double ChoiChannel::tp_residual() const {
    const DenseOperator red = partial_trace(choi, {0});
    const Matrix want = Matrix::Identity(input_dim, input_dim) / static_cast<double>(input_dim);
    return max_abs(red.mat - want);
}

ChoiChannel choi_of(const StateTransformer& apply_fn, int input_dim,
                    std::vector<int> output_dims) {
    const int d = input_dim;
    std::vector<int> dims{d};
    dims.insert(dims.end(), output_dims.begin(), output_dims.end());
    HilbertSpec spec(dims);
    int dout = 1;
    for (int o : output_dims) dout *= o;

    Matrix tau = Matrix::Zero(d * dout, d * dout);
    const HilbertSpec in_spec = HilbertSpec::single(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Matrix unit = Matrix::Zero(d, d);
            unit(i, j) = 1.0;
            const DenseOperator img = apply_fn(DenseOperator(in_spec, std::move(unit)));
            if (img.dim() != dout)
                throw std::invalid_argument("choi_of: transformer output has dimension " +
                                            std::to_string(img.dim()) + ", expected " +
                                            std::to_string(dout));
            tau.block(i * dout, j * dout, dout, dout) = img.mat / static_cast<double>(d);
        }
    return ChoiChannel(d, std::move(output_dims), DenseOperator(std::move(spec), std::move(tau)));
}

DenseOperator apply(const ChoiChannel& ch, const DenseOperator& rho) {
    const int d = ch.input_dim;
    if (rho.dim() != d) throw std::invalid_argument("apply: state dimension mismatch");
    const int dout = ch.output_total();
    // T(rho) = d * Tr_0[(rho^T ⊗ 1) tau]; block (i,j) of tau contributes rho(i,j)
    Matrix out = Matrix::Zero(dout, dout);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out += rho.mat(i, j) * ch.choi.mat.block(i * dout, j * dout, dout, dout);
    out *= static_cast<double>(d);
    return {HilbertSpec(ch.output_dims), std::move(out)};
}

ChoiChannel marginal(const ChoiChannel& ch, int i) {
    if (ch.n_outputs() != 2)
        throw std::invalid_argument("marginal: channel must have two output factors");
    if (i != 1 && i != 2) throw std::invalid_argument("marginal: output index must be 1 or 2");
    DenseOperator red = partial_trace(ch.choi, {0, i});
    return ChoiChannel(ch.input_dim, {ch.output_dims[static_cast<size_t>(i - 1)]}, std::move(red));
}

ChoiChannel twirl_mc(const ChoiChannel& ch, int n_samples, Rng& rng) {
    if (ch.n_outputs() != 2)
        throw std::invalid_argument("twirl_mc: channel must have two output factors");
    if (n_samples < 1) throw std::invalid_argument("twirl_mc: n_samples must be >= 1");
    const int d = ch.input_dim;
    Matrix acc = Matrix::Zero(ch.choi.dim(), ch.choi.dim());
    for (int s = 0; s < n_samples; ++s) {
        const Matrix u = haar_unitary(d, rng).mat;
        const DenseOperator ub{HilbertSpec::single(d), u.conjugate()};
        const DenseOperator uu{HilbertSpec::single(d), u};
        const DenseOperator w = tensor(tensor(ub, uu), uu);
        acc += w.mat * ch.choi.mat * w.mat.adjoint();
    }
    acc /= static_cast<double>(n_samples);
    return ChoiChannel(d, ch.output_dims, DenseOperator(ch.choi.spec, std::move(acc)));
}

double covariance_residual(const ChoiChannel& ch, int n_samples, Rng& rng) {
    if (ch.n_outputs() != 1 || ch.output_dims[0] != ch.input_dim)
        throw std::invalid_argument("covariance_residual: channel must be square");
    const int d = ch.input_dim;
    double worst = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const DenseOperator u = haar_unitary(d, rng);
        const DenseOperator rho = random_pure_state(d, rng);
        const DenseOperator conj{rho.spec, u.mat * rho.mat * u.mat.adjoint()};
        const DenseOperator lhs = apply(ch, conj);
        const DenseOperator t = apply(ch, rho);
        const Matrix rhs = u.mat * t.mat * u.mat.adjoint();
        worst = std::max(worst, frobenius_norm(lhs.mat - rhs));
    }
    return worst;
}

ChoiChannel random_choi_channel(int input_dim, std::vector<int> output_dims, Rng& rng) {
    const int d = input_dim;
    int dout = 1;
    for (int o : output_dims) dout *= o;
    const int n = d * dout;
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix j = g * g.adjoint();

    std::vector<int> dims{d};
    dims.insert(dims.end(), output_dims.begin(), output_dims.end());
    DenseOperator raw{HilbertSpec(dims), std::move(j)};
    // TP normalization: tau -> (r^{-1/2} ⊗ 1) tau (r^{-1/2} ⊗ 1) / d with r = Tr_out[tau]
    const DenseOperator r0 = partial_trace(raw, {0});
    Eigen::SelfAdjointEigenSolver<Matrix> es(r0.mat);
    Matrix rinv = es.eigenvectors() *
                  es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                  es.eigenvectors().adjoint();
    rinv /= std::sqrt(static_cast<double>(d));
    const DenseOperator k = tensor(DenseOperator{HilbertSpec::single(d), std::move(rinv)},
                                   DenseOperator::identity(HilbertSpec(output_dims)));
    Matrix tau = k.mat * raw.mat * k.mat.adjoint();
    return ChoiChannel(d, std::move(output_dims), DenseOperator(raw.spec, std::move(tau)));
}

double no_cloning_witness(const ChoiChannel& ch, Rng& rng) {
    if (ch.n_outputs() != 2 || ch.output_dims[0] != ch.input_dim ||
        ch.output_dims[1] != ch.input_dim)
        throw std::invalid_argument("no_cloning_witness: need a d -> d ⊗ d channel");
    const int d = ch.input_dim;
    std::vector<DenseOperator> probes;
    const HilbertSpec s1 = HilbertSpec::single(d);
    for (int i = 0; i < std::min(d, 3); ++i) {
        Matrix m = Matrix::Zero(d, d);
        m(i, i) = 1.0;
        probes.emplace_back(s1, std::move(m));
    }
    {
        Vector v = Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
        probes.emplace_back(s1, v * v.adjoint());
    }
    probes.push_back(random_pure_state(d, rng));
    probes.push_back(random_pure_state(d, rng));

    double worst = 0.0;
    for (const auto& rho : probes) {
        const DenseOperator out = apply(ch, rho);
        const DenseOperator target = tensor(rho, rho);
        worst = std::max(worst, frobenius_distance(out, target));
    }
    return worst;
}

}  // namespace qclone
