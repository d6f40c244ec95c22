#include "qlab/core/density_matrix.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qlab {

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
    require(n_qubits >= 1 && 2 * n_qubits <= kMaxQubits, "DensityMatrix: qubit count out of range");
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    rho_ = Matrix::Zero(d, d);
    rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(const StateVector& psi) : DensityMatrix(psi.n_qubits()) {
    rho_ = psi.amplitudes() * psi.amplitudes().adjoint();
}

DensityMatrix DensityMatrix::from_matrix(Matrix rho, double tol) {
    require(rho.rows() == rho.cols(), "DensityMatrix: matrix must be square");
    const int n = log2_dim(rho.rows());
    require(n >= 1, "DensityMatrix: dimension must be 2^n");
    DensityMatrix out(n);
    out.rho_ = std::move(rho);
    require(out.is_valid(tol), "DensityMatrix: not Hermitian, unit-trace and positive");
    return out;
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    DensityMatrix out(n_qubits);
    out.rho_ = Matrix::Identity(out.dim(), out.dim()) / static_cast<double>(out.dim());
    return out;
}

DensityMatrix DensityMatrix::random(int n_qubits, RandomSource& rng) {
    DensityMatrix out(n_qubits);
    Matrix a(out.dim(), out.dim());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = cplx(rng.normal(), rng.normal());
    out.rho_ = a * a.adjoint();
    out.rho_ /= out.rho_.trace();
    return out;
}

void DensityMatrix::conjugate_by(const Matrix& m, const std::vector<int>& targets, Matrix& rho) const {
    // Column-major storage: flat index = c * dim + r, i.e. a (2n)-qubit register
    // whose first n labels are the column index and last n the row index.
    std::vector<int> rows(targets.size()), cols(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j) {
        rows[j] = targets[j] + n_;
        cols[j] = targets[j];
    }
    apply_matrix_kernel(rho.data(), 2 * n_, m, rows);
    const Matrix mc = m.conjugate();
    apply_matrix_kernel(rho.data(), 2 * n_, mc, cols);
}

void DensityMatrix::apply_unitary(const GateMatrix& g, const std::vector<int>& targets) {
    require(static_cast<int>(targets.size()) == log2_dim(g.rows()), "apply_unitary: arity mismatch");
    for (int t : targets) require(t >= 0 && t < n_, "apply_unitary: target out of range");
    conjugate_by(g, targets, rho_);
}

void DensityMatrix::apply_channel(const KrausChannel& ch, const std::vector<int>& targets) {
    require(static_cast<int>(targets.size()) == ch.arity(), "apply_channel: arity mismatch");
    for (int t : targets) require(t >= 0 && t < n_, "apply_channel: target out of range");
    Matrix acc = Matrix::Zero(dim(), dim());
    for (const Matrix& e : ch.operators()) {
        Matrix term = rho_;
        conjugate_by(e, targets, term);
        acc += term;
    }
    rho_ = std::move(acc);
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double DensityMatrix::probability_zero(int q) const {
    require(q >= 0 && q < n_, "probability_zero: qubit out of range");
    const std::uint64_t bit = qubit_bit(n_, q);
    double p = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i)
        if ((static_cast<std::uint64_t>(i) & bit) == 0) p += rho_(i, i).real();
    return p;
}

cplx DensityMatrix::expectation(const Matrix& op) const {
    require(op.rows() == dim() && op.cols() == dim(), "expectation: operator dimension mismatch");
    return (op * rho_).trace();
}

bool DensityMatrix::is_valid(double tol, double psd_tol) const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(rho_.trace() - cplx(1.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -psd_tol;
}

void DensityMatrix::mix(double a, const DensityMatrix& other, double b) {
    require(other.dim() == dim(), "mix: dimension mismatch");
    rho_ = a * rho_ + b * other.rho_;
}

DensityMatrix apply_kraus(DensityMatrix rho, const KrausChannel& ch, const std::vector<int>& targets) {
    rho.apply_channel(ch, targets);
    return rho;
}

}  // namespace qlab
