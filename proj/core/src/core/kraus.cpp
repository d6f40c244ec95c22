#include <cmath>

#include "qlab/core/density_matrix.hpp"
#include "qlab/core/gates.hpp"

namespace qlab {

KrausChannel::KrausChannel(std::vector<Matrix> ops, double tol) : ops_(std::move(ops)) {
    require(!ops_.empty(), "KrausChannel: at least one operator required");
    const Eigen::Index d = ops_.front().rows();
    arity_ = log2_dim(d);
    require(arity_ >= 1, "KrausChannel: operator dimension must be 2^k");
    for (const Matrix& e : ops_) require(e.rows() == d && e.cols() == d, "KrausChannel: operator shape mismatch");
    require(completeness_error() <= tol, "KrausChannel: sum of E^dagger E differs from identity");
}

double KrausChannel::completeness_error() const {
    const Eigen::Index d = ops_.front().rows();
    Matrix acc = Matrix::Zero(d, d);
    for (const Matrix& e : ops_) acc += e.adjoint() * e;
    return (acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

KrausChannel KrausChannel::identity(int n_qubits) { return KrausChannel({gates::I(n_qubits)}); }

KrausChannel KrausChannel::unitary_mixture(double p, const Matrix& e) {
    require(p >= 0.0 && p <= 1.0, "unitary_mixture: p must lie in [0,1]");
    require(is_unitary(e), "unitary_mixture: error operator must be unitary");
    const int k = log2_dim(e.rows());
    return KrausChannel({std::sqrt(1.0 - p) * gates::I(k), std::sqrt(p) * e});
}

KrausChannel KrausChannel::bit_flip(double p) { return unitary_mixture(p, gates::X()); }
KrausChannel KrausChannel::phase_flip(double p) { return unitary_mixture(p, gates::Z()); }

KrausChannel KrausChannel::depolarizing(double lambda) {
    require(lambda >= 0.0 && lambda <= 4.0 / 3.0, "depolarizing: lambda out of range");
    const double w = lambda / 4.0;
    return KrausChannel({std::sqrt(1.0 - 3.0 * w) * gates::I(), std::sqrt(w) * gates::X(), std::sqrt(w) * gates::Y(),
                         std::sqrt(w) * gates::Z()});
}

}  // namespace qlab
