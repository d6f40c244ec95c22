// test_support.hpp - oracles and random objects shared by the test programs

#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "qlab/core/random.hpp"
#include "qlab/core/types.hpp"

namespace qlab::testing {

// Haar-random unitary from the QR decomposition of a complex Gaussian matrix.
inline Matrix random_unitary(int dim, RandomSource& rng) {
    Matrix z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) z(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const cplx d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

inline Vector random_vector(int dim, RandomSource& rng) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cplx(rng.normal(), rng.normal());
    return v / v.norm();
}

// Random density matrix A A^dagger / tr.
inline Matrix random_density(int dim, RandomSource& rng) {
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
    Matrix rho = a * a.adjoint();
    return rho / rho.trace();
}

inline double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Kronecker product with `a` on the more significant index.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace qlab::testing
