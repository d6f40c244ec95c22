// types.hpp - shared scalar/matrix aliases and error types

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// A k-qubit gate is a 2^k x 2^k complex matrix; the first listed target is the
// most significant bit of the local index.
using GateMatrix = Matrix;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Largest register any dense object may hold.
inline constexpr int kMaxQubits = 26;

// Raised when an operation's documented precondition is violated.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a simulation cannot complete (e.g. post-selection never succeeds).
class RuntimeFailure : public std::runtime_error {
public:
    explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

// Number of qubits encoded by a dimension, or -1 if it is not a power of two.
inline int log2_dim(Eigen::Index dim) {
    if (dim <= 0) return -1;
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    return (Eigen::Index{1} << n) == dim ? n : -1;
}

}  // namespace qlab
