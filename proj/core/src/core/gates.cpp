#include "qlab/core/gates.hpp"

#include <cmath>

namespace qlab {

namespace gates {

Matrix I(int n_qubits) { return Matrix::Identity(Eigen::Index{1} << n_qubits, Eigen::Index{1} << n_qubits); }

Matrix X() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix Y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix Z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix H() {
    Matrix m(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

Matrix S() { return phase(kPi / 2); }
Matrix Sdag() { return phase(-kPi / 2); }
Matrix T() { return phase(kPi / 4); }
Matrix Tdag() { return phase(-kPi / 4); }

Matrix phase(double phi) {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = std::polar(1.0, phi);
    return m;
}

Matrix Rx(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Matrix m(2, 2);
    m << c, -kI * s, -kI * s, c;
    return m;
}

Matrix Ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Matrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

Matrix Rz(double theta) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -theta / 2);
    m(1, 1) = std::polar(1.0, theta / 2);
    return m;
}

Matrix Rn(double theta, const Axis& n) {
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    require(std::abs(len - 1.0) < 1e-10, "Rn: rotation axis must be normalized");
    const Matrix ns = n[0] * X() + n[1] * Y() + n[2] * Z();
    return std::cos(theta / 2) * Matrix::Identity(2, 2) - kI * std::sin(theta / 2) * ns;
}

Matrix CNOT() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

Matrix CZ() {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

Matrix SWAP() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    return m;
}

}  // namespace gates

GateMatrix standard_gate(const std::string& name, const std::vector<double>& params,
                         const std::optional<Axis>& axis) {
    auto angle = [&]() {
        require(params.size() == 1, "standard_gate: " + name + " requires exactly one angle");
        return params[0];
    };
    if (name == "X") return gates::X();
    if (name == "Y") return gates::Y();
    if (name == "Z") return gates::Z();
    if (name == "H") return gates::H();
    if (name == "S") return gates::S();
    if (name == "T") return gates::T();
    if (name == "Sdag") return gates::Sdag();
    if (name == "Tdag") return gates::Tdag();
    if (name == "Rx") return gates::Rx(angle());
    if (name == "Ry") return gates::Ry(angle());
    if (name == "Rz") return gates::Rz(angle());
    if (name == "Rn") {
        require(axis.has_value(), "standard_gate: Rn requires an axis");
        return gates::Rn(angle(), *axis);
    }
    throw PreconditionError("standard_gate: unknown gate '" + name + "'");
}

GateMatrix controlled(const GateMatrix& u) {
    require(u.rows() == u.cols() && log2_dim(u.rows()) >= 1, "controlled: gate must be 2^k square");
    require(is_unitary(u), "controlled: gate must be unitary");
    const Eigen::Index d = u.rows();
    Matrix m = Matrix::Identity(2 * d, 2 * d);
    m.bottomRightCorner(d, d) = u;
    return m;
}

bool is_unitary(const Matrix& g, double tol) {
    if (g.rows() != g.cols()) return false;
    return max_abs_diff(g.adjoint() * g, Matrix::Identity(g.rows(), g.cols())) < tol;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
    return (a - b).cwiseAbs().maxCoeff();
}

Matrix power_of_two(const Matrix& u, int j) {
    Matrix m = u;
    for (int i = 0; i < j; ++i) m = m * m;
    return m;
}

Matrix pauli(int alpha) {
    switch (alpha) {
        case 0: return gates::I();
        case 1: return gates::X();
        case 2: return gates::Y();
        case 3: return gates::Z();
        default: throw PreconditionError("pauli: index must be 0..3");
    }
}

}  // namespace qlab
