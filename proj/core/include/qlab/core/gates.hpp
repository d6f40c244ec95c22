// gates.hpp - standard gate matrices in the computational basis

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlab/core/types.hpp"

namespace qlab {

using Axis = std::array<double, 3>;

namespace gates {

Matrix I(int n_qubits = 1);
Matrix X();
Matrix Y();
Matrix Z();
Matrix H();
Matrix S();
Matrix Sdag();
Matrix T();  // diag(1, e^{i pi/4})
Matrix Tdag();
Matrix Rx(double theta);
Matrix Ry(double theta);
Matrix Rz(double theta);
// cos(theta/2) 1 - i sin(theta/2) n.sigma, |n| = 1
Matrix Rn(double theta, const Axis& n);
Matrix phase(double phi);  // diag(1, e^{i phi})
Matrix CNOT();             // control = first qubit
Matrix CZ();
Matrix SWAP();

}  // namespace gates

// Dispatch by name: X, Y, Z, H, S, T, Sdag, Tdag, Rx, Ry, Rz, Rn.
GateMatrix standard_gate(const std::string& name, const std::vector<double>& params = {},
                         const std::optional<Axis>& axis = std::nullopt);

// Block-diagonal [1, U] with the control on the most significant qubit.
GateMatrix controlled(const GateMatrix& u);

bool is_unitary(const Matrix& g, double tol = 1e-10);
double max_abs_diff(const Matrix& a, const Matrix& b);

// U^(2^j) by repeated squaring.
Matrix power_of_two(const Matrix& u, int j);

// Pauli sigma_alpha for alpha = 0..3 (I, X, Y, Z).
Matrix pauli(int alpha);

}  // namespace qlab
