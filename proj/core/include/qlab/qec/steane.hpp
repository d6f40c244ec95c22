// steane.hpp - the [[7,1,3]] code and its transversal logical gates

#pragma once

#include <array>

#include "qlab/core/state_vector.hpp"
#include "qlab/qec/stabilizer.hpp"

namespace qlab {

// X- and Z-type generators on {3,4,5,6}, {1,2,5,6}, {0,2,4,6}.
StabilizerGroup steane_group();

// |0_L>: uniform superposition of the eight even-weight codewords; |1_L> = X^7 |0_L>.
StateVector steane_zero();
StateVector steane_one();
StateVector steane_state(cplx alpha, cplx beta);

bool in_steane_code_space(const StateVector& s, double tol = 1e-10);
// (alpha, beta) such that s = alpha |0_L> + beta |1_L>.
std::array<cplx, 2> steane_coefficients(const StateVector& s);

enum class SteaneGate { X, Z, H, S, S_naive, CNOT };

// X, Z, H: the gate on every qubit; S: S^dagger on every qubit (the logical
// phase gate); S_naive: S on every qubit (gives -i on |1_L>); CNOT: pairwise
// i -> i + 7 on a 14-qubit two-block state.
StateVector steane_logical(SteaneGate gate, const StateVector& logical_state);

// Two-block logical basis state |a_L b_L>.
StateVector steane_pair(int a, int b);

}  // namespace qlab
