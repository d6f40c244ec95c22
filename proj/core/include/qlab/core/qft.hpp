// qft.hpp - quantum Fourier transform circuits

#pragma once

#include <vector>

#include "qlab/core/circuit.hpp"

namespace qlab {

// F|j> = 2^{-n/2} sum_k e^{+2 pi i jk / 2^n}|k> (inverse: minus sign) on
// `qubits` (default 0..n-1), using Hadamards, controlled phases and final swaps.
Circuit qft_circuit(int n, bool inverse = false);
Circuit qft_circuit_on(int n_register, const std::vector<int>& qubits, bool inverse = false);

// Dense DFT matrix with the same sign convention, for cross-checks.
Matrix qft_matrix(int n, bool inverse = false);

}  // namespace qlab
