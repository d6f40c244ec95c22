// qpe.hpp - phase estimation: single-qubit, iterative (bitwise) and n-ancilla

#pragma once

#include <vector>

#include "qlab/core/random.hpp"
#include "qlab/core/state_vector.hpp"

namespace qlab {

struct PhaseEstimate {
    double phi_hat = 0.0;  // in [0, 1)
    int n_bits = 0;
    std::uint64_t shots_used = 0;
    bool ambiguous = false;  // some bit had P(0) within 1e-6 of 1/2
    std::vector<int> bits;   // most significant first, when produced bitwise
};

// Throws unless U|psi> = lambda |psi> within `tol`; returns lambda.
cplx eigenvalue_of(const GateMatrix& u, const StateVector& psi, double tol = 1e-8);

// Real and imaginary Hadamard tests with `shots` each, combined through atan2.
PhaseEstimate qpe_single(const GateMatrix& u, const StateVector& psi, std::uint64_t shots, RandomSource& rng);

// Best phase from one real-part shot: outcome 0 -> 0, outcome 1 -> 1/2.
double single_shot_phase(int outcome);

// Bitwise estimation from the least significant bit upward, feeding each
// resolved bit back as a phase correction on the ancilla. shots_per_bit = 0
// uses the exact ancilla probability.
PhaseEstimate qpe_kitaev(const GateMatrix& u, const StateVector& psi, int d, std::uint64_t shots_per_bit,
                         RandomSource& rng);

struct QpeOutput {
    PhaseEstimate estimate;
    StateVector state;                // ancillas (qubits 0..n-1) then the system
    std::vector<double> register_probabilities;  // P(ancilla register = k)
};

// Ancilla i controls U^(2^(n-1-i)), followed by the inverse QFT on the ancillas.
QpeOutput qpe_n(const GateMatrix& u, const StateVector& psi, int n_ancillas);

// Same circuit without the eigenstate precondition, for superposition inputs.
QpeOutput qpe_n_unchecked(const GateMatrix& u, const StateVector& psi, int n_ancillas);

}  // namespace qlab
