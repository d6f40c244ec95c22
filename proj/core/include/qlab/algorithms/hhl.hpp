// hhl.hpp - linear-system solver via phase estimation and a controlled rotation

#pragma once

#include "qlab/core/random.hpp"
#include "qlab/core/state_vector.hpp"

namespace qlab {

struct LinearSystem {
    Matrix a;  // Hermitian, spectrum in (0, 1)
    Vector b;  // unit norm
};

struct HhlOptions {
    int precision_bits = 4;
    double c = 0.0;                 // rotation constant, 0 < C <= lambda_min; 0 selects lambda_min
    std::uint64_t max_attempts = 10000;
    double exactness_tol = 1e-8;    // tolerance for lambda * 2^d being an integer
};

struct HhlResult {
    StateVector x_hat;             // normalized solution register
    double p_success = 0.0;        // probability of ancilla outcome 1
    double register_fidelity = 0.0;  // weight of |0...0> on the eigenvalue register, given success
    std::uint64_t attempts = 0;    // simulated post-selection trials until success
    StateVector full_state;        // ancilla, eigenvalue register, b register before measurement
};

// Register layout: qubit 0 ancilla, qubits 1..d eigenvalue register, then b.
HhlResult hhl(const LinearSystem& sys, const HhlOptions& opts, RandomSource& rng);

// Unitary diag-in-eigenbasis e^{2 pi i A}.
Matrix hhl_evolution(const Matrix& a);

// Classical reference A^{-1} b normalized.
Vector classical_solution(const LinearSystem& sys);

// Random Hermitian A = V diag(k_j / 2^d) V^dagger with k_j in [1, 2^d).
LinearSystem random_exact_system(int n_b, int d, RandomSource& rng);

}  // namespace qlab
