// vqe.hpp - variational energy of Pauli-sum Hamiltonians

#pragma once

#include <vector>

#include "qlab/core/circuit.hpp"
#include "qlab/core/random.hpp"
#include "qlab/ising/pauli_hamiltonian.hpp"

namespace qlab {

// sum_alpha h_alpha <psi|P_alpha|psi>, evaluated term by term.
double vqe_energy(const PauliHamiltonian& h, const StateVector& state);

// Layers of Ry on every qubit followed by a CNOT chain, then a final Ry layer.
// Parameter count: n * (layers + 1).
Circuit hardware_efficient_ansatz(int n_qubits, int layers, const std::vector<double>& theta);

struct VqeResult {
    std::vector<double> theta;
    double energy = 0.0;
    std::vector<double> trace;
    std::uint64_t evaluations = 0;
};

VqeResult vqe_minimize(const PauliHamiltonian& h, int layers, std::uint64_t budget, RandomSource& rng);

}  // namespace qlab
