// pauli_hamiltonian.hpp - real-weighted sums of Pauli words

#pragma once

#include <string>
#include <vector>

#include "qlab/core/pauli.hpp"
#include "qlab/ising/model.hpp"

namespace qlab {

struct PauliTerm {
    double coeff = 0.0;
    PauliString word;
};

class PauliHamiltonian {
public:
    explicit PauliHamiltonian(int n_qubits);

    int n_qubits() const { return n_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    // The word must carry phase +1 so the coefficient stays real.
    PauliHamiltonian& add(double coeff, const PauliString& word);
    PauliHamiltonian& add(double coeff, const std::string& word);

    Matrix to_matrix() const;

    // C(s) as -sum h_i Z_i - sum J_ij Z_i Z_j + constant * I.
    static PauliHamiltonian from_ising(const IsingModel& model);
    // -sum_i X_i
    static PauliHamiltonian transverse_field(int n_qubits);
    // "0.5 ZZ + -1 XI" style: whitespace-separated (coefficient, word) pairs,
    // optionally joined by '+'.
    static PauliHamiltonian parse(const std::string& text);

private:
    int n_;
    std::vector<PauliTerm> terms_;
};

struct HamiltonianGround {
    double energy = 0.0;
    std::vector<StateVector> states;  // orthonormal basis of the ground eigenspace
    double gap = 0.0;                 // E_1 - E_0 over distinct levels (0 if one level)
};

HamiltonianGround brute_force_ground(const PauliHamiltonian& h, double tol = 1e-9);

// Spectral norm of [A, B].
double commutator_norm(const Matrix& a, const Matrix& b);

}  // namespace qlab
