// fault_tolerance.hpp - Pauli error propagation through Clifford circuits and
// the teleported T gate

#pragma once

#include "qlab/core/circuit.hpp"
#include "qlab/core/pauli.hpp"

namespace qlab {

enum class ErrorPosition { before, after };

// 2-qubit error relative to a CNOT (control = qubit 0): an error before the
// gate emerges as CNOT E CNOT; one already after it is returned unchanged.
PauliString cnot_error_propagation(const PauliString& error, ErrorPosition position);

// U P U^dagger for a Clifford circuit U, gate by gate (throws on non-Clifford gates).
PauliString propagate_pauli(const Circuit& circuit, const PauliString& p);

// Transversal CNOT between two 7-qubit blocks (qubit i controls i + 7).
Circuit transversal_cnot(int block_size = 7);

// Ancilla |phi> = T H |0> and the Hermitian correction M = T X T^dagger
// (= e^{-i pi/4} S X) whose +1 eigenstate it is.
StateVector t_ancilla_state();
Matrix t_correction();

struct TGateRun {
    StateVector output;
    int y = 0;               // measured bit on the data qubit
    double probability = 0;  // probability of that branch
};

// Data psi on q0, ancilla on q1; H(q0), CZ, H(q0), measure q0 -> y, apply M^y on q1.
TGateRun ft_t_gate(const StateVector& psi, RandomSource& rng);
TGateRun ft_t_gate_branch(const StateVector& psi, int y);
// Same circuit with a caller-supplied ancilla.
TGateRun ft_t_gate_branch(const StateVector& psi, const StateVector& ancilla, int y);

struct AncillaPreparation {
    StateVector state;
    int attempts = 0;
    double fidelity = 0;  // against t_ancilla_state()
};

// Measures M on Haar-random states until the +1 outcome is obtained.
AncillaPreparation prepare_t_ancilla(RandomSource& rng, int max_attempts = 1000);

// Max entry difference between T^(1-2y) and (S^dagger)^y T for the module's T,
// or between R^(1-2y) and e^{-i pi y/4} S^y R for the mirror convention
// R = e^{i pi Z/8}.
double t_power_identity_residual(int y, bool mirror_convention = false);

}  // namespace qlab
