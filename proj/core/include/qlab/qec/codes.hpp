// codes.hpp - repetition and Shor codes with explicit syndrome extraction

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qlab/core/circuit.hpp"
#include "qlab/core/pauli.hpp"
#include "qlab/qec/analytic.hpp"
#include "qlab/qec/stabilizer.hpp"

namespace qlab {

// Register layout: data qubits 0..n_data-1 (the logical input enters on
// qubit 0), then the syndrome ancillas. Pipeline for run_code:
//   encode -> error on data -> syndrome circuit -> measure ancillas
//   -> correction[syndrome] on data -> decode
struct CodeSpec {
    std::string name;
    int n_data = 0;
    int n_ancilla = 0;
    Circuit encode{1};
    Circuit syndrome{1};
    Circuit decode{1};
    std::vector<int> ancillas;                    // measured in this order
    std::map<Syndrome, PauliString> correction;   // words on the data qubits
    std::vector<PauliString> stabilizers;         // data-qubit stabilizer generators

    int n_physical() const { return n_data; }
    int n_total() const { return n_data + n_ancilla; }
};

CodeSpec bit_flip_code();
CodeSpec phase_flip_code();
// 9 data qubits, 8 ancillas: d0..d5 are the per-block bit-flip parities and
// d6, d7 the block-phase parities.
CodeSpec shor_code();
// Lookup by name: bitflip, phaseflip, shor.
CodeSpec code_by_name(const std::string& name);

struct CodeRun {
    StateVector final_state;  // 1-qubit output after decoding
    Syndrome syndrome;
    PauliString applied;      // correction applied on the data qubits
    double fidelity = 0.0;    // |<psi|final>|^2
    bool corrected = false;   // fidelity >= 1 - 1e-10
};

// `error` acts on the n_data physical qubits.
CodeRun run_code(const CodeSpec& code, const StateVector& psi, const PauliString& error, RandomSource& rng);

// Pauli-frame evaluation for ideal syndrome circuits: the syndrome is the
// commutation pattern with the stabilizers (listed in ancilla order), and the
// code succeeds when error * correction lies in the stabilizer group.
bool pauli_frame_corrects(const CodeSpec& code, const PauliString& error);

// Independent errors on every physical qubit with probability eps. model:
// 'X' bit flips, 'Z' phase flips, 'D' depolarizing (X, Y, Z equally likely).
FailureEstimate sample_code_failure(const CodeSpec& code, double eps, char model, std::uint64_t trials,
                                    RandomSource& rng);
// Exact failure probability by enumerating every error pattern.
double code_failure_exact(const CodeSpec& code, double eps, char model);

// Encoded data state (without ancillas) for a 1-qubit input.
StateVector encode_logical(const CodeSpec& code, const StateVector& psi);

}  // namespace qlab
