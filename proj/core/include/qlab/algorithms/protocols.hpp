// protocols.hpp - dense coding and teleportation

#pragma once

#include <array>
#include <utility>

#include "qlab/core/random.hpp"
#include "qlab/core/state_vector.hpp"

namespace qlab {

// Shared pair (|00> + |11>)/sqrt(2) on qubits (0, 1).
StateVector bell_pair();

// Alice's local encoding of (x, y) on qubit 0: 00 -> I, 01 -> X, 10 -> Z, 11 -> iY.
GateMatrix dense_coding_encoder(int x, int y);
// Two-qubit state after encoding, before Bob's decoding.
StateVector dense_coding_state(int x, int y);
// Bob applies CNOT(0->1), H(0) and measures both qubits.
std::pair<int, int> dense_coding(int x, int y, RandomSource& rng);

// Correction Bob applies on his qubit for Alice's outcomes (q0, q1).
GateMatrix teleport_correction(int m0, int m1);

struct TeleportBranch {
    double probability = 0.0;
    StateVector output;  // Bob's qubit after correction
};

// Runs the protocol with both of Alice's outcomes forced.
TeleportBranch teleport_branch(const StateVector& psi, int m0, int m1);

struct TeleportResult {
    StateVector output;
    int m0 = 0;
    int m1 = 0;
};

TeleportResult teleport(const StateVector& psi, RandomSource& rng);

}  // namespace qlab
