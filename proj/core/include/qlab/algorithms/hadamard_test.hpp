// hadamard_test.hpp - ancilla-controlled expectation estimates

#pragma once

#include "qlab/core/random.hpp"
#include "qlab/core/state_vector.hpp"

namespace qlab {

enum class HadamardPart { real, imag };

// Full (ancilla + register) state just before the ancilla is measured.
// Ancilla is qubit 0; the imaginary variant inserts S^dagger after the first H.
StateVector hadamard_test_state(const GateMatrix& u, const StateVector& psi, HadamardPart part);

// P(ancilla = 0) = (1 + Re<psi|U|psi>)/2 or (1 + Im<psi|U|psi>)/2.
double hadamard_test_probability(const GateMatrix& u, const StateVector& psi, HadamardPart part);

struct HadamardEstimate {
    double estimate = 0.0;  // 2 * (fraction of zeros) - 1
    double p_zero = 0.0;    // exact pre-measurement probability
    double std_error = 0.0; // binomial standard error of `estimate`
    std::uint64_t shots = 0;
};

HadamardEstimate hadamard_test(const GateMatrix& u, const StateVector& psi, HadamardPart part, std::uint64_t shots,
                               RandomSource& rng);

}  // namespace qlab
