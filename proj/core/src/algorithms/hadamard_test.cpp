#include "qlab/algorithms/hadamard_test.hpp"

#include <cmath>
#include <numeric>

#include "qlab/core/gates.hpp"

namespace qlab {

StateVector hadamard_test_state(const GateMatrix& u, const StateVector& psi, HadamardPart part) {
    const int k = log2_dim(u.rows());
    require(k == psi.n_qubits(), "hadamard_test: gate arity does not match the state");
    StateVector s = tensor_product(StateVector(1), psi);
    s.apply(gates::H(), {0});
    if (part == HadamardPart::imag) s.apply(gates::Sdag(), {0});
    std::vector<int> targets(static_cast<std::size_t>(k));
    std::iota(targets.begin(), targets.end(), 1);
    s.apply_controlled(u, {0}, targets);
    s.apply(gates::H(), {0});
    return s;
}

double hadamard_test_probability(const GateMatrix& u, const StateVector& psi, HadamardPart part) {
    return hadamard_test_state(u, psi, part).probability_zero(0);
}

HadamardEstimate hadamard_test(const GateMatrix& u, const StateVector& psi, HadamardPart part, std::uint64_t shots,
                               RandomSource& rng) {
    require(shots >= 1, "hadamard_test: shots must be >= 1");
    HadamardEstimate out;
    out.p_zero = hadamard_test_probability(u, psi, part);
    out.shots = shots;
    const std::uint64_t zeros = count_successes(rng.fork(rng()), out.p_zero, shots);
    const double f = static_cast<double>(zeros) / static_cast<double>(shots);
    out.estimate = 2.0 * f - 1.0;
    out.std_error = 2.0 * std::sqrt(std::max(f * (1.0 - f), 1e-300) / static_cast<double>(shots));
    return out;
}

}  // namespace qlab
