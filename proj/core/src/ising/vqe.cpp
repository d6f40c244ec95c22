#include "qlab/ising/vqe.hpp"

#include "qlab/core/gates.hpp"
#include "qlab/ising/optimize.hpp"

namespace qlab {

double vqe_energy(const PauliHamiltonian& h, const StateVector& state) {
    require(h.n_qubits() == state.n_qubits(), "vqe_energy: word length does not match the state");
    double e = 0.0;
    for (const PauliTerm& t : h.terms()) e += t.coeff * expectation_pauli(state, t.word);
    return e;
}

Circuit hardware_efficient_ansatz(int n_qubits, int layers, const std::vector<double>& theta) {
    require(layers >= 0, "hardware_efficient_ansatz: layers must be >= 0");
    require(theta.size() == static_cast<std::size_t>(n_qubits * (layers + 1)), "hardware_efficient_ansatz: wrong parameter count");
    Circuit c(n_qubits);
    std::size_t k = 0;
    for (int l = 0; l <= layers; ++l) {
        for (int q = 0; q < n_qubits; ++q) c.add(gates::Ry(theta[k++]), {q}, "Ry");
        if (l == layers) break;
        for (int q = 0; q + 1 < n_qubits; ++q) c.add(gates::CNOT(), {q, q + 1}, "CNOT");
    }
    return c;
}

VqeResult vqe_minimize(const PauliHamiltonian& h, int layers, std::uint64_t budget, RandomSource& rng) {
    const int n = h.n_qubits();
    const std::size_t np = static_cast<std::size_t>(n * (layers + 1));
    std::vector<double> x0(np), lo(np, -kPi), hi(np, kPi);
    for (double& v : x0) v = (2.0 * rng.uniform() - 1.0) * kPi;
    PatternSearchOptions opts;
    opts.budget = budget;
    auto energy = [&](const std::vector<double>& th) {
        return vqe_energy(h, hardware_efficient_ansatz(n, layers, th).run(StateVector(n)));
    };
    const PatternSearchResult r = pattern_search(energy, x0, lo, hi, opts);
    return VqeResult{r.x, r.f, r.trace, r.evaluations};
}

}  // namespace qlab
