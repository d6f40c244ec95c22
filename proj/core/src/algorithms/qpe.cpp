#include "qlab/algorithms/qpe.hpp"

#include <cmath>
#include <numeric>

#include "qlab/algorithms/hadamard_test.hpp"
#include "qlab/core/gates.hpp"
#include "qlab/core/qft.hpp"

namespace qlab {

cplx eigenvalue_of(const GateMatrix& u, const StateVector& psi, double tol) {
    require(log2_dim(u.rows()) == psi.n_qubits(), "qpe: gate arity does not match the state");
    const Vector up = u * psi.amplitudes();
    const cplx lambda = psi.amplitudes().dot(up);
    require((up - lambda * psi.amplitudes()).norm() <= tol, "qpe: input state is not an eigenstate of U");
    return lambda;
}

PhaseEstimate qpe_single(const GateMatrix& u, const StateVector& psi, std::uint64_t shots, RandomSource& rng) {
    eigenvalue_of(u, psi);
    const HadamardEstimate re = hadamard_test(u, psi, HadamardPart::real, shots, rng);
    const HadamardEstimate im = hadamard_test(u, psi, HadamardPart::imag, shots, rng);
    double phi = std::atan2(im.estimate, re.estimate) / (2.0 * kPi);
    if (phi < 0.0) phi += 1.0;
    if (phi >= 1.0) phi -= 1.0;
    PhaseEstimate out;
    out.phi_hat = phi;
    out.shots_used = 2 * shots;
    return out;
}

double single_shot_phase(int outcome) {
    require(outcome == 0 || outcome == 1, "single_shot_phase: outcome must be 0 or 1");
    return outcome == 0 ? 0.0 : 0.5;
}

PhaseEstimate qpe_kitaev(const GateMatrix& u, const StateVector& psi, int d, std::uint64_t shots_per_bit,
                         RandomSource& rng) {
    require(d >= 1 && d <= 52, "qpe_kitaev: bit count must be in [1, 52]");
    eigenvalue_of(u, psi);
    const int k = psi.n_qubits();
    std::vector<int> targets(static_cast<std::size_t>(k));
    std::iota(targets.begin(), targets.end(), 1);

    PhaseEstimate out;
    out.n_bits = d;
    out.bits.assign(static_cast<std::size_t>(d), 0);
    double omega = 0.0;  // (.phi_{b-1} ... phi_0) of the bits resolved so far
    for (int b = 0; b < d; ++b) {
        const Matrix uj = power_of_two(u, d - 1 - b);
        StateVector s = tensor_product(StateVector(1), psi);
        s.apply(gates::H(), {0});
        s.apply_controlled(uj, {0}, targets);
        // U^(2^j) carries phase 2 pi (.phi_j phi_{j-1} ...); remove the resolved tail.
        s.apply(gates::phase(-kPi * omega), {0});
        s.apply(gates::H(), {0});
        const double p0 = s.probability_zero(0);
        if (std::abs(p0 - 0.5) < 1e-6) out.ambiguous = true;
        int bit = 0;
        if (shots_per_bit == 0) {
            bit = p0 < 0.5 ? 1 : 0;
        } else {
            const std::uint64_t zeros = count_successes(rng.fork(rng()), p0, shots_per_bit);
            bit = 2 * zeros < shots_per_bit ? 1 : 0;
            out.shots_used += shots_per_bit;
        }
        out.bits[static_cast<std::size_t>(d - 1 - b)] = bit;
        omega = 0.5 * (omega + bit);
    }
    out.phi_hat = omega;
    return out;
}

QpeOutput qpe_n_unchecked(const GateMatrix& u, const StateVector& psi, int n_ancillas) {
    require(n_ancillas >= 1, "qpe_n: need at least one ancilla");
    const int k = psi.n_qubits();
    require(log2_dim(u.rows()) == k, "qpe_n: gate arity does not match the state");
    require(n_ancillas + k <= kMaxQubits, "qpe_n: register too large");
    const int n = n_ancillas;
    StateVector s = tensor_product(StateVector(n), psi);
    for (int i = 0; i < n; ++i) s.apply(gates::H(), {i});
    std::vector<int> targets(static_cast<std::size_t>(k));
    std::iota(targets.begin(), targets.end(), n);
    for (int i = 0; i < n; ++i) s.apply_controlled(power_of_two(u, n - 1 - i), {i}, targets);
    std::vector<int> anc(static_cast<std::size_t>(n));
    std::iota(anc.begin(), anc.end(), 0);
    qft_circuit_on(n + k, anc, true).apply(s);

    QpeOutput out{PhaseEstimate{}, s, std::vector<double>(std::size_t{1} << n, 0.0)};
    const Eigen::Index sys_dim = Eigen::Index{1} << k;
    for (Eigen::Index i = 0; i < s.dim(); ++i) out.register_probabilities[static_cast<std::size_t>(i / sys_dim)] += std::norm(s[i]);
    std::size_t best = 0;
    for (std::size_t j = 1; j < out.register_probabilities.size(); ++j)
        if (out.register_probabilities[j] > out.register_probabilities[best]) best = j;
    out.estimate.phi_hat = static_cast<double>(best) / std::ldexp(1.0, n);
    out.estimate.n_bits = n;
    out.estimate.bits.resize(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) out.estimate.bits[static_cast<std::size_t>(b)] = static_cast<int>((best >> (n - 1 - b)) & 1U);
    return out;
}

QpeOutput qpe_n(const GateMatrix& u, const StateVector& psi, int n_ancillas) {
    eigenvalue_of(u, psi);
    return qpe_n_unchecked(u, psi, n_ancillas);
}

}  // namespace qlab
