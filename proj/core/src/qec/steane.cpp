#include "qlab/qec/steane.hpp"

#include <cmath>

#include "qlab/core/gates.hpp"
#include "qlab/core/pauli.hpp"

namespace qlab {

namespace {

constexpr int kN = 7;

const std::array<std::array<int, 4>, 3>& supports() {
    static const std::array<std::array<int, 4>, 3> s{{{3, 4, 5, 6}, {1, 2, 5, 6}, {0, 2, 4, 6}}};
    return s;
}

// Even-weight codewords as 7-bit indices (qubit 0 = MSB).
std::vector<std::uint64_t> even_codewords() {
    std::vector<std::uint64_t> rows;
    for (const auto& sup : supports()) {
        std::uint64_t m = 0;
        for (int q : sup) m |= qubit_bit(kN, q);
        rows.push_back(m);
    }
    std::vector<std::uint64_t> words;
    for (int c = 0; c < 8; ++c) {
        std::uint64_t w = 0;
        for (int r = 0; r < 3; ++r)
            if ((c >> r) & 1) w ^= rows[static_cast<std::size_t>(r)];
        words.push_back(w);
    }
    return words;
}

void apply_all(StateVector& s, const Matrix& g, int first, int count) {
    for (int q = first; q < first + count; ++q) s.apply(g, {q});
}

}  // namespace

StabilizerGroup steane_group() {
    std::vector<PauliString> gens;
    for (char letter : {'X', 'Z'})
        for (const auto& sup : supports()) gens.push_back(PauliString::on(kN, {sup.begin(), sup.end()}, letter));
    return StabilizerGroup(std::move(gens));
}

StateVector steane_zero() {
    Vector v = Vector::Zero(Eigen::Index{1} << kN);
    for (std::uint64_t w : even_codewords()) v[static_cast<Eigen::Index>(w)] = 1.0 / std::sqrt(8.0);
    return StateVector::from_amplitudes(v);
}

StateVector steane_one() {
    Vector v = Vector::Zero(Eigen::Index{1} << kN);
    for (std::uint64_t w : even_codewords()) v[static_cast<Eigen::Index>(w ^ 0x7Fu)] = 1.0 / std::sqrt(8.0);
    return StateVector::from_amplitudes(v);
}

StateVector steane_state(cplx alpha, cplx beta) {
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    require(n > 1e-12, "steane_state: zero amplitudes");
    Vector v = (alpha * steane_zero().amplitudes() + beta * steane_one().amplitudes()) / n;
    return StateVector::from_amplitudes(v, 1e-8);
}

bool in_steane_code_space(const StateVector& s, double tol) {
    if (s.n_qubits() != kN) return false;
    const StabilizerGroup group = steane_group();
    for (const PauliString& g : group.generators())
        if (std::abs(expectation_pauli(s, g) - 1.0) > tol) return false;
    return true;
}

std::array<cplx, 2> steane_coefficients(const StateVector& s) {
    require(s.n_qubits() == kN, "steane_coefficients: expected a 7-qubit state");
    return {inner(steane_zero(), s), inner(steane_one(), s)};
}

StateVector steane_pair(int a, int b) {
    require((a == 0 || a == 1) && (b == 0 || b == 1), "steane_pair: logical labels must be 0 or 1");
    return tensor_product(a ? steane_one() : steane_zero(), b ? steane_one() : steane_zero());
}

StateVector steane_logical(SteaneGate gate, const StateVector& logical_state) {
    StateVector s = logical_state;
    if (gate == SteaneGate::CNOT) {
        require(s.n_qubits() == 2 * kN, "steane_logical: CNOT acts on a 14-qubit two-block state");
        const StabilizerGroup group = steane_group();
        for (int b = 0; b < 2; ++b) {
            const int first = b * kN;
            // every generator of each block must read +1
            for (const PauliString& p : group.generators()) {
                std::vector<std::uint8_t> letters(2 * kN, 0);
                for (int q = 0; q < kN; ++q) letters[static_cast<std::size_t>(first + q)] = p.letter(q);
                if (std::abs(expectation_pauli(s, PauliString(letters)) - 1.0) > 1e-8)
                    throw PreconditionError("steane_logical: state outside the code space");
            }
        }
        for (int q = 0; q < kN; ++q) s.apply(gates::CNOT(), {q, q + kN});
        return s;
    }
    require(in_steane_code_space(s, 1e-8), "steane_logical: state outside the code space");
    switch (gate) {
        case SteaneGate::X: apply_all(s, gates::X(), 0, kN); break;
        case SteaneGate::Z: apply_all(s, gates::Z(), 0, kN); break;
        case SteaneGate::H: apply_all(s, gates::H(), 0, kN); break;
        case SteaneGate::S: apply_all(s, gates::Sdag(), 0, kN); break;
        case SteaneGate::S_naive: apply_all(s, gates::S(), 0, kN); break;
        case SteaneGate::CNOT: break;
    }
    return s;
}

}  // namespace qlab
