#include "qlab/qec/fault_tolerance.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/core/gates.hpp"

namespace qlab {

PauliString cnot_error_propagation(const PauliString& error, ErrorPosition position) {
    require(error.n_qubits() == 2, "cnot_error_propagation: expected a 2-qubit error word");
    if (position == ErrorPosition::after) return error;
    return conjugate_pauli(gates::CNOT(), error);
}

PauliString propagate_pauli(const Circuit& circuit, const PauliString& p) {
    require(circuit.n_qubits() == p.n_qubits(), "propagate_pauli: length mismatch");
    PauliString cur = p;
    for (const Operation& op : circuit.ops()) {
        std::vector<int> local = op.controls;
        local.insert(local.end(), op.targets.begin(), op.targets.end());
        Matrix u = op.gate;
        for (std::size_t c = 0; c < op.controls.size(); ++c) u = controlled(u);
        std::vector<std::uint8_t> sub;
        for (int q : local) sub.push_back(cur.letter(q));
        if (std::all_of(sub.begin(), sub.end(), [](std::uint8_t l) { return l == 0; })) continue;
        const PauliString image = conjugate_pauli(u, PauliString(sub));
        std::vector<std::uint8_t> letters = cur.letters();
        for (std::size_t k = 0; k < local.size(); ++k) letters[static_cast<std::size_t>(local[k])] = image.letter(static_cast<int>(k));
        cur = PauliString(std::move(letters), cur.phase() + image.phase());
    }
    return cur;
}

Circuit transversal_cnot(int block_size) {
    require(block_size >= 1 && block_size <= 13, "transversal_cnot: block size must lie in [1,13]");
    Circuit c(2 * block_size);
    for (int q = 0; q < block_size; ++q) c.add(gates::CNOT(), {q, q + block_size}, "CNOT");
    return c;
}

StateVector t_ancilla_state() {
    StateVector s(1);
    s.apply(gates::H(), {0});
    s.apply(gates::T(), {0});
    return s;
}

Matrix t_correction() { return gates::T() * gates::X() * gates::Tdag(); }

TGateRun ft_t_gate_branch(const StateVector& psi, const StateVector& ancilla, int y) {
    require(psi.n_qubits() == 1 && ancilla.n_qubits() == 1, "ft_t_gate: data and ancilla must be single qubits");
    require(y == 0 || y == 1, "ft_t_gate: branch must be 0 or 1");
    StateVector s = tensor_product(psi, ancilla);
    s.apply(gates::H(), {0});
    s.apply(gates::CZ(), {0, 1});
    s.apply(gates::H(), {0});
    const Measurement m = measure_z_forced(s, 0, y);
    TGateRun out;
    out.y = y;
    out.probability = m.probability;
    Vector q1(2);
    q1[0] = m.collapsed[y ? 2 : 0];
    q1[1] = m.collapsed[y ? 3 : 1];
    StateVector o = StateVector::from_amplitudes(q1 / q1.norm(), 1e-8);
    if (y) o.apply(t_correction(), {0});
    out.output = o;
    return out;
}

TGateRun ft_t_gate_branch(const StateVector& psi, int y) { return ft_t_gate_branch(psi, t_ancilla_state(), y); }

TGateRun ft_t_gate(const StateVector& psi, RandomSource& rng) {
    const TGateRun zero = ft_t_gate_branch(psi, 0);
    const int y = rng.uniform() < zero.probability ? 0 : 1;
    return y == 0 ? zero : ft_t_gate_branch(psi, 1);
}

AncillaPreparation prepare_t_ancilla(RandomSource& rng, int max_attempts) {
    require(max_attempts >= 1, "prepare_t_ancilla: max_attempts must be >= 1");
    const Matrix plus = 0.5 * (Matrix::Identity(2, 2) + t_correction());
    const StateVector target = t_ancilla_state();
    for (int a = 1; a <= max_attempts; ++a) {
        const StateVector nu = StateVector::random(1, rng);
        const Vector proj = plus * nu.amplitudes();
        const double p = proj.squaredNorm();
        if (rng.uniform() < p) {
            AncillaPreparation out;
            out.state = StateVector::from_amplitudes(proj / std::sqrt(p), 1e-8);
            out.attempts = a;
            out.fidelity = fidelity(out.state, target);
            return out;
        }
    }
    throw RuntimeFailure("prepare_t_ancilla: no +1 outcome within the attempt budget");
}

double t_power_identity_residual(int y, bool mirror_convention) {
    require(y == 0 || y == 1, "t_power_identity_residual: y must be 0 or 1");
    const cplx ph = mirror_convention ? std::polar(1.0, -kPi * y / 4.0) : cplx(1.0);
    const Matrix t = mirror_convention ? gates::Rz(-kPi / 4.0) : gates::T();
    const Matrix tinv = t.adjoint();
    const Matrix lhs = y == 0 ? t : tinv;
    const Matrix s = mirror_convention ? gates::S() : gates::Sdag();
    const Matrix rhs = ph * (y == 0 ? Matrix(t) : Matrix(s * t));
    return max_abs_diff(lhs, rhs);
}

}  // namespace qlab
