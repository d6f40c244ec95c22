#include "qlab/algorithms/protocols.hpp"

#include "qlab/core/gates.hpp"

namespace qlab {

namespace {

void require_bit(int b, const char* what) { require(b == 0 || b == 1, std::string(what) + ": bits must be 0 or 1"); }

}  // namespace

StateVector bell_pair() {
    StateVector s(2);
    s.apply(gates::H(), {0});
    s.apply(gates::CNOT(), {0, 1});
    return s;
}

GateMatrix dense_coding_encoder(int x, int y) {
    require_bit(x, "dense_coding");
    require_bit(y, "dense_coding");
    if (x == 0 && y == 0) return gates::I();
    if (x == 0) return gates::X();
    if (y == 0) return gates::Z();
    return kI * gates::Y();
}

StateVector dense_coding_state(int x, int y) {
    StateVector s = bell_pair();
    s.apply(dense_coding_encoder(x, y), {0});
    return s;
}

std::pair<int, int> dense_coding(int x, int y, RandomSource& rng) {
    StateVector s = dense_coding_state(x, y);
    s.apply(gates::CNOT(), {0, 1});
    s.apply(gates::H(), {0});
    const Measurement a = measure_z(s, 0, rng);
    const Measurement b = measure_z(a.collapsed, 1, rng);
    return {a.outcome, b.outcome};
}

GateMatrix teleport_correction(int m0, int m1) {
    require_bit(m0, "teleport");
    require_bit(m1, "teleport");
    if (m0 == 0) return m1 == 0 ? gates::X() : gates::I();
    return m1 == 0 ? GateMatrix(kI * gates::Y()) : gates::Z();
}

namespace {

StateVector teleport_prepared(const StateVector& psi) {
    require(psi.n_qubits() == 1, "teleport: input must be a single qubit");
    StateVector s = tensor_product(psi, StateVector::basis(2, 1));
    s.apply(gates::H(), {1});
    s.apply(gates::CNOT(), {1, 2});
    s.apply(gates::CNOT(), {0, 1});
    s.apply(gates::H(), {0});
    return s;
}

StateVector bob_qubit(const StateVector& collapsed, int m0, int m1) {
    const Eigen::Index base = (static_cast<Eigen::Index>(m0) << 2) | (static_cast<Eigen::Index>(m1) << 1);
    Vector v(2);
    v << collapsed[base], collapsed[base + 1];
    StateVector out = StateVector::from_amplitudes(v, 1e-8);
    out.apply(teleport_correction(m0, m1), {0});
    return out;
}

}  // namespace

TeleportBranch teleport_branch(const StateVector& psi, int m0, int m1) {
    StateVector s = teleport_prepared(psi);
    TeleportBranch out;
    const double p0 = s.project(0, m0);
    const double p1 = s.project(1, m1);
    out.probability = p0 * p1;
    out.output = bob_qubit(s, m0, m1);
    return out;
}

TeleportResult teleport(const StateVector& psi, RandomSource& rng) {
    const StateVector s = teleport_prepared(psi);
    const Measurement a = measure_z(s, 0, rng);
    const Measurement b = measure_z(a.collapsed, 1, rng);
    return TeleportResult{bob_qubit(b.collapsed, a.outcome, b.outcome), a.outcome, b.outcome};
}

}  // namespace qlab
