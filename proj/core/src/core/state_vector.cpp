#include "qlab/core/state_vector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace qlab {

namespace {

// Spreads the bits of i so that every position in `sorted_pos` becomes zero.
inline std::uint64_t deposit_zeros(std::uint64_t i, const std::vector<int>& sorted_pos) {
    for (int pos : sorted_pos) {
        const std::uint64_t low = i & ((std::uint64_t{1} << pos) - 1);
        i = low | ((i - low) << 1);
    }
    return i;
}

void apply_single(cplx* data, int n, const Matrix& g, int target, std::uint64_t control_mask) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t stride = qubit_bit(n, target);
    const cplx g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
    for (std::uint64_t block = 0; block < dim; block += 2 * stride) {
        for (std::uint64_t i = block; i < block + stride; ++i) {
            if ((i & control_mask) != control_mask) continue;
            const cplx a = data[i];
            const cplx b = data[i + stride];
            data[i] = g00 * a + g01 * b;
            data[i + stride] = g10 * a + g11 * b;
        }
    }
}

}  // namespace

void apply_matrix_kernel(cplx* data, int n, const Matrix& g, const std::vector<int>& targets,
                         std::uint64_t control_mask) {
    const int k = static_cast<int>(targets.size());
    if (k == 1) {
        apply_single(data, n, g, targets[0], control_mask);
        return;
    }
    const std::uint64_t local_dim = std::uint64_t{1} << k;
    std::vector<std::uint64_t> offsets(local_dim, 0);
    for (std::uint64_t l = 0; l < local_dim; ++l) {
        for (int j = 0; j < k; ++j) {
            if ((l >> (k - 1 - j)) & 1U) offsets[l] |= qubit_bit(n, targets[j]);
        }
    }
    std::vector<int> positions(k);
    for (int j = 0; j < k; ++j) positions[j] = n - 1 - targets[j];
    std::sort(positions.begin(), positions.end());

    std::vector<cplx> in(local_dim), out(local_dim);
    const std::uint64_t outer = std::uint64_t{1} << (n - k);
    for (std::uint64_t i = 0; i < outer; ++i) {
        const std::uint64_t base = deposit_zeros(i, positions);
        if ((base & control_mask) != control_mask) continue;
        for (std::uint64_t l = 0; l < local_dim; ++l) in[l] = data[base + offsets[l]];
        for (std::uint64_t r = 0; r < local_dim; ++r) {
            cplx acc = 0.0;
            for (std::uint64_t c = 0; c < local_dim; ++c) acc += g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            out[r] = acc;
        }
        for (std::uint64_t l = 0; l < local_dim; ++l) data[base + offsets[l]] = out[l];
    }
}

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
    require(n_qubits >= 1 && n_qubits <= kMaxQubits, "StateVector: qubit count out of range");
    amps_ = Vector::Zero(Eigen::Index{1} << n_qubits);
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    require(index < static_cast<std::uint64_t>(s.dim()), "StateVector::basis: index out of range");
    s.amps_[0] = 0.0;
    s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(Vector amps, double tol) {
    const int n = log2_dim(amps.size());
    require(n >= 1 && n <= kMaxQubits, "StateVector: amplitude count must be 2^n");
    require(std::abs(amps.squaredNorm() - 1.0) <= tol, "StateVector: amplitudes not normalized");
    StateVector s(n);
    s.amps_ = std::move(amps);
    return s;
}

StateVector StateVector::random(int n_qubits, RandomSource& rng) {
    StateVector s(n_qubits);
    for (Eigen::Index i = 0; i < s.dim(); ++i) s.amps_[i] = cplx(rng.normal(), rng.normal());
    s.normalize();
    return s;
}

void StateVector::normalize() {
    const double nrm = amps_.norm();
    if (nrm <= 0.0) throw RuntimeFailure("StateVector::normalize: zero vector");
    amps_ /= nrm;
}

void StateVector::check_targets(const std::vector<int>& qs, int arity) const {
    require(static_cast<int>(qs.size()) == arity, "apply: target count does not match gate arity");
    for (std::size_t a = 0; a < qs.size(); ++a) {
        require(qs[a] >= 0 && qs[a] < n_, "apply: qubit " + std::to_string(qs[a]) + " out of range");
        for (std::size_t b = a + 1; b < qs.size(); ++b) require(qs[a] != qs[b], "apply: duplicate qubit");
    }
}

void StateVector::apply(const GateMatrix& g, const std::vector<int>& targets) {
    apply_controlled(g, {}, targets);
}

void StateVector::apply_controlled(const GateMatrix& g, const std::vector<int>& controls,
                                   const std::vector<int>& targets) {
    require(g.rows() == g.cols(), "apply: gate matrix must be square");
    const int arity = log2_dim(g.rows());
    require(arity >= 1, "apply: gate dimension must be 2^k");
    std::vector<int> all = controls;
    all.insert(all.end(), targets.begin(), targets.end());
    check_targets(targets, arity);
    check_targets(all, arity + static_cast<int>(controls.size()));
    std::uint64_t mask = 0;
    for (int c : controls) mask |= qubit_bit(n_, c);
    apply_matrix_kernel(amps_.data(), n_, g, targets, mask);
}

double StateVector::probability_zero(int q) const {
    require(q >= 0 && q < n_, "probability_zero: qubit out of range");
    const std::uint64_t bit = qubit_bit(n_, q);
    double p = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if ((static_cast<std::uint64_t>(i) & bit) == 0) p += std::norm(amps_[i]);
    }
    return p;
}

double StateVector::project(int q, int outcome) {
    require(outcome == 0 || outcome == 1, "project: outcome must be 0 or 1");
    const double p0 = probability_zero(q);
    const double p = outcome == 0 ? p0 : 1.0 - p0;
    if (p <= 1e-300) throw PreconditionError("project: requested branch has zero probability");
    const std::uint64_t bit = qubit_bit(n_, q);
    const double scale = 1.0 / std::sqrt(p);
    for (Eigen::Index i = 0; i < dim(); ++i) {
        const bool one = (static_cast<std::uint64_t>(i) & bit) != 0;
        amps_[i] = (one == (outcome == 1)) ? amps_[i] * scale : cplx(0.0);
    }
    return p;
}

cplx inner(const StateVector& a, const StateVector& b) {
    require(a.dim() == b.dim(), "inner: dimension mismatch");
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

StateVector apply_gate(StateVector state, const GateMatrix& g, const std::vector<int>& targets) {
    state.apply(g, targets);
    return state;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    require(a.rows() * b.rows() <= (Eigen::Index{1} << kMaxQubits), "tensor_product: result too large");
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    require(a.n_qubits() + b.n_qubits() <= kMaxQubits, "tensor_product: result too large");
    StateVector out(a.n_qubits() + b.n_qubits());
    Vector& v = out.amplitudes();
    for (Eigen::Index i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
    return out;
}

Measurement measure_z(const StateVector& state, int q, RandomSource& rng) {
    const double p0 = state.probability_zero(q);
    return measure_z_forced(state, q, rng.uniform() < p0 ? 0 : 1);
}

Measurement measure_z_forced(const StateVector& state, int q, int outcome) {
    Measurement m;
    m.outcome = outcome;
    m.collapsed = state;
    m.probability = m.collapsed.project(q, outcome);
    return m;
}

Matrix reduced_density(const StateVector& state, const std::vector<int>& keep) {
    const int n = state.n_qubits();
    const int k = static_cast<int>(keep.size());
    std::vector<int> rest;
    for (int q = 0; q < n; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    const Eigen::Index dk = Eigen::Index{1} << k;
    const std::uint64_t dr = std::uint64_t{1} << rest.size();
    Matrix psi(dk, static_cast<Eigen::Index>(dr));
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        Eigen::Index a = 0;
        Eigen::Index b = 0;
        for (int j = 0; j < k; ++j) a = (a << 1) | ((idx & qubit_bit(n, keep[j])) ? 1 : 0);
        for (int r : rest) b = (b << 1) | ((idx & qubit_bit(n, r)) ? 1 : 0);
        psi(a, b) = state[i];
    }
    return psi * psi.adjoint();
}

}  // namespace qlab
