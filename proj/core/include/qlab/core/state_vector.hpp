// state_vector.hpp - dense n-qubit pure state and the gate-application kernel

#pragma once

#include <cstdint>
#include <vector>

#include "qlab/core/random.hpp"
#include "qlab/core/types.hpp"

namespace qlab {

// Applies a 2^k x 2^k matrix to `targets` of an n-qubit amplitude array in place.
// Qubit 0 is the most significant bit of the basis index. Basis states whose
// `control_mask` bits are not all set are left untouched.
void apply_matrix_kernel(cplx* data, int n_qubits, const Matrix& g, const std::vector<int>& targets,
                         std::uint64_t control_mask = 0);

// Index-bit mask for a qubit label.
inline std::uint64_t qubit_bit(int n_qubits, int q) { return std::uint64_t{1} << (n_qubits - 1 - q); }

class StateVector {
public:
    StateVector() : StateVector(1) {}
    explicit StateVector(int n_qubits);

    static StateVector basis(int n_qubits, std::uint64_t index);
    static StateVector from_amplitudes(Vector amps, double tol = 1e-10);
    // Haar-random state.
    static StateVector random(int n_qubits, RandomSource& rng);

    int n_qubits() const { return n_; }
    Eigen::Index dim() const { return amps_.size(); }
    const Vector& amplitudes() const { return amps_; }
    Vector& amplitudes() { return amps_; }
    cplx operator[](Eigen::Index i) const { return amps_[i]; }
    cplx& operator[](Eigen::Index i) { return amps_[i]; }

    double norm() const { return amps_.norm(); }
    void normalize();

    void apply(const GateMatrix& g, const std::vector<int>& targets);
    void apply_controlled(const GateMatrix& g, const std::vector<int>& controls,
                          const std::vector<int>& targets);

    double probability_zero(int q) const;
    // Projects qubit q onto `outcome`, renormalizes, returns the branch probability.
    double project(int q, int outcome);

private:
    void check_targets(const std::vector<int>& qs, int arity) const;

    int n_;
    Vector amps_;
};

cplx inner(const StateVector& a, const StateVector& b);
// Phase-insensitive overlap |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

StateVector apply_gate(StateVector state, const GateMatrix& g, const std::vector<int>& targets);

// Kronecker product; `a` takes the more significant labels.
StateVector tensor_product(const StateVector& a, const StateVector& b);
Matrix tensor_product(const Matrix& a, const Matrix& b);

struct Measurement {
    int outcome = 0;  // 0 <-> Z eigenvalue +1
    double probability = 0.0;
    StateVector collapsed;
};

Measurement measure_z(const StateVector& state, int q, RandomSource& rng);
Measurement measure_z_forced(const StateVector& state, int q, int outcome);

// Reduced density matrix over `keep` (in the listed order).
Matrix reduced_density(const StateVector& state, const std::vector<int>& keep);

}  // namespace qlab
