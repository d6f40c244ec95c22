// circuit.hpp - ordered gate lists

#pragma once

#include <string>
#include <vector>

#include "qlab/core/density_matrix.hpp"
#include "qlab/core/state_vector.hpp"

namespace qlab {

struct Operation {
    GateMatrix gate;
    std::vector<int> targets;
    std::vector<int> controls;
    std::string name;
};

class Circuit {
public:
    explicit Circuit(int n_qubits) : n_(n_qubits) {}

    int n_qubits() const { return n_; }
    const std::vector<Operation>& ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }

    Circuit& add(const GateMatrix& g, const std::vector<int>& targets, std::string name = "U");
    Circuit& add_controlled(const GateMatrix& g, const std::vector<int>& controls, const std::vector<int>& targets,
                            std::string name = "CU");
    Circuit& append(const Circuit& other);

    void apply(StateVector& psi) const;
    void apply(DensityMatrix& rho) const;
    StateVector run(StateVector psi) const;

    // Dagger of every gate in reverse order.
    Circuit inverse() const;
    // Dense unitary of the whole circuit (n <= 12).
    Matrix unitary() const;

private:
    int n_;
    std::vector<Operation> ops_;
};

}  // namespace qlab
