#include "qlab/core/circuit.hpp"

#include "qlab/core/gates.hpp"

namespace qlab {

Circuit& Circuit::add(const GateMatrix& g, const std::vector<int>& targets, std::string name) {
    return add_controlled(g, {}, targets, std::move(name));
}

Circuit& Circuit::add_controlled(const GateMatrix& g, const std::vector<int>& controls, const std::vector<int>& targets,
                                 std::string name) {
    require(log2_dim(g.rows()) == static_cast<int>(targets.size()), "Circuit: gate arity does not match targets");
    for (int q : targets) require(q >= 0 && q < n_, "Circuit: target out of range");
    for (int q : controls) require(q >= 0 && q < n_, "Circuit: control out of range");
    ops_.push_back(Operation{g, targets, controls, std::move(name)});
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    require(other.n_ == n_, "Circuit::append: register size mismatch");
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    return *this;
}

void Circuit::apply(StateVector& psi) const {
    require(psi.n_qubits() == n_, "Circuit::apply: register size mismatch");
    for (const Operation& op : ops_) psi.apply_controlled(op.gate, op.controls, op.targets);
}

void Circuit::apply(DensityMatrix& rho) const {
    require(rho.n_qubits() == n_, "Circuit::apply: register size mismatch");
    for (const Operation& op : ops_) {
        if (op.controls.empty()) {
            rho.apply_unitary(op.gate, op.targets);
            continue;
        }
        Matrix g = op.gate;
        for (std::size_t c = 0; c < op.controls.size(); ++c) g = controlled(g);
        std::vector<int> qs = op.controls;
        qs.insert(qs.end(), op.targets.begin(), op.targets.end());
        rho.apply_unitary(g, qs);
    }
}

StateVector Circuit::run(StateVector psi) const {
    apply(psi);
    return psi;
}

Circuit Circuit::inverse() const {
    Circuit inv(n_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it)
        inv.ops_.push_back(Operation{it->gate.adjoint(), it->targets, it->controls, it->name + "^dag"});
    return inv;
}

Matrix Circuit::unitary() const {
    require(n_ <= 12, "Circuit::unitary: register too large");
    const Eigen::Index d = Eigen::Index{1} << n_;
    Matrix u(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        StateVector col = StateVector::basis(n_, static_cast<std::uint64_t>(c));
        apply(col);
        u.col(c) = col.amplitudes();
    }
    return u;
}

}  // namespace qlab
