// anneal.hpp - exact simulation of H(t) = (1 - s) H_0 + s H_C

#pragma once

#include <functional>

#include "qlab/core/state_vector.hpp"
#include "qlab/ising/model.hpp"

namespace qlab {

struct Schedule {
    double tau = 1.0;
    std::function<double(double)> s;  // on [0, 1] in units of t / tau
    int steps = 0;                    // 0 selects ceil(1000 * tau)

    static Schedule linear(double tau, int steps = 0);
    int resolved_steps() const;
    // s(0) = 0, s(1) = 1 and non-decreasing on the step grid.
    void validate() const;
};

struct AnnealResult {
    StateVector final_state;
    double p_success = 0.0;  // summed over the degenerate ground manifold
    double min_gap = 0.0;    // min over step midpoints of E_1 - E_0
    bool gap_closed = false; // instantaneous ground state degenerate somewhere
    double trotter_error_estimate = 0.0;
    std::vector<double> gaps;  // per-step gap samples
};

// Starts from |+>^n, the ground state of H_0 = -sum X_i, and applies exact
// exponentials of H at each step midpoint.
AnnealResult anneal(const IsingModel& model, const Schedule& schedule);

// Repetitions m with 1 - (1 - p)^m = target.
double repetitions_for_target(double p, double target = 0.99);

// Dense H(s) for inspection and tests.
Matrix annealing_hamiltonian(const IsingModel& model, double s);

// ||[H_0, H_C]||; nonzero whenever the model has a field or coupling.
double driver_cost_commutator(const IsingModel& model);

}  // namespace qlab
