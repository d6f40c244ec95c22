// qaoa.hpp - alternating cost/mixer variational circuits

#pragma once

#include <vector>

#include "qlab/core/circuit.hpp"
#include "qlab/core/random.hpp"
#include "qlab/ising/anneal.hpp"
#include "qlab/ising/model.hpp"

namespace qlab {

struct QaoaParams {
    std::vector<double> gamma;
    std::vector<double> beta;

    int p() const { return static_cast<int>(gamma.size()); }
    void validate() const;
    // Appends zero-angle layers (identity) up to depth p.
    QaoaParams padded(int p) const;
};

// Angle domain searched by the optimizer: gamma in [0, 2 pi), beta in [0, pi).
inline constexpr double kQaoaGammaMax = 2.0 * kPi;
inline constexpr double kQaoaBetaMax = kPi;

// H^n, then per layer Rz(-2 gamma h_i), CNOT-Rz(-2 gamma J_ij)-CNOT, Rx(-2 beta).
Circuit qaoa_circuit(const IsingModel& model, const QaoaParams& params);
StateVector qaoa_state(const IsingModel& model, const QaoaParams& params);
// Same state from dense exponentials of H_C and H_M = -sum X_i.
StateVector qaoa_state_dense(const IsingModel& model, const QaoaParams& params);

// E_p = sum_z P_z C(z), offset included.
double qaoa_energy(const IsingModel& model, const QaoaParams& params);

struct QaoaResult {
    QaoaParams best;
    double energy = 0.0;
    std::vector<double> trace;  // best-so-far per evaluation
    std::uint64_t evaluations = 0;
};

// Pattern search from `init` (random in the angle domain when empty).
QaoaResult qaoa_optimize(const IsingModel& model, int p, std::uint64_t budget, RandomSource& rng,
                         const QaoaParams& init = {});
// Runs p = 1..p_max, seeding each depth with the previous optimum padded by a
// zero layer, so E_best is non-increasing in p.
std::vector<QaoaResult> qaoa_optimize_nested(const IsingModel& model, int p_max, std::uint64_t budget_per_depth,
                                             RandomSource& rng);

// First-order Trotterization of an annealing schedule: gamma_k = s_k dt,
// beta_k = (1 - s_k) dt with s_k sampled at step midpoints.
QaoaParams annealing_to_qaoa(const Schedule& schedule);

}  // namespace qlab
