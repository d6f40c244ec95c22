// pec.hpp - probabilistic error cancellation for single-qubit Pauli channels

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qlab/core/circuit.hpp"
#include "qlab/core/density_matrix.hpp"
#include "qlab/core/random.hpp"

namespace qlab {

// Signed decomposition sum_a q_a sigma_a . sigma_a over the listed Paulis
// (letters 0=I, 1=X, 2=Y, 3=Z).
struct QuasiProbability {
    std::vector<int> paulis;
    std::vector<double> q;
    double gamma = 1.0;          // sum |q_a|
    std::vector<int> signs;      // sign(q_a)
    std::vector<double> probs;   // |q_a| / gamma

    static QuasiProbability from_weights(std::vector<int> paulis, std::vector<double> q);
    void validate(double tol = 1e-12) const;
};

// Inverse of rho -> (1 - p) rho + p X rho X: q = -p / (1 - 2p) on X; p in [0, 1/2).
QuasiProbability pec_invert_bitflip(double p);

// Inverse of the Pauli channel with weights (l0, lx, ly, lz):
//   f_x = 1 - 2(ly + lz), f_y = 1 - 2(lx + lz), f_z = 1 - 2(lx + ly)
//   q_0 = (1 + 1/f_x + 1/f_y + 1/f_z) / 4,  q_x = (1 + 1/f_x - 1/f_y - 1/f_z) / 4, ...
QuasiProbability pec_invert_pauli(const std::array<double, 4>& lambdas);

// Dense application of the signed map sum_a q_a sigma_a rho sigma_a.
Matrix apply_quasi_map(const QuasiProbability& qp, const Matrix& rho);

// Superoperator (column-stacked) of a single-qubit Kraus channel and of a quasi-map.
Matrix channel_superoperator(const KrausChannel& ch);
Matrix quasi_superoperator(const QuasiProbability& qp);

struct PecResult {
    double mitigated = 0.0;
    double mitigated_stderr = 0.0;
    double unmitigated = 0.0;
    double unmitigated_stderr = 0.0;
    double gamma_total = 1.0;  // gamma^(number of noisy locations)
    double noiseless = 0.0;
    std::uint64_t shots = 0;
};

// 1-qubit circuit from |0>; every gate is followed by the Pauli channel. Each
// shot samples the noise Pauli and, for the mitigated run, one correction Pauli
// per location from qp.probs; the Z readout is weighted by gamma_total times
// the product of the sampled signs.
PecResult pec_mitigate(const Circuit& circuit, const std::array<double, 4>& lambdas, std::uint64_t shots,
                       RandomSource& rng);

// Depth-d X^d circuit.
Circuit x_chain(int depth);

}  // namespace qlab
