// noise.hpp - miscalibration, sampling, readout bias and environment noise on
// the single-qubit X^d polarization circuit

#pragma once

#include <array>
#include <vector>

#include "qlab/core/density_matrix.hpp"
#include "qlab/core/random.hpp"

namespace qlab {

struct MiscalibrationModel {
    double epsilon = 0.0;  // over-rotation per X gate, radians

    // X * i Rx(epsilon) = -Rx(pi + epsilon)
    GateMatrix gate() const;
};

struct MeasurementErrorModel {
    double mu = 0.0;  // P(read 1 | true 0)
    double nu = 0.0;  // P(read 0 | true 1)

    void validate() const;
    // Column-stochastic assignment matrix [[1-mu, nu], [mu, 1-nu]].
    Eigen::Matrix2d assignment_matrix() const;
    // p~ = p + mu - (nu + mu) p, applied to P(1).
    double apply(double p) const;
    // Inverse affine map; requires mu + nu != 1.
    double invert(double p_tilde) const;
    // Same map expressed on <Z> = 1 - 2p.
    double apply_to_z(double z) const;
};

struct EnvironmentChannel {
    double p_e = 0.0;
    GateMatrix error_gate;  // empty selects X

    void validate() const;
    GateMatrix error() const;
    KrausChannel channel() const;
};

// How environment errors are correlated across the d gates of a circuit.
//   per_gate:    every gate independently preceded by E with probability p_e
//   per_circuit: with probability p_e every gate of the run is preceded by E,
//                otherwise none is (rho = (1 - p_e)|psi_A><psi_A| + p_e |psi_B><psi_B|)
enum class EnvironmentMode { per_gate, per_circuit };

EnvironmentMode parse_environment_mode(const std::string& s);
const char* to_string(EnvironmentMode m);

struct SamplingPlan {
    std::uint64_t n_shots = 1;
    std::uint64_t seed = 0;
};

// Closed forms for <Z> after d gates starting from |0>.
double z_noiseless_exact(int d);
double z_miscalibrated_exact(double eps, int d);
// X error only. per_gate: (1 - 2 p_e)^d cos(d (pi + eps)), which is (2 p_e - 1)^d
// at eps = 0; per_circuit: (1 - p_e) cos(d (pi + eps)) + p_e cos(d eps).
double z_environment_exact(double p_e, double eps, int d, EnvironmentMode mode);

// Simulated curves for d = 0..d_max.
std::vector<double> z_curve_noiseless(int d_max);
std::vector<double> z_curve_miscalibrated(double eps, int d_max);
// Density-matrix simulation of (E then X~)^d.
std::vector<double> z_curve_environment(const EnvironmentChannel& env, double eps, int d_max, EnvironmentMode mode);
DensityMatrix environment_state(const EnvironmentChannel& env, double eps, int d, EnvironmentMode mode);

// Mean <Z> over stochastic trajectories where the error gate is inserted per shot.
double z_environment_trajectories(const EnvironmentChannel& env, double eps, int d, EnvironmentMode mode,
                                  std::uint64_t shots, RandomSource& rng);

// S = (#ones) / N for N Bernoulli(p_d) readouts.
double sample_polarization(double p_d, const SamplingPlan& plan);
double sample_polarization(double p_d, std::uint64_t n_shots, RandomSource& rng);
// Exact distribution of S: P(S = k / N) for k = 0..N.
std::vector<double> sampling_distribution(double p_d, std::uint64_t n_shots);

// Flip fractions from the |0> and |1> calibration circuits.
MeasurementErrorModel calibrate_measurement(std::uint64_t shots, double true_mu, double true_nu, RandomSource& rng);

struct NoisyPoint {
    int depth = 0;
    double z_exact = 0.0;   // exact density-matrix <Z>
    double p_one = 0.0;     // P(1) feeding the sampler
    double s_sampled = 0.0;
    double z_sampled = 0.0;  // 1 - 2 S
    double z_biased = 0.0;   // 1 - 2 S~ with S~ = S + mu - (nu + mu) S
};

// Full pipeline: environment and miscalibration per gate, sampling with
// plan.n_shots per depth, then readout bias on the sampled mean.
std::vector<NoisyPoint> z_curve_full(double eps, const EnvironmentChannel& env, const MeasurementErrorModel& model,
                                     const SamplingPlan& plan, int d_max, EnvironmentMode mode);

// Kraus set {sqrt(lambda_a) sigma_a}; lambdas must be >= 0 and sum to 1.
KrausChannel pauli_channel(const std::array<double, 4>& lambdas);

}  // namespace qlab
