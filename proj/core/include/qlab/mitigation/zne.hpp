// zne.hpp - zero-noise extrapolation: linear least squares and Richardson
// extrapolation over noise-scaled runs

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qlab/core/random.hpp"

namespace qlab {

struct EstimatorSeries {
    std::vector<double> scales;     // c_j, strictly increasing, c_0 >= 1
    std::vector<double> estimates;  // E~(c_j lambda)
    double lambda = 1.0;            // base noise strength
    std::uint64_t n_sample = 1;     // shots per point
    double sigma0 = 0.0;            // single-shot standard deviation

    void validate() const;
    std::vector<double> lambdas() const;
};

struct LinearFit {
    double intercept = 0.0;  // E~_linear(0)
    double slope = 0.0;
    double variance = 0.0;   // (sigma0^2 / N)(1 / N_cir + lambda_bar^2 / S_ll)
};

LinearFit zne_linear(const EstimatorSeries& series);

// Lagrange weights at zero: gamma_j = prod_{m != j} c_m / (c_m - c_j)
std::vector<double> richardson_weights(const std::vector<double>& scales);

struct RichardsonFit {
    double estimate = 0.0;
    double variance = 0.0;  // (sigma0^2 / N) sum gamma_j^2
    std::vector<double> weights;
};

RichardsonFit zne_richardson(const EstimatorSeries& series);

// E~_j = E(c_j lambda) + N(0, sigma0^2 / N) for a known truth E.
EstimatorSeries synthetic_series(const std::function<double(double)>& truth, const std::vector<double>& scales,
                                 double lambda, double sigma0, std::uint64_t n_sample, RandomSource& rng);

// Single-qubit circuit of `depth` Ry(theta) layers, each followed by the
// depolarizing channel of strength lambda applied c times (discrete folding).
struct FoldedDepolarizingBackend {
    double lambda = 0.005;
    int depth = 10;
    double theta = 0.0;

    void validate() const;
    // Picks theta so that the noiseless <Z> equals `target`.
    static FoldedDepolarizingBackend with_noiseless_value(double lambda, int depth, double target);

    double noiseless() const;                    // cos(depth theta)
    double closed_form(int scale) const;         // (1 - lambda)^(c d) cos(d theta)
    double exact(int scale) const;               // density-matrix simulation
};

// Sampled <Z> at integer scale factor c (non-integer scales are rejected).
double noise_scaled_execution(const FoldedDepolarizingBackend& backend, double scale, std::uint64_t shots,
                              RandomSource& rng);

// Runs the backend at every scale and packages the series (sigma0 from the
// mean sampled single-shot variance).
EstimatorSeries folded_series(const FoldedDepolarizingBackend& backend, const std::vector<double>& scales,
                              std::uint64_t shots, RandomSource& rng);

}  // namespace qlab
