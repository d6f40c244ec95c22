// analytic.hpp - failure probabilities of repetition codes, concatenation and
// correlated pair noise

#pragma once

#include <cstdint>
#include <vector>

#include "qlab/core/random.hpp"

namespace qlab {

struct FailureEstimate {
    double estimate = 0.0;
    double std_error = 0.0;  // binomial standard error of the estimate
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
};

// Three-copy majority vote over a channel flipping each copy with probability eps.
FailureEstimate classical_majority(double eps, std::uint64_t trials, RandomSource& rng);

// sum_{j >= (k+1)/2} C(k, j) eps^j (1 - eps)^(k-j); k odd and >= 1.
double pfail_repetition(int k, double eps);
// Majority vote over k copies, sampled.
FailureEstimate sample_repetition(int k, double eps, std::uint64_t trials, RandomSource& rng);

struct ConcatenatedFailure {
    double exact = 0.0;        // P <- 3 P^2 - 2 P^3 applied `levels` times
    double approximant = 0.0;  // p_th (eps / p_th)^(2^levels)
};

inline constexpr double kRepetitionThreshold = 1.0 / 3.0;

ConcatenatedFailure pfail_concatenated(int levels, double eps);
// Majority of majorities over 3^levels physical bits, sampled.
FailureEstimate sample_concatenated(int levels, double eps, std::uint64_t trials, RandomSource& rng);

// Probability polynomial coefficients (index = power of eps), exact integers.
std::vector<double> repetition_polynomial(int k);
std::vector<double> concatenated_polynomial(int levels);
double evaluate_polynomial(const std::vector<double>& coeffs, double x);

// Correlated noise that flips a pair of distinct qubits per event. Every set
// of j distinct pairs is one configuration weighted p^j; a configuration fails
// when majority decoding of the XOR of its flips is wrong.
struct CorrelatedFailure {
    int order = 0;                  // smallest j with a failing configuration, 0 if none up to the cap
    std::uint64_t coefficient = 0;  // number of failing configurations at that order
    std::vector<std::uint64_t> failing_by_order;  // index j = 0..order_cap
    double leading_term = 0.0;                    // coefficient * p^order
};

CorrelatedFailure correlated_pfail(int n_qubits, double p, int order_cap = 3);

}  // namespace qlab
