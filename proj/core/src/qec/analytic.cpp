#include "qlab/qec/analytic.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include "qlab/core/types.hpp"

namespace qlab {

namespace {

void require_prob(double eps, const char* who) {
    require(eps >= 0.0 && eps <= 1.0, std::string(who) + ": eps must lie in [0,1]");
}

FailureEstimate finish(std::uint64_t failures, std::uint64_t trials) {
    FailureEstimate f;
    f.trials = trials;
    f.failures = failures;
    f.estimate = static_cast<double>(failures) / static_cast<double>(trials);
    f.std_error = std::sqrt(f.estimate * (1.0 - f.estimate) / static_cast<double>(trials));
    return f;
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return std::round(c);
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Wrong value after majority-of-majorities over 3^levels bits drawn from r.
bool concatenated_wrong(int levels, RandomSource& r, double eps) {
    if (levels == 0) return r.bernoulli(eps);
    int wrong = 0;
    for (int c = 0; c < 3; ++c) wrong += concatenated_wrong(levels - 1, r, eps) ? 1 : 0;
    return wrong >= 2;
}

}  // namespace

FailureEstimate classical_majority(double eps, std::uint64_t trials, RandomSource& rng) {
    return sample_repetition(3, eps, trials, rng);
}

double pfail_repetition(int k, double eps) {
    require(k >= 1 && k % 2 == 1, "pfail_repetition: k must be odd and >= 1");
    require_prob(eps, "pfail_repetition");
    double total = 0.0;
    for (int j = (k + 1) / 2; j <= k; ++j) total += binomial(k, j) * std::pow(eps, j) * std::pow(1.0 - eps, k - j);
    return total;
}

FailureEstimate sample_repetition(int k, double eps, std::uint64_t trials, RandomSource& rng) {
    require(k >= 1 && k % 2 == 1, "sample_repetition: k must be odd and >= 1");
    require_prob(eps, "sample_repetition");
    require(trials >= 1, "sample_repetition: trials must be >= 1");
    const RandomSource base = rng.fork(rng());
    std::uint64_t failures = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const RandomSource r = base.fork(t);
        int flips = 0;
        for (int c = 0; c < k; ++c) flips += r.uniform_at(static_cast<std::uint64_t>(c)) < eps ? 1 : 0;
        if (2 * flips > k) ++failures;
    }
    return finish(failures, trials);
}

ConcatenatedFailure pfail_concatenated(int levels, double eps) {
    require(levels >= 0, "pfail_concatenated: levels must be >= 0");
    require_prob(eps, "pfail_concatenated");
    double p = eps;
    for (int l = 0; l < levels; ++l) p = 3.0 * p * p - 2.0 * p * p * p;
    ConcatenatedFailure out;
    out.exact = p;
    out.approximant = kRepetitionThreshold * std::pow(eps / kRepetitionThreshold, std::ldexp(1.0, levels));
    return out;
}

FailureEstimate sample_concatenated(int levels, double eps, std::uint64_t trials, RandomSource& rng) {
    require(levels >= 0 && levels <= 6, "sample_concatenated: levels must lie in [0,6]");
    require_prob(eps, "sample_concatenated");
    require(trials >= 1, "sample_concatenated: trials must be >= 1");
    const RandomSource base = rng.fork(rng());
    std::uint64_t failures = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomSource r = base.fork(t);
        if (concatenated_wrong(levels, r, eps)) ++failures;
    }
    return finish(failures, trials);
}

std::vector<double> repetition_polynomial(int k) {
    require(k >= 1 && k % 2 == 1, "repetition_polynomial: k must be odd and >= 1");
    std::vector<double> out(static_cast<std::size_t>(k + 1), 0.0);
    for (int j = (k + 1) / 2; j <= k; ++j) {
        // C(k,j) eps^j (1 - eps)^(k-j) expanded
        for (int m = 0; m <= k - j; ++m) {
            const double sign = m % 2 == 0 ? 1.0 : -1.0;
            out[static_cast<std::size_t>(j + m)] += binomial(k, j) * binomial(k - j, m) * sign;
        }
    }
    return out;
}

std::vector<double> concatenated_polynomial(int levels) {
    require(levels >= 0 && levels <= 4, "concatenated_polynomial: levels must lie in [0,4]");
    std::vector<double> p{0.0, 1.0};
    for (int l = 0; l < levels; ++l) {
        const std::vector<double> p2 = poly_mul(p, p);
        const std::vector<double> p3 = poly_mul(p2, p);
        std::vector<double> next(p3.size(), 0.0);
        for (std::size_t i = 0; i < p2.size(); ++i) next[i] += 3.0 * p2[i];
        for (std::size_t i = 0; i < p3.size(); ++i) next[i] -= 2.0 * p3[i];
        p = std::move(next);
    }
    return p;
}

double evaluate_polynomial(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

CorrelatedFailure correlated_pfail(int n_qubits, double p, int order_cap) {
    require(n_qubits >= 2 && n_qubits <= 16, "correlated_pfail: N must lie in [2,16]");
    require(order_cap >= 1 && order_cap <= 4, "correlated_pfail: order cap must lie in [1,4]");
    require(p >= 0.0 && p <= 1.0, "correlated_pfail: p must lie in [0,1]");
    std::vector<std::uint32_t> pairs;
    for (int i = 0; i < n_qubits; ++i)
        for (int j = i + 1; j < n_qubits; ++j) pairs.push_back((1u << i) | (1u << j));

    CorrelatedFailure out;
    out.failing_by_order.assign(static_cast<std::size_t>(order_cap + 1), 0);
    // Enumerate j-subsets of distinct pairs; repeated flips cancel through XOR.
    std::function<void(std::size_t, int, std::uint32_t)> walk = [&](std::size_t start, int depth, std::uint32_t flips) {
        if (depth > 0 && 2 * std::popcount(flips) > n_qubits) ++out.failing_by_order[static_cast<std::size_t>(depth)];
        if (depth == order_cap) return;
        for (std::size_t k = start; k < pairs.size(); ++k) walk(k + 1, depth + 1, flips ^ pairs[k]);
    };
    walk(0, 0, 0u);
    for (int j = 1; j <= order_cap; ++j) {
        if (out.failing_by_order[static_cast<std::size_t>(j)] > 0) {
            out.order = j;
            out.coefficient = out.failing_by_order[static_cast<std::size_t>(j)];
            out.leading_term = static_cast<double>(out.coefficient) * std::pow(p, j);
            break;
        }
    }
    return out;
}

}  // namespace qlab
