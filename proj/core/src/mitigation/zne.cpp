#include "qlab/mitigation/zne.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/core/density_matrix.hpp"
#include "qlab/core/gates.hpp"
#include "qlab/core/pauli.hpp"

namespace qlab {

void EstimatorSeries::validate() const {
    require(!scales.empty(), "EstimatorSeries: no scale factors");
    require(scales.size() == estimates.size(), "EstimatorSeries: scale and estimate counts differ");
    for (std::size_t j = 0; j < scales.size(); ++j) {
        require(std::isfinite(scales[j]) && std::isfinite(estimates[j]), "EstimatorSeries: values must be finite");
        if (j > 0) require(scales[j] > scales[j - 1], "EstimatorSeries: scale factors must be strictly increasing");
    }
    require(scales.front() > 0.0, "EstimatorSeries: scale factors must be positive");
    require(n_sample >= 1, "EstimatorSeries: N_sample must be >= 1");
}

std::vector<double> EstimatorSeries::lambdas() const {
    std::vector<double> out;
    for (double c : scales) out.push_back(c * lambda);
    return out;
}

LinearFit zne_linear(const EstimatorSeries& series) {
    series.validate();
    require(series.scales.size() >= 2, "zne_linear: need at least two scale factors");
    const std::vector<double> l = series.lambdas();
    const double n = static_cast<double>(l.size());
    double lbar = 0.0, ebar = 0.0;
    for (std::size_t j = 0; j < l.size(); ++j) {
        lbar += l[j];
        ebar += series.estimates[j];
    }
    lbar /= n;
    ebar /= n;
    double sll = 0.0, sle = 0.0;
    for (std::size_t j = 0; j < l.size(); ++j) {
        sll += (l[j] - lbar) * (l[j] - lbar);
        sle += (l[j] - lbar) * (series.estimates[j] - ebar);
    }
    require(sll > 0.0, "zne_linear: degenerate noise levels (S_ll = 0)");
    LinearFit f;
    f.slope = sle / sll;
    f.intercept = ebar - f.slope * lbar;
    f.variance = series.sigma0 * series.sigma0 / static_cast<double>(series.n_sample) * (1.0 / n + lbar * lbar / sll);
    return f;
}

std::vector<double> richardson_weights(const std::vector<double>& scales) {
    require(!scales.empty(), "richardson_weights: no scale factors");
    std::vector<double> w;
    for (std::size_t j = 0; j < scales.size(); ++j) {
        double g = 1.0;
        for (std::size_t m = 0; m < scales.size(); ++m) {
            if (m == j) continue;
            require(scales[j] != scales[m], "richardson_weights: repeated scale factor");
            g *= scales[m] / (scales[m] - scales[j]);
        }
        w.push_back(g);
    }
    return w;
}

RichardsonFit zne_richardson(const EstimatorSeries& series) {
    series.validate();
    RichardsonFit f;
    f.weights = richardson_weights(series.scales);
    double s2 = 0.0;
    for (std::size_t j = 0; j < f.weights.size(); ++j) {
        f.estimate += f.weights[j] * series.estimates[j];
        s2 += f.weights[j] * f.weights[j];
    }
    f.variance = series.sigma0 * series.sigma0 / static_cast<double>(series.n_sample) * s2;
    return f;
}

EstimatorSeries synthetic_series(const std::function<double(double)>& truth, const std::vector<double>& scales,
                                 double lambda, double sigma0, std::uint64_t n_sample, RandomSource& rng) {
    require(sigma0 >= 0.0 && n_sample >= 1, "synthetic_series: need sigma0 >= 0 and N >= 1");
    EstimatorSeries s;
    s.scales = scales;
    s.lambda = lambda;
    s.sigma0 = sigma0;
    s.n_sample = n_sample;
    const double sd = sigma0 / std::sqrt(static_cast<double>(n_sample));
    for (double c : scales) s.estimates.push_back(truth(c * lambda) + sd * rng.normal());
    s.validate();
    return s;
}

void FoldedDepolarizingBackend::validate() const {
    require(lambda >= 0.0 && lambda <= 1.0, "FoldedDepolarizingBackend: lambda must lie in [0,1]");
    require(depth >= 1, "FoldedDepolarizingBackend: depth must be >= 1");
    require(std::isfinite(theta), "FoldedDepolarizingBackend: theta must be finite");
}

FoldedDepolarizingBackend FoldedDepolarizingBackend::with_noiseless_value(double lambda, int depth, double target) {
    require(target >= -1.0 && target <= 1.0, "FoldedDepolarizingBackend: target must lie in [-1,1]");
    FoldedDepolarizingBackend b{lambda, depth, std::acos(target) / depth};
    b.validate();
    return b;
}

double FoldedDepolarizingBackend::noiseless() const { return std::cos(depth * theta); }

double FoldedDepolarizingBackend::closed_form(int scale) const {
    require(scale >= 1, "FoldedDepolarizingBackend: scale must be a positive integer");
    return std::pow(1.0 - lambda, scale * depth) * noiseless();
}

double FoldedDepolarizingBackend::exact(int scale) const {
    validate();
    require(scale >= 1, "FoldedDepolarizingBackend: scale must be a positive integer");
    const KrausChannel ch = KrausChannel::depolarizing(lambda);
    const Matrix ry = gates::Ry(theta);
    DensityMatrix rho(1);
    for (int k = 0; k < depth; ++k) {
        rho.apply_unitary(ry, {0});
        for (int f = 0; f < scale; ++f) rho.apply_channel(ch, {0});
    }
    return expectation_pauli(rho, PauliString::from_string("Z"));
}

double noise_scaled_execution(const FoldedDepolarizingBackend& backend, double scale, std::uint64_t shots,
                              RandomSource& rng) {
    require(shots >= 1, "noise_scaled_execution: shots must be >= 1");
    require(scale >= 1.0 && std::floor(scale) == scale, "noise_scaled_execution: discrete folding needs an integer scale >= 1");
    const double z = backend.exact(static_cast<int>(scale));
    const double p1 = std::clamp(0.5 * (1.0 - z), 0.0, 1.0);
    const std::uint64_t ones = count_successes(rng.fork(rng()), p1, shots);
    return 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(shots);
}

EstimatorSeries folded_series(const FoldedDepolarizingBackend& backend, const std::vector<double>& scales,
                              std::uint64_t shots, RandomSource& rng) {
    EstimatorSeries s;
    s.scales = scales;
    s.lambda = backend.lambda;
    s.n_sample = shots;
    double var = 0.0;
    for (double c : scales) {
        const double e = noise_scaled_execution(backend, c, shots, rng);
        s.estimates.push_back(e);
        var += 1.0 - e * e;
    }
    s.sigma0 = std::sqrt(std::max(0.0, var / static_cast<double>(scales.size())));
    s.validate();
    return s;
}

}  // namespace qlab
