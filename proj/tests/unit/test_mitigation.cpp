#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "qlab/core/gates.hpp"
#include "qlab/core/pauli.hpp"
#include "qlab/mitigation/dd.hpp"
#include "qlab/mitigation/pec.hpp"
#include "qlab/mitigation/zne.hpp"
#include "qlab/noise/noise.hpp"
#include "test_support.hpp"

using namespace qlab;
using qlab::testing::max_diff;

namespace {

BathSpec three_modes(double beta = 2.0) {
    BathSpec b;
    b.modes = {{0.10, 0.8}, {0.08, 1.0}, {0.12, 1.3}};
    b.beta = beta;
    return b;
}

// Ordinary least squares intercept of y against x.
double ols_intercept(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return my - sxy / sxx * mx;
}

// Eigenvalue of a Pauli channel on sigma_b: sum_a lambda_a (+1 if a, b commute, else -1).
double pauli_eigenvalue(const std::vector<int>& paulis, const std::vector<double>& w, int b) {
    double f = 0;
    for (std::size_t i = 0; i < paulis.size(); ++i) {
        const int a = paulis[i];
        const bool commute = a == 0 || b == 0 || a == b;
        f += (commute ? 1.0 : -1.0) * w[i];
    }
    return f;
}

}  // namespace

TEST(DynamicalDecoupling, XiExamples) {
    EXPECT_EQ(dd_xi(0.3, 1.0, 0.0), cplx(0.0));
    EXPECT_NEAR(std::abs(dd_xi(0.3, 1.0, kPi) - cplx(1.2, 0.0)), 0, 1e-14);
    EXPECT_NEAR(std::abs(dd_xi(0.3, 2.0, 2 * kPi)), 0, 1e-14);
    const cplx x = dd_xi(0.1, 0.8, 1.7);
    EXPECT_NEAR(std::abs(x - (0.2 / 0.8) * (1.0 - std::polar(1.0, 0.8 * 1.7))), 0, 1e-15);
}

TEST(DynamicalDecoupling, FreeDecay) {
    const BathSpec bath = three_modes();
    EXPECT_EQ(gamma_free(bath, 2.0, 2.0), 0.0);
    for (double t = 0; t < 20; t += 0.37) {
        EXPECT_GE(gamma_free(bath, 0.0, t), 0.0);
        double want = 0;
        for (const BathMode& m : bath.modes)
            want += 4 * m.g * m.g / (m.omega * m.omega) * (1 - std::cos(m.omega * t)) / std::tanh(bath.beta * m.omega / 2);
        EXPECT_NEAR(gamma_free(bath, 0.0, t), want, 1e-13);
        EXPECT_NEAR(gamma_free(bath, 1.0, 1.0 + t), gamma_free(bath, 0.0, t), 1e-13);
    }
    double prev = 0;
    for (double beta : {10.0, 5.0, 2.0, 1.0, 0.5, 0.1}) {
        const double g = gamma_free(three_modes(beta), 0.0, 3.0);
        EXPECT_GT(g, prev);
        prev = g;
    }
}

TEST(DynamicalDecoupling, GeometricSum) {
    for (int n : {1, 2, 3, 7, 16}) {
        for (double x : {0.0, 1e-10, 0.3, kPi / 2, kPi - 1e-9, kPi, 2 * kPi, 4.1}) {
            cplx direct = 0;
            for (int k = 0; k < n; ++k) direct += std::polar(1.0, 2 * x * k);
            EXPECT_NEAR(std::abs(dd_geometric(n, x) - direct), 0, 1e-7 * n) << n << " " << x;
        }
    }
}

TEST(DynamicalDecoupling, EtaSingleCycle) {
    const double g = 0.1, w = 0.9, dt = 0.7;
    const cplx e = 1.0 - std::polar(1.0, w * dt);
    EXPECT_NEAR(std::abs(dd_eta(g, w, dt, 1) - (2 * g / w) * e * e), 0, 1e-15);
    const cplx f = dd_f(w, dt, 4);
    EXPECT_NEAR(std::abs(dd_eta(g, w, dt, 4) - dd_xi(g, w, 8 * dt) * (1.0 - f)), 0, 1e-13);
}

TEST(DynamicalDecoupling, PulsedDecayShrinks) {
    const BathSpec bath = three_modes();
    const double total = 10.0;
    const double free = gamma_free(bath, 0.0, total);
    double prev = std::numeric_limits<double>::infinity();
    double dt = 1.0;
    for (int h = 0; h < 8; ++h, dt /= 2) {
        PulseSequence seq{0.0, dt, static_cast<int>(std::lround(total / (2 * dt)))};
        const double g = gamma_pulsed(bath, seq);
        EXPECT_GE(g, 0.0);
        EXPECT_LT(g, prev);
        EXPECT_NEAR(gamma_pulsed_at(bath, dt, total), g, 1e-10 + 1e-8 * g);
        prev = g;
    }
    EXPECT_LT(prev, 1e-3 * free);
}

TEST(DynamicalDecoupling, FockOracle) {
    const BathSpec bath = three_modes();
    std::vector<double> times;
    for (double t = 0; t <= 12.0; t += 0.5) times.push_back(t);
    const auto exact = fock_coherence(bath, 8, times);
    const auto env = coherence_trace(bath, 0.0, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        EXPECT_NEAR(env[i], std::exp(-gamma_free(bath, 0.0, times[i])), 1e-14);
        EXPECT_NEAR(exact[i], env[i], 0.02 * env[i]) << times[i];
    }
}

TEST(DynamicalDecoupling, BathSpecText) {
    const BathSpec b = BathSpec::parse("# bath\nbeta 3\nmode 0.1 0.8\nmode 0.2 1.5\n");
    ASSERT_EQ(b.modes.size(), 2u);
    EXPECT_EQ(b.beta, 3.0);
    const BathSpec again = BathSpec::parse(b.serialize());
    EXPECT_EQ(again.modes[1].g, 0.2);
    EXPECT_EQ(again.modes[1].omega, 1.5);
    EXPECT_THROW(BathSpec::parse("mode 0.1 -1\n"), PreconditionError);
    EXPECT_THROW(BathSpec::parse("beta 0\nmode 0.1 1\n"), PreconditionError);
    const BathSpec ohmic = BathSpec::parse("beta 1\nohmic 0.05 1.0 8.0 64\n");
    EXPECT_EQ(ohmic.modes.size(), 64u);
}

TEST(Zne, RichardsonWeights) {
    for (const std::vector<double>& c : {std::vector<double>{1, 2}, {1, 2, 3}, {1, 1.5, 2, 3.5}, {1, 3, 5, 7, 9}}) {
        const auto g = richardson_weights(c);
        double sum = 0;
        for (double w : g) sum += w;
        EXPECT_NEAR(sum, 1.0, 1e-10);
        for (std::size_t k = 1; k < c.size(); ++k) {
            double m = 0;
            for (std::size_t j = 0; j < c.size(); ++j) m += g[j] * std::pow(c[j], static_cast<double>(k));
            EXPECT_NEAR(m, 0.0, 1e-10) << k;
        }
    }
    const auto g3 = richardson_weights({1, 2, 3});
    EXPECT_NEAR(g3[0], 3, 1e-12);
    EXPECT_NEAR(g3[1], -3, 1e-12);
    EXPECT_NEAR(g3[2], 1, 1e-12);
}

TEST(Zne, ExactOnPolynomials) {
    RandomSource rng(1);
    const auto line = [](double l) { return 0.8 - 3.0 * l; };
    const EstimatorSeries s = synthetic_series(line, {1, 2, 3}, 0.01, 0.0, 100, rng);
    EXPECT_NEAR(zne_linear(s).intercept, 0.8, 1e-12);
    EXPECT_NEAR(zne_linear(s).slope, -3.0, 1e-10);
    const auto cubic = [](double l) { return 0.8 - 3.0 * l + 5 * l * l - 7 * l * l * l; };
    const EstimatorSeries c = synthetic_series(cubic, {1, 2, 3, 4}, 0.02, 0.0, 100, rng);
    EXPECT_NEAR(zne_richardson(c).estimate, 0.8, 1e-12);
    EXPECT_THROW(zne_linear(synthetic_series(line, {2, 1}, 0.01, 0, 1, rng)), PreconditionError);
}

TEST(Zne, VarianceFormulasAndMse) {
    RandomSource rng(2);
    const std::vector<double> scales{1, 2, 3};
    const double lambda = 0.05, sigma0 = 0.9;
    const std::uint64_t n = 1000;
    const auto truth = [](double l) { return 0.6 * std::exp(-2.0 * l); };
    const int reps = 4000;
    double sl = 0, sl2 = 0, sr = 0, sr2 = 0, mse = 0;
    LinearFit lf;
    RichardsonFit rf;
    for (int r = 0; r < reps; ++r) {
        const EstimatorSeries s = synthetic_series(truth, scales, lambda, sigma0, n, rng);
        lf = zne_linear(s);
        rf = zne_richardson(s);
        sl += lf.intercept;
        sl2 += lf.intercept * lf.intercept;
        sr += rf.estimate;
        sr2 += rf.estimate * rf.estimate;
        mse += (lf.intercept - 0.6) * (lf.intercept - 0.6);
    }
    const double ml = sl / reps, vl = sl2 / reps - ml * ml;
    const double mr = sr / reps, vr = sr2 / reps - mr * mr;
    EXPECT_NEAR(vl, lf.variance, 0.1 * lf.variance);
    EXPECT_NEAR(vr, rf.variance, 0.1 * rf.variance);
    double wsum = 0;
    for (double w : rf.weights) wsum += w * w;
    EXPECT_NEAR(rf.variance, sigma0 * sigma0 / n * wsum, 1e-15);

    std::vector<double> x, y;
    for (double c : scales) {
        x.push_back(c * lambda);
        y.push_back(truth(c * lambda));
    }
    const double bias = ols_intercept(x, y) - 0.6;
    EXPECT_NEAR(ml - 0.6, bias, 5 * std::sqrt(lf.variance / reps));
    EXPECT_NEAR(mse / reps, bias * bias + lf.variance, 0.1 * (bias * bias + lf.variance));
}

TEST(Zne, FoldedBackend) {
    const FoldedDepolarizingBackend b = FoldedDepolarizingBackend::with_noiseless_value(0.005, 10, 0.6);
    EXPECT_NEAR(b.noiseless(), 0.6, 1e-12);
    for (int c = 1; c <= 4; ++c) EXPECT_NEAR(b.exact(c), b.closed_form(c), 1e-12);
    EXPECT_NEAR(b.closed_form(2), std::pow(0.995, 20) * 0.6, 1e-12);
    RandomSource rng(3);
    EXPECT_THROW(noise_scaled_execution(b, 1.5, 10, rng), PreconditionError);
    EXPECT_THROW(noise_scaled_execution(b, 0.0, 10, rng), PreconditionError);
    const EstimatorSeries s = folded_series(b, {1, 2, 3}, 100000, rng);
    const LinearFit lf = zne_linear(s);
    const RichardsonFit rf = zne_richardson(s);
    EXPECT_NEAR(lf.intercept, 0.6, 3 * std::sqrt(lf.variance));
    EXPECT_NEAR(rf.estimate, 0.6, 3 * std::sqrt(rf.variance));
    EXPECT_LT(std::abs(rf.estimate - 0.6), std::abs(s.estimates[0] - 0.6) + 3 * std::sqrt(rf.variance));
}

TEST(Pec, BitflipInverse) {
    for (double p : {0.0, 0.05, 0.2, 0.4}) {
        const QuasiProbability q = pec_invert_bitflip(p);
        ASSERT_EQ(q.paulis, (std::vector<int>{0, 1}));
        EXPECT_NEAR(q.q[1], -p / (1 - 2 * p), 1e-15);
        // Composition with the channel is the identity map.
        EXPECT_NEAR((1 - p) * q.q[0] + p * q.q[1], 1.0, 1e-12);
        EXPECT_NEAR(p * q.q[0] + (1 - p) * q.q[1], 0.0, 1e-12);
        EXPECT_NEAR(q.gamma, std::abs(q.q[0]) + std::abs(q.q[1]), 1e-15);
        EXPECT_NEAR(q.gamma, 1 / (1 - 2 * p), 1e-12);
    }
    EXPECT_THROW(pec_invert_bitflip(0.5), PreconditionError);
}

TEST(Pec, PauliInverseSatisfiesLinearSystem) {
    RandomSource rng(4);
    for (int i = 0; i < 50; ++i) {
        std::array<double, 4> l{};
        l[1] = 0.15 * rng.uniform();
        l[2] = 0.15 * rng.uniform();
        l[3] = 0.15 * rng.uniform();
        l[0] = 1 - l[1] - l[2] - l[3];
        const QuasiProbability q = pec_invert_pauli(l);
        const std::vector<double> lw(l.begin(), l.end());
        for (int b = 0; b < 4; ++b)
            EXPECT_NEAR(pauli_eigenvalue({0, 1, 2, 3}, lw, b) * pauli_eigenvalue(q.paulis, q.q, b), 1.0, 1e-12);
        double s = 0;
        for (double v : q.q) s += v;
        EXPECT_NEAR(s, 1.0, 1e-12);

        const Matrix id = quasi_superoperator(q) * channel_superoperator(pauli_channel(l));
        EXPECT_LT(max_diff(id, Matrix::Identity(4, 4)), 1e-12);
        const DensityMatrix rho = DensityMatrix::random(1, rng);
        const Matrix back = apply_quasi_map(q, apply_kraus(rho, pauli_channel(l)).matrix());
        EXPECT_LT(max_diff(back, rho.matrix()), 1e-12);
    }
    EXPECT_THROW(pec_invert_pauli({0.5, 0.0, 0.25, 0.25}), PreconditionError);
}

TEST(Pec, MitigatedEstimatorIsUnbiased) {
    RandomSource rng(5);
    const std::array<double, 4> l{0.8, 0.2, 0.0, 0.0};
    const PecResult r = pec_mitigate(x_chain(4), l, 100000, rng);
    EXPECT_NEAR(r.noiseless, 1.0, 1e-12);
    EXPECT_NEAR(r.unmitigated, std::pow(0.6, 4), 5 * r.unmitigated_stderr);
    EXPECT_NEAR(r.mitigated, r.noiseless, 5 * r.mitigated_stderr);
    const double gamma = pec_invert_pauli(l).gamma;
    EXPECT_NEAR(r.gamma_total, std::pow(gamma, 4), 1e-9);
    const double inflation = std::pow(r.mitigated_stderr / r.unmitigated_stderr, 2);
    const double g2 = r.gamma_total * r.gamma_total;
    EXPECT_GE(inflation, 0.5 * g2);
    EXPECT_LE(inflation, 2 * g2);

    const std::array<double, 4> dep{0.91, 0.03, 0.03, 0.03};
    Circuit c(1);
    c.add(gates::H(), {0}, "H");
    c.add(gates::S(), {0}, "S");
    c.add(gates::H(), {0}, "H");
    const PecResult d = pec_mitigate(c, dep, 100000, rng);
    EXPECT_NEAR(d.mitigated, d.noiseless, 5 * d.mitigated_stderr);
}
