#include <cmath>

#include <gtest/gtest.h>

#include "qlab/core/gates.hpp"
#include "qlab/noise/noise.hpp"
#include "test_support.hpp"

using namespace qlab;
using qlab::testing::max_diff;

TEST(Noise, NoiselessCurve) {
    const auto z = z_curve_noiseless(40);
    ASSERT_EQ(z.size(), 41u);
    EXPECT_NEAR(z[0], 1.0, 1e-15);
    EXPECT_NEAR(z[1], -1.0, 1e-15);
    for (int d = 0; d <= 40; ++d) EXPECT_NEAR(z[static_cast<std::size_t>(d)], std::cos(d * kPi), 1e-12);
}

TEST(Noise, MiscalibratedClosedForm) {
    const auto z = z_curve_miscalibrated(0.1, 200);
    for (int d = 0; d <= 200; ++d) EXPECT_NEAR(z[static_cast<std::size_t>(d)], std::cos(d * (kPi + 0.1)), 1e-9);
    EXPECT_EQ(z_curve_miscalibrated(0.0, 10), z_curve_noiseless(10));
    // Around d eps = pi the sign is inverted relative to the ideal curve.
    const int d = static_cast<int>(std::round(kPi / 0.1));
    EXPECT_LT(z[static_cast<std::size_t>(d)] * std::cos(d * kPi), -0.99);
}

TEST(Noise, SmallAngleTaylorRemainder) {
    const double diff = std::abs(std::cos(4 * kPi) - std::cos(4 * (kPi + 0.1)));
    const double taylor = 0.5 * 16 * 0.01;
    EXPECT_LT(std::abs(diff - taylor) / taylor, 0.15);
    EXPECT_NEAR(z_miscalibrated_exact(0.1, 4), std::cos(4 * (kPi + 0.1)), 1e-15);
}

TEST(Noise, MiscalibratedGateIsOverRotation) {
    const Matrix g = MiscalibrationModel{0.1}.gate();
    EXPECT_LT(max_diff(g, -gates::Rx(kPi + 0.1)), 1e-12);
}

TEST(Noise, EnvironmentClosedForms) {
    EnvironmentChannel env;
    env.p_e = 0.007;
    const auto gate = z_curve_environment(env, 0.0, 100, EnvironmentMode::per_gate);
    const auto circ = z_curve_environment(env, 0.1, 100, EnvironmentMode::per_circuit);
    const auto gate_eps = z_curve_environment(env, 0.1, 100, EnvironmentMode::per_gate);
    for (int d = 0; d <= 100; ++d) {
        const auto i = static_cast<std::size_t>(d);
        EXPECT_NEAR(gate[i], std::pow(2 * 0.007 - 1, d), 1e-9);
        EXPECT_NEAR(circ[i], (1 - 0.007) * std::cos(d * (kPi + 0.1)) + 0.007 * std::cos(d * 0.1), 1e-9);
        EXPECT_NEAR(gate_eps[i], z_environment_exact(0.007, 0.1, d, EnvironmentMode::per_gate), 1e-9);
    }
}

TEST(Noise, EnvironmentRecursion) {
    EnvironmentChannel env;
    env.p_e = 0.2;
    const auto z = z_curve_environment(env, 0.0, 30, EnvironmentMode::per_gate);
    for (std::size_t d = 0; d < 30; ++d) EXPECT_NEAR(z[d + 1], (2 * 0.2 - 1) * z[d], 1e-12);
}

TEST(Noise, TrajectoriesMatchDensityMatrix) {
    RandomSource rng(1);
    EnvironmentChannel env;
    env.p_e = 0.2;
    for (auto mode : {EnvironmentMode::per_gate, EnvironmentMode::per_circuit}) {
        for (int d : {1, 3, 6}) {
            const double exact = z_environment_exact(0.2, 0.1, d, mode);
            const std::uint64_t shots = 20000;
            const double mean = z_environment_trajectories(env, 0.1, d, mode, shots, rng);
            EXPECT_NEAR(mean, exact, 5.0 / std::sqrt(static_cast<double>(shots)));
        }
    }
}

TEST(Noise, ArbitraryErrorGate) {
    EnvironmentChannel env;
    env.p_e = 0.3;
    env.error_gate = gates::H();
    const DensityMatrix rho = environment_state(env, 0.0, 2, EnvironmentMode::per_gate);
    DensityMatrix want(1);
    const KrausChannel ch = KrausChannel::unitary_mixture(0.3, gates::H());
    for (int k = 0; k < 2; ++k) {
        want.apply_channel(ch, {0});
        want.apply_unitary(gates::X() * (kI * gates::Rx(0.0)), {0});
    }
    EXPECT_LT(max_diff(rho.matrix(), want.matrix()), 1e-12);
    env.error_gate = Matrix::Identity(2, 2) * 2.0;
    EXPECT_THROW(env.validate(), PreconditionError);
}

TEST(Sampling, ExactDistributionForThreeShots) {
    const auto pmf = sampling_distribution(0.5, 3);
    ASSERT_EQ(pmf.size(), 4u);
    const double want[] = {0.125, 0.375, 0.375, 0.125};
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(pmf[static_cast<std::size_t>(k)], want[k], 1e-14);
    RandomSource rng(2);
    for (int i = 0; i < 100; ++i) {
        const double s = sample_polarization(0.5, 3, rng);
        const double k = s * 3;
        EXPECT_NEAR(k, std::round(k), 1e-12);
    }
    EXPECT_EQ(sample_polarization(1.0, 17, rng), 1.0);
    EXPECT_EQ(sample_polarization(0.0, 17, rng), 0.0);
}

TEST(Sampling, MomentsMatchBinomial) {
    RandomSource rng(3);
    const int reps = 10000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < reps; ++i) {
        const double s = sample_polarization(0.2, 100, rng);
        sum += s;
        sum2 += s * s;
    }
    const double mean = sum / reps;
    const double var = sum2 / reps - mean * mean;
    const double want = 0.2 * 0.8 / 100;
    EXPECT_NEAR(mean, 0.2, 5 * std::sqrt(want / reps));
    // Standard error of a sample variance is about var * sqrt(2 / reps).
    EXPECT_NEAR(var, want, 3 * want * std::sqrt(2.0 / reps));
}

TEST(Sampling, PlanIsDeterministic) {
    const SamplingPlan plan{50, 99};
    EXPECT_EQ(sample_polarization(0.3, plan), sample_polarization(0.3, plan));
}

TEST(Readout, AffineMap) {
    const MeasurementErrorModel none{0.0, 0.0};
    EXPECT_EQ(none.apply(0.37), 0.37);
    const MeasurementErrorModel m{0.03, 0.07};
    EXPECT_NEAR(m.apply(0.0), 0.03, 1e-15);
    EXPECT_NEAR(m.apply(1.0), 0.93, 1e-15);
    EXPECT_NEAR(m.apply(0.5), 0.48, 1e-15);
    for (double p : {0.0, 0.2, 0.5, 0.9}) {
        EXPECT_NEAR(m.apply(p) - p, m.mu - (m.nu + m.mu) * p, 1e-15);
        EXPECT_NEAR(m.invert(m.apply(p)), p, 1e-14);
        EXPECT_NEAR(m.apply_to_z(1 - 2 * p), 1 - 2 * m.apply(p), 1e-14);
    }
    const Eigen::Vector2d pr = m.assignment_matrix() * Eigen::Vector2d(0.6, 0.4);
    EXPECT_NEAR(pr[1], m.apply(0.4), 1e-15);
    EXPECT_THROW((MeasurementErrorModel{0.5, 0.5}.invert(0.3)), PreconditionError);
    EXPECT_THROW((MeasurementErrorModel{-0.1, 0.0}.validate()), PreconditionError);
}

TEST(Readout, Calibration) {
    RandomSource rng(4);
    EXPECT_EQ(calibrate_measurement(1000, 0.0, 0.05, rng).mu, 0.0);
    int inside = 0;
    for (int i = 0; i < 100; ++i) {
        const MeasurementErrorModel est = calibrate_measurement(100000, 0.03, 0.07, rng);
        inside += std::abs(est.mu - 0.03) < 0.003;
    }
    EXPECT_GE(inside, 99);
}

TEST(FullPipeline, LimitsAndEnvelope) {
    EnvironmentChannel clean;
    const auto ideal = z_curve_full(0.0, clean, {0.0, 0.0}, SamplingPlan{1, 1}, 20, EnvironmentMode::per_gate);
    for (const NoisyPoint& p : ideal) {
        EXPECT_NEAR(p.z_exact, std::cos(p.depth * kPi), 1e-12);
        EXPECT_NEAR(p.z_sampled, p.z_exact, 1e-12);  // deterministic readouts
    }

    EnvironmentChannel env;
    env.p_e = 0.007;
    const MeasurementErrorModel m{0.03, 0.07};
    const auto pts = z_curve_full(0.1, env, m, SamplingPlan{10, 7}, 80, EnvironmentMode::per_gate);
    ASSERT_EQ(pts.size(), 81u);
    for (const NoisyPoint& p : pts) {
        EXPECT_LE(std::abs(p.z_exact), std::pow(1 - 2 * 0.007, p.depth) + 1e-12);
        EXPECT_NEAR(p.z_biased, 1 - 2 * m.apply(p.s_sampled), 1e-15);
        const double k = p.s_sampled * 10;
        EXPECT_NEAR(k, std::round(k), 1e-12);
        EXPECT_LE(std::abs(p.z_biased), 1.0 + 1e-12);
    }
    const auto again = z_curve_full(0.1, env, m, SamplingPlan{10, 7}, 80, EnvironmentMode::per_gate);
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(pts[i].z_sampled, again[i].z_sampled);
}

TEST(PauliChannel, Examples) {
    RandomSource rng(5);
    const Matrix rho = qlab::testing::random_density(2, rng);
    const DensityMatrix r = DensityMatrix::from_matrix(rho);
    EXPECT_LT(max_diff(apply_kraus(r, pauli_channel({1, 0, 0, 0})).matrix(), rho), 1e-14);
    EXPECT_LT(max_diff(apply_kraus(r, pauli_channel({0.7, 0.3, 0, 0})).matrix(),
                       apply_kraus(r, KrausChannel::bit_flip(0.3)).matrix()),
              1e-14);
    EXPECT_LT(max_diff(apply_kraus(r, pauli_channel({0.25, 0.25, 0.25, 0.25})).matrix(), Matrix::Identity(2, 2) / 2.0),
              1e-14);
    EXPECT_THROW(pauli_channel({0.5, 0.6, 0, 0}), PreconditionError);
    EXPECT_THROW(pauli_channel({1.2, -0.2, 0, 0}), PreconditionError);
}

TEST(PauliChannel, PreservesTraceAndPositivity) {
    RandomSource rng(6);
    for (int i = 0; i < 100; ++i) {
        std::array<double, 4> l{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()};
        const double s = l[0] + l[1] + l[2] + l[3];
        for (double& v : l) v /= s;
        l[0] = 1.0 - l[1] - l[2] - l[3];
        const DensityMatrix out = apply_kraus(DensityMatrix::random(1, rng), pauli_channel(l));
        EXPECT_TRUE(out.is_valid());
    }
}
