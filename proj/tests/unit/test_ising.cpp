#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "qlab/ising/anneal.hpp"
#include "qlab/ising/model.hpp"
#include "qlab/ising/optimize.hpp"
#include "qlab/ising/pauli_hamiltonian.hpp"
#include "qlab/ising/qaoa.hpp"
#include "qlab/ising/vqe.hpp"
#include "test_support.hpp"

using namespace qlab;

namespace {

int bit(std::uint64_t z, int n, int i) { return static_cast<int>((z >> (n - 1 - i)) & 1U); }

double subset_cost(std::uint64_t z, const std::vector<long long>& ns, long long m) {
    const int n = static_cast<int>(ns.size());
    double s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<double>(ns[static_cast<std::size_t>(i)]) * bit(z, n, i);
    return (s - static_cast<double>(m)) * (s - static_cast<double>(m));
}

double partition_cost(std::uint64_t z, const std::vector<long long>& ns) {
    const int n = static_cast<int>(ns.size());
    double s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<double>(ns[static_cast<std::size_t>(i)]) * (1 - 2 * bit(z, n, i));
    return s * s;
}

std::uint64_t encode_subset(const std::vector<int>& idx, int n) {
    std::uint64_t z = 0;
    for (int i : idx) z |= std::uint64_t{1} << (n - 1 - i);
    return z;
}

// Two spins with distinct fields and a coupling: unique ground state, open gap.
IsingModel gapped_pair() {
    IsingModel m(2);
    m.set_h(0, 1.0);
    m.set_h(1, 0.5);
    m.set_j(0, 1, 0.5);
    return m;
}

}  // namespace

TEST(Encoding, SubsetSumCostMatchesOracle) {
    RandomSource rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        std::vector<long long> ns;
        for (int i = 0; i < n; ++i) ns.push_back(static_cast<long long>(rng() % 41) - 20);
        const long long m = static_cast<long long>(rng() % 31) - 15;
        const IsingModel model = subset_sum_to_ising(m, ns);
        for (std::uint64_t z = 0; z < (1u << n); ++z) ASSERT_NEAR(model.cost(z), subset_cost(z, ns, m), 1e-9);
        const Eigen::VectorXd diag = PauliHamiltonian::from_ising(model).to_matrix().diagonal().real();
        for (std::uint64_t z = 0; z < (1u << n); ++z) ASSERT_NEAR(diag[static_cast<Eigen::Index>(z)], subset_cost(z, ns, m), 1e-9);
    }
}

TEST(Encoding, PartitionCostMatchesOracle) {
    RandomSource rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<long long> ns;
        for (int i = 0; i < 8; ++i) ns.push_back(1 + static_cast<long long>(rng() % 30));
        const IsingModel model = partition_to_ising(ns);
        double best = 1e300;
        for (std::uint64_t z = 0; z < 256; ++z) {
            ASSERT_NEAR(model.cost(z), partition_cost(z, ns), 1e-9);
            best = std::min(best, partition_cost(z, ns));
        }
        EXPECT_NEAR(brute_force_ground(model).energy, best, 1e-9);
        for (double h : model.h()) EXPECT_EQ(h, 0.0);
    }
}

TEST(Encoding, WorkedSubsetSum) {
    const std::vector<long long> ns = {-5, -3, 1, 4, 9};
    const IsingModel model = subset_sum_to_ising(7, ns);
    const IsingGround g = brute_force_ground(model);
    EXPECT_NEAR(g.energy, 0.0, 1e-9);
    const std::uint64_t want = encode_subset({1, 2, 4}, 5);
    EXPECT_NE(std::find(g.states.begin(), g.states.end(), want), g.states.end());
    for (std::uint64_t z : g.states) {
        double s = 0;
        for (int i : selected_indices(z, 5)) s += static_cast<double>(ns[static_cast<std::size_t>(i)]);
        EXPECT_EQ(s, 7.0);
    }
    EXPECT_NEAR(subset_sum_to_ising(0, {5}).cost(0), 0.0, 1e-12);
}

TEST(Encoding, UnsolvableSubsetSum) {
    const IsingGround g = brute_force_ground(subset_sum_to_ising(13, {-3, 2, 8, 4, 20}));
    EXPECT_GT(g.energy, 0.5);
}

TEST(Encoding, WorkedPartition) {
    const std::vector<long long> ns = {1, 2, 3, 4, 6, 10};
    const IsingGround g = brute_force_ground(partition_to_ising(ns));
    EXPECT_NEAR(g.energy, 0.0, 1e-9);
    const std::uint64_t split = encode_subset({2, 5}, 6);  // {3, 10} on one side
    EXPECT_NE(std::find(g.states.begin(), g.states.end(), split), g.states.end());
    EXPECT_NE(std::find(g.states.begin(), g.states.end(), split ^ 0x3F), g.states.end());
    EXPECT_NEAR(partition_to_ising({4, 4}).cost(0b01), 0.0, 1e-12);
}

TEST(Ground, SmallModels) {
    IsingModel one(1);
    one.set_h(0, 1.0);
    const IsingGround g1 = brute_force_ground(one);
    EXPECT_NEAR(g1.energy, -1.0, 1e-12);
    EXPECT_EQ(g1.states, std::vector<std::uint64_t>{0});

    IsingModel ferro(2);
    ferro.set_j(0, 1, 1.0);
    const IsingGround g2 = brute_force_ground(ferro);
    EXPECT_EQ(g2.states, (std::vector<std::uint64_t>{0, 3}));

    const HamiltonianGround q = brute_force_ground(PauliHamiltonian::from_ising(ferro));
    EXPECT_NEAR(q.energy, -1.0, 1e-12);
    EXPECT_EQ(q.states.size(), 2u);
    EXPECT_THROW(brute_force_ground(IsingModel(21)), PreconditionError);
}

TEST(Model, SerializationRoundTrip) {
    const IsingModel m = subset_sum_to_ising(7, {-5, -3, 1, 4, 9});
    const IsingModel back = IsingModel::parse(m.serialize());
    ASSERT_EQ(back.n(), m.n());
    for (std::uint64_t z = 0; z < 32; ++z) EXPECT_EQ(back.cost(z), m.cost(z));
    EXPECT_THROW(IsingModel::parse("n 2\nJ 0 5 1.0\n"), std::exception);
}

TEST(PauliHamiltonianTest, ParseAndMatrix) {
    const PauliHamiltonian h = PauliHamiltonian::parse("1 XX + 1 YY + 1 ZZ");
    Vector singlet = Vector::Zero(4);
    singlet[1] = 1 / std::sqrt(2.0);
    singlet[2] = -1 / std::sqrt(2.0);
    EXPECT_NEAR(vqe_energy(h, StateVector::from_amplitudes(singlet)), -3.0, 1e-12);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(h.to_matrix());
    EXPECT_NEAR(es.eigenvalues()[0], -3.0, 1e-12);
    EXPECT_NEAR(vqe_energy(PauliHamiltonian::parse("1 Z"), StateVector(1)), 1.0, 1e-15);
    EXPECT_THROW(vqe_energy(h, StateVector(3)), PreconditionError);
}

TEST(Anneal, CommutatorNonzeroWithAnyTerm) {
    EXPECT_GT(driver_cost_commutator(gapped_pair()), 0.1);
    IsingModel field(3);
    field.set_h(2, 0.5);
    EXPECT_GT(driver_cost_commutator(field), 0.1);
    IsingModel coupling(3);
    coupling.set_j(0, 2, -0.2);
    EXPECT_GT(driver_cost_commutator(coupling), 0.1);
    EXPECT_NEAR(driver_cost_commutator(IsingModel(3)), 0.0, 1e-12);
}

TEST(Anneal, ZeroTimeKeepsUniformState) {
    const IsingModel m = partition_to_ising({1, 1, 2});
    Schedule s = Schedule::linear(0.0, 10);
    const AnnealResult r = anneal(m, s);
    const double deg = static_cast<double>(brute_force_ground(m).states.size());
    EXPECT_NEAR(r.p_success, deg / 8.0, 1e-12);
}

TEST(Anneal, AdiabaticLimitOnGappedPair) {
    const IsingModel m = gapped_pair();
    double prev = 0.0;
    for (double tau : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
        const AnnealResult r = anneal(m, Schedule::linear(tau));
        EXPECT_FALSE(r.gap_closed);
        EXPECT_GE(r.p_success, prev - 1e-12) << tau;
        prev = r.p_success;
    }
    EXPECT_GT(prev, 0.99);
}

TEST(Anneal, RepetitionFormula) {
    for (double p : {0.1, 0.5, 0.9}) EXPECT_EQ(repetitions_for_target(p), std::log(0.01) / std::log(1.0 - p));
    EXPECT_THROW(repetitions_for_target(0.0), PreconditionError);
}

TEST(QAOA, GateCircuitMatchesDenseEvolution) {
    RandomSource rng(3);
    const std::vector<IsingModel> models = {gapped_pair(), subset_sum_to_ising(7, {-5, -3, 1, 4, 9}),
                                            partition_to_ising({1, 2, 3, 4})};
    for (const IsingModel& m : models) {
        for (int p = 1; p <= 3; ++p) {
            QaoaParams q;
            for (int k = 0; k < p; ++k) {
                q.gamma.push_back(rng.uniform() * kQaoaGammaMax);
                q.beta.push_back(rng.uniform() * kQaoaBetaMax);
            }
            EXPECT_GE(fidelity(qaoa_state(m, q), qaoa_state_dense(m, q)), 1 - 1e-9);
        }
    }
}

TEST(QAOA, ZeroAnglesGiveUniformAverage) {
    const IsingModel m = subset_sum_to_ising(7, {-5, -3, 1, 4, 9});
    const double avg = m.cost_diagonal().mean();
    EXPECT_NEAR(qaoa_energy(m, QaoaParams{{0.0}, {0.0}}), avg, 1e-9);
    EXPECT_NEAR(avg, m.constant(), 1e-9);
}

TEST(QAOA, OptimizerOnFerromagnet) {
    IsingModel m(2);
    m.set_j(0, 1, 1.0);
    // Grid oracle over (gamma, beta) in [0, pi]^2.
    double grid_best = 1e300;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j)
            grid_best = std::min(grid_best, qaoa_energy(m, QaoaParams{{kPi * i / 200}, {kPi * j / 200}}));
    RandomSource rng(4);
    const QaoaResult r = qaoa_optimize(m, 1, 300, rng);
    EXPECT_LE(r.energy, grid_best + 0.05 * std::abs(brute_force_ground(m).energy));
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);

    RandomSource a(5), b(5);
    const QaoaResult once = qaoa_optimize(m, 1, 1, a);
    RandomSource c(5);
    const double g0 = c.uniform() * kQaoaGammaMax, b0 = c.uniform() * kQaoaBetaMax;
    EXPECT_DOUBLE_EQ(once.best.gamma[0], g0);
    EXPECT_DOUBLE_EQ(once.best.beta[0], b0);
    EXPECT_EQ(once.evaluations, 1u);
    RandomSource d(5);
    EXPECT_EQ(qaoa_optimize(m, 1, 50, b).energy, qaoa_optimize(m, 1, 50, d).energy);
}

TEST(QAOA, TrotterizedAnnealingLimit) {
    const IsingModel m = gapped_pair();
    for (int steps : {50, 200, 800}) {
        const Schedule s = Schedule::linear(4.0, steps);
        const QaoaParams q = annealing_to_qaoa(s);
        const AnnealResult a = anneal(m, s);
        const double dt = 4.0 / steps;
        // First-order splitting error per step is bounded by dt^2 ||[H0, HC]|| / 2.
        const double bound = steps * dt * dt * driver_cost_commutator(m) / 2.0;
        const double dist = std::sqrt(std::max(0.0, 1.0 - fidelity(qaoa_state(m, q), a.final_state)));
        EXPECT_LE(dist, bound) << steps;
    }
}

TEST(QAOA, NestedDepthsDoNotGetWorse) {
    RandomSource rng(6);
    const auto rs = qaoa_optimize_nested(partition_to_ising({1, 2, 3}), 3, 150, rng);
    ASSERT_EQ(rs.size(), 3u);
    for (std::size_t i = 1; i < rs.size(); ++i) EXPECT_LE(rs[i].energy, rs[i - 1].energy + 1e-12);
}

TEST(PatternSearch, FindsQuadraticMinimum) {
    const auto f = [](const std::vector<double>& x) { return (x[0] - 0.3) * (x[0] - 0.3) + 2 * (x[1] + 0.7) * (x[1] + 0.7); };
    const PatternSearchResult r = pattern_search(f, {0.0, 0.0}, {-2, -2}, {2, 2});
    EXPECT_NEAR(r.x[0], 0.3, 1e-3);
    EXPECT_NEAR(r.x[1], -0.7, 1e-3);
    EXPECT_LT(r.f, 1e-6);
    EXPECT_LE(r.evaluations, 500u);
    EXPECT_EQ(r.trace.size(), r.evaluations);
}

TEST(VQE, MinimizesTransverseIsing) {
    const PauliHamiltonian h = PauliHamiltonian::parse("-1 ZZ + -0.5 XI + -0.5 IX");
    RandomSource rng(7);
    const VqeResult r = vqe_minimize(h, 2, 3000, rng);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(h.to_matrix());
    EXPECT_NEAR(r.energy, es.eigenvalues()[0], 1e-3);
    EXPECT_GE(r.energy, es.eigenvalues()[0] - 1e-9);
}
