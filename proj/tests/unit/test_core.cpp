#include <cmath>

#include <gtest/gtest.h>

#include "qlab/core/circuit.hpp"
#include "qlab/core/density_matrix.hpp"
#include "qlab/core/gates.hpp"
#include "qlab/core/pauli.hpp"
#include "qlab/core/qft.hpp"
#include "qlab/core/state_vector.hpp"
#include "test_support.hpp"

using namespace qlab;
using qlab::testing::kron;
using qlab::testing::max_diff;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST(Gates, PrintedSingleQubitMatrices) {
    EXPECT_LT(max_diff(gates::X(), mat2(0, 1, 1, 0)), 1e-12);
    EXPECT_LT(max_diff(gates::Y(), mat2(0, -kI, kI, 0)), 1e-12);
    EXPECT_LT(max_diff(gates::Z(), mat2(1, 0, 0, -1)), 1e-12);
    EXPECT_LT(max_diff(gates::H(), mat2(r2, r2, r2, -r2)), 1e-12);
    EXPECT_LT(max_diff(gates::S(), mat2(1, 0, 0, kI)), 1e-12);
    EXPECT_LT(max_diff(gates::T(), mat2(1, 0, 0, cplx(r2, r2))), 1e-12);
}

TEST(Gates, RotationMatrices) {
    for (double th : {0.0, 0.3, 1.7, -2.2, kPi}) {
        const double c = std::cos(th / 2), s = std::sin(th / 2);
        EXPECT_LT(max_diff(gates::Rx(th), mat2(c, -kI * s, -kI * s, c)), 1e-12);
        EXPECT_LT(max_diff(gates::Ry(th), mat2(c, -s, s, c)), 1e-12);
        EXPECT_LT(max_diff(gates::Rz(th), mat2(std::polar(1.0, -th / 2), 0, 0, std::polar(1.0, th / 2))), 1e-12);
    }
    EXPECT_LT(max_diff(gates::Rz(0.0), Matrix::Identity(2, 2)), 1e-15);
}

TEST(Gates, TwoQubitMatrices) {
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
    EXPECT_LT(max_diff(gates::CNOT(), cnot), 1e-12);
    EXPECT_LT(max_diff(gates::SWAP(), swap), 1e-12);
    EXPECT_LT(max_diff(controlled(gates::X()), cnot), 1e-12);
    EXPECT_LT(max_diff(controlled(Matrix::Identity(2, 2)), Matrix::Identity(4, 4)), 1e-12);
}

TEST(Gates, HadamardAsRotation) {
    const Matrix h = kI * gates::Rn(kPi, {r2, 0.0, r2});
    EXPECT_LT(max_diff(h, gates::H()), 1e-12);
}

TEST(Gates, RnRejectsNonUnitAxis) { EXPECT_THROW(gates::Rn(0.1, {1.0, 1.0, 0.0}), PreconditionError); }

TEST(Gates, StandardGateUnknownName) { EXPECT_THROW(standard_gate("Q"), PreconditionError); }

TEST(Gates, EveryStandardGateIsUnitary) {
    RandomSource rng(11);
    for (const char* name : {"X", "Y", "Z", "H", "S", "T", "Sdag", "Tdag"})
        EXPECT_TRUE(is_unitary(standard_gate(name), 1e-10)) << name;
    for (int i = 0; i < 50; ++i) {
        const double th = (rng.uniform() - 0.5) * 20;
        for (const char* name : {"Rx", "Ry", "Rz"}) EXPECT_TRUE(is_unitary(standard_gate(name, {th}), 1e-10));
        const Axis n = [&] {
            Axis a{rng.normal(), rng.normal(), rng.normal()};
            const double l = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
            return Axis{a[0] / l, a[1] / l, a[2] / l};
        }();
        EXPECT_TRUE(is_unitary(standard_gate("Rn", {th}, n), 1e-10));
    }
}

// Composition of two rotations is a rotation whose half-angle cosine follows
// the quaternion product rule.
TEST(Gates, RotationComposition) {
    RandomSource rng(5);
    auto axis = [&] {
        Axis a{rng.normal(), rng.normal(), rng.normal()};
        const double l = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        return Axis{a[0] / l, a[1] / l, a[2] / l};
    };
    for (int i = 0; i < 100; ++i) {
        const Axis m = axis(), n = axis();
        const double g = rng.uniform() * 2 * kPi, d = rng.uniform() * 2 * kPi;
        const Matrix prod = gates::Rn(g, m) * gates::Rn(d, n);
        const double mn = m[0] * n[0] + m[1] * n[1] + m[2] * n[2];
        const double cos_half = std::cos(g / 2) * std::cos(d / 2) - std::sin(g / 2) * std::sin(d / 2) * mn;
        // For any rotation R^h(e), tr R / 2 = cos(e / 2).
        EXPECT_NEAR((prod.trace() / 2.0).real(), cos_half, 1e-12);
        EXPECT_NEAR((prod.trace() / 2.0).imag(), 0.0, 1e-12);
        EXPECT_TRUE(is_unitary(prod));
    }
}

TEST(Gates, PowerOfTwoBySquaring) {
    RandomSource rng(3);
    const Matrix u = qlab::testing::random_unitary(2, rng);
    Matrix p = Matrix::Identity(2, 2);
    for (int k = 0; k < 8; ++k) p = p * u;
    EXPECT_LT(max_diff(power_of_two(u, 3), p), 1e-12);
}

TEST(StateVector, TensorProductLayout) {
    const StateVector s = tensor_product(StateVector::basis(1, 0), StateVector::basis(1, 1));
    EXPECT_EQ(s.dim(), 4);
    EXPECT_NEAR(std::abs(s[1] - 1.0), 0.0, 1e-15);

    Vector a(2), b(2);
    a << 0.6, cplx(0, 0.8);
    b << r2, -r2;
    const StateVector t = tensor_product(StateVector::from_amplitudes(a), StateVector::from_amplitudes(b));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(t[2 * i + j] - a[i] * b[j]), 0.0, 1e-15);
    EXPECT_LT(max_diff(tensor_product(Matrix::Identity(2, 2), Matrix::Identity(2, 2)), Matrix::Identity(4, 4)), 1e-15);
}

TEST(StateVector, GateActions) {
    StateVector s(1);
    s.apply(gates::X(), {0});
    EXPECT_NEAR(std::norm(s[1]), 1.0, 1e-15);

    StateVector h(1);
    h.apply(gates::H(), {0});
    EXPECT_NEAR(h[0].real(), r2, 1e-15);
    EXPECT_NEAR(h[1].real(), r2, 1e-15);

    StateVector c = StateVector::basis(2, 2);  // |10>
    c.apply(gates::CNOT(), {0, 1});
    EXPECT_NEAR(std::norm(c[3]), 1.0, 1e-15);

    StateVector sw = StateVector::basis(2, 1);  // |01>
    Circuit three(2);
    three.add(gates::CNOT(), {0, 1}).add(gates::CNOT(), {1, 0}).add(gates::CNOT(), {0, 1});
    const StateVector via = three.run(sw);
    EXPECT_NEAR(std::norm(via[2]), 1.0, 1e-15);
    EXPECT_LT(max_diff(three.unitary(), gates::SWAP()), 1e-12);
}

TEST(StateVector, TargetValidation) {
    StateVector s(3);
    EXPECT_THROW(s.apply(gates::CNOT(), {1, 1}), PreconditionError);
    EXPECT_THROW(s.apply(gates::X(), {3}), PreconditionError);
    EXPECT_THROW(s.apply(gates::CNOT(), {0}), PreconditionError);
}

TEST(StateVector, ControlledMatchesDenseBlock) {
    RandomSource rng(8);
    const Matrix u = qlab::testing::random_unitary(2, rng);
    const StateVector psi = StateVector::random(3, rng);
    StateVector a = psi;
    a.apply_controlled(u, {2}, {0});
    // Dense oracle: put control on the top qubit by relabeling with swaps.
    Circuit c(3);
    c.add(gates::SWAP(), {0, 2}).add(controlled(u), {0, 2}).add(gates::SWAP(), {0, 2});
    EXPECT_NEAR(fidelity(a, c.run(psi)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(a, c.run(psi)) - 1.0), 0.0, 1e-12);
}

TEST(StateVector, NormPreservedOnRandomStates) {
    RandomSource rng(21);
    for (int i = 0; i < 1000; ++i) {
        StateVector s = StateVector::random(3, rng);
        const Matrix u = qlab::testing::random_unitary(4, rng);
        const int a = static_cast<int>(rng() % 3);
        const int b = (a + 1 + static_cast<int>(rng() % 2)) % 3;
        s.apply(u, {a, b});
        ASSERT_NEAR(s.norm(), 1.0, 1e-10);
    }
}

TEST(StateVector, ApplyMatchesKroneckerOracle) {
    RandomSource rng(4);
    const Matrix u = qlab::testing::random_unitary(2, rng);
    const StateVector psi = StateVector::random(3, rng);
    const Matrix full = kron(Matrix::Identity(2, 2), kron(u, Matrix::Identity(2, 2)));
    const StateVector out = apply_gate(psi, u, {1});
    EXPECT_LT((out.amplitudes() - full * psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StateVector, Measurement) {
    RandomSource rng(9);
    const Measurement one = measure_z(StateVector::basis(1, 1), 0, rng);
    EXPECT_EQ(one.outcome, 1);
    EXPECT_NEAR(one.probability, 1.0, 1e-15);

    Vector v(2);
    v << 0.6, 0.8;
    const Measurement m0 = measure_z_forced(StateVector::from_amplitudes(v), 0, 0);
    EXPECT_NEAR(m0.probability, 0.36, 1e-14);

    Vector bell = Vector::Zero(4);
    bell[0] = bell[3] = r2;
    const StateVector b = StateVector::from_amplitudes(bell);
    const Measurement mb = measure_z_forced(b, 0, 0);
    EXPECT_NEAR(mb.probability, 0.5, 1e-14);
    EXPECT_NEAR(std::norm(mb.collapsed[0]), 1.0, 1e-14);
    EXPECT_THROW(measure_z_forced(StateVector::basis(1, 0), 0, 1), std::exception);
}

TEST(StateVector, SampledMeasurementFrequencies) {
    RandomSource rng(10);
    Vector v(2);
    v << 0.6, 0.8;
    const StateVector s = StateVector::from_amplitudes(v);
    int zeros = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) zeros += measure_z(s, 0, rng).outcome == 0;
    const double se = std::sqrt(0.36 * 0.64 / n);
    EXPECT_NEAR(zeros / static_cast<double>(n), 0.36, 5 * se);
}

TEST(StateVector, CnotEntanglesPlusZero) {
    StateVector s(2);
    s.apply(gates::H(), {0});
    s.apply(gates::CNOT(), {0, 1});
    const Matrix r = reduced_density(s, {0});
    EXPECT_NEAR((r * r).trace().real(), 0.5, 1e-10);
}

// A unitary cloning both |psi> and |phi> would force <phi|psi> = <phi|psi>^2.
// The best unitary for one input leaves a finite error on the other.
TEST(StateVector, NoCloningWitness) {
    RandomSource rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = StateVector::random(1, rng);
        const StateVector phi = StateVector::random(1, rng);
        const cplx ov = inner(phi, psi);
        ASSERT_GT(std::abs(ov), 1e-3);
        ASSERT_LT(std::abs(ov), 1 - 1e-3);
        const StateVector e(1);
        const StateVector pp = tensor_product(psi, psi), ff = tensor_product(phi, phi);
        const cplx lhs = inner(tensor_product(phi, e), tensor_product(psi, e));  // preserved by any U
        const cplx rhs = inner(ff, pp);
        EXPECT_GT(std::abs(lhs - rhs), 1e-6);
        EXPECT_NEAR(std::abs(lhs - ov), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(rhs - ov * ov), 0.0, 1e-12);
        // Any fixed unitary clones at most one of the two: check random unitaries.
        for (int k = 0; k < 20; ++k) {
            const Matrix u = qlab::testing::random_unitary(4, rng);
            const double dpsi = (u * tensor_product(psi, e).amplitudes() - pp.amplitudes()).norm();
            const double dphi = (u * tensor_product(phi, e).amplitudes() - ff.amplitudes()).norm();
            EXPECT_FALSE(dpsi < 1e-6 && dphi < 1e-6);
        }
    }
}

TEST(Pauli, Algebra) {
    const PauliString x = PauliString::from_string("X"), y = PauliString::from_string("Y"),
                      z = PauliString::from_string("Z");
    EXPECT_TRUE((x * z) == y.with_phase(3));  // XZ = -iY
    EXPECT_TRUE((z * x) == y.with_phase(1));
    EXPECT_FALSE(pauli_commutes(x, z));
    EXPECT_TRUE(pauli_commutes(PauliString::from_string("XXI"), PauliString::from_string("ZZI")));
    EXPECT_FALSE(pauli_commutes(PauliString::from_string("XII"), PauliString::from_string("ZZI")));
    EXPECT_TRUE(pauli_commutes(PauliString::from_string("XII"), PauliString::from_string("IZZ")));
    EXPECT_THROW(pauli_commutes(x, PauliString::from_string("XX")), PreconditionError);
    EXPECT_EQ(PauliString::from_string("-iXYZ").phase(), 3);
    EXPECT_EQ(PauliString::from_string("X1Z").to_string(), "XIZ");
}

TEST(Pauli, MatrixAgreesWithProduct) {
    RandomSource rng(13);
    const char letters[] = "IXYZ";
    for (int i = 0; i < 50; ++i) {
        std::string a, b;
        for (int q = 0; q < 3; ++q) {
            a += letters[rng() % 4];
            b += letters[rng() % 4];
        }
        const PauliString pa = PauliString::from_string(a), pb = PauliString::from_string(b);
        EXPECT_LT(max_diff((pa * pb).to_matrix(), pa.to_matrix() * pb.to_matrix()), 1e-12);
        const Matrix comm = pa.to_matrix() * pb.to_matrix() - pb.to_matrix() * pa.to_matrix();
        EXPECT_EQ(pa.commutes(pb), comm.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST(Pauli, Expectations) {
    EXPECT_NEAR(expectation_pauli(StateVector(1), PauliString::from_string("Z")), 1.0, 1e-15);
    for (int d = 0; d < 6; ++d) {
        StateVector s(1);
        for (int k = 0; k < d; ++k) s.apply(gates::X(), {0});
        EXPECT_NEAR(expectation_pauli(s, PauliString::from_string("Z")), std::cos(d * kPi), 1e-12);
    }
    Vector ghz = Vector::Zero(8);
    ghz[0] = ghz[7] = r2;
    EXPECT_NEAR(expectation_pauli(StateVector::from_amplitudes(ghz), PauliString::from_string("ZZI")), 1.0, 1e-12);
    EXPECT_THROW(expectation_pauli(StateVector(2), PauliString::from_string("Z")), PreconditionError);
}

TEST(Pauli, ConjugationByClifford) {
    const PauliString xi = PauliString::from_string("XI");
    EXPECT_TRUE(conjugate_pauli(gates::CNOT(), xi) == PauliString::from_string("XX"));
    EXPECT_TRUE(conjugate_pauli(gates::CNOT(), PauliString::from_string("IZ")) == PauliString::from_string("ZZ"));
    EXPECT_TRUE(conjugate_pauli(gates::H(), PauliString::from_string("X")) == PauliString::from_string("Z"));
    EXPECT_THROW(conjugate_pauli(gates::T(), PauliString::from_string("X")), std::exception);
}

TEST(Density, KrausExamples) {
    DensityMatrix one(StateVector::basis(1, 1));
    const DensityMatrix same = apply_kraus(one, KrausChannel::identity());
    EXPECT_LT(max_diff(same.matrix(), one.matrix()), 1e-15);

    const double p = 0.3;
    const DensityMatrix flipped = apply_kraus(one, KrausChannel::bit_flip(p));
    Matrix want = Matrix::Zero(2, 2);
    want(0, 0) = p;
    want(1, 1) = 1 - p;
    EXPECT_LT(max_diff(flipped.matrix(), want), 1e-15);

    DensityMatrix zero(1);
    zero.apply_channel(KrausChannel::bit_flip(p), {0});
    zero.apply_channel(KrausChannel::bit_flip(p), {0});
    EXPECT_NEAR(expectation_pauli(zero, PauliString::from_string("Z")), std::pow(2 * p - 1, 2), 1e-14);

    EXPECT_THROW(KrausChannel({Matrix::Identity(2, 2) * 0.9}), PreconditionError);
}

TEST(Density, ChannelsPreserveTraceAndPositivity) {
    RandomSource rng(14);
    const std::vector<KrausChannel> channels = {KrausChannel::bit_flip(0.2), KrausChannel::phase_flip(0.4),
                                                KrausChannel::depolarizing(0.7),
                                                KrausChannel::unitary_mixture(0.1, gates::H())};
    for (int i = 0; i < 100; ++i) {
        DensityMatrix rho = DensityMatrix::random(2, rng);
        for (const auto& ch : channels) {
            rho.apply_channel(ch, {static_cast<int>(rng() % 2)});
            ASSERT_TRUE(rho.is_valid(1e-10, 1e-10));
            ASSERT_NEAR(rho.trace().real(), 1.0, 1e-12);
        }
    }
}

TEST(Density, ChannelMatchesKrausSum) {
    RandomSource rng(15);
    const DensityMatrix rho = DensityMatrix::random(2, rng);
    const KrausChannel ch = KrausChannel::depolarizing(0.35);
    const DensityMatrix out = apply_kraus(rho, ch, {1});
    Matrix want = Matrix::Zero(4, 4);
    for (const Matrix& e : ch.operators()) {
        const Matrix big = kron(Matrix::Identity(2, 2), e);
        want += big * rho.matrix() * big.adjoint();
    }
    EXPECT_LT(max_diff(out.matrix(), want), 1e-12);
}

TEST(QFT, WorkedExample) {
    const StateVector out = qft_circuit(2).run(StateVector::basis(2, 2));  // |10>
    const double h = 0.5;
    EXPECT_NEAR(std::abs(out[0] - h), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out[1] + h), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out[2] - h), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out[3] + h), 0.0, 1e-12);
}

TEST(QFT, MatchesDftAndInverse) {
    for (int n = 1; n <= 5; ++n) {
        const Matrix u = qft_circuit(n).unitary();
        const double dim = std::ldexp(1.0, n);
        Matrix dft(static_cast<int>(dim), static_cast<int>(dim));
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) dft(k, j) = std::polar(1.0 / std::sqrt(dim), 2 * kPi * j * k / dim);
        EXPECT_LT(max_diff(u, dft), 1e-10) << n;
        EXPECT_LT(max_diff(qft_matrix(n), dft), 1e-12);
        EXPECT_LT(max_diff(qft_circuit(n, true).unitary() * u, Matrix::Identity(u.rows(), u.cols())), 1e-10);
        const StateVector z = qft_circuit(n).run(StateVector(n));
        for (Eigen::Index k = 0; k < z.dim(); ++k) EXPECT_NEAR(std::abs(z[k] - 1.0 / std::sqrt(dim)), 0.0, 1e-12);
    }
}

TEST(Circuit, InverseUndoes) {
    RandomSource rng(16);
    Circuit c(3);
    c.add(qlab::testing::random_unitary(2, rng), {1}).add(gates::CNOT(), {2, 0}).add(qlab::testing::random_unitary(4, rng), {0, 1});
    c.add_controlled(gates::Rx(0.4), {0, 2}, {1});
    Circuit full = c;
    full.append(c.inverse());
    EXPECT_LT(max_diff(full.unitary(), Matrix::Identity(8, 8)), 1e-10);
    const DensityMatrix rho = DensityMatrix::random(3, rng);
    DensityMatrix a = rho;
    c.apply(a);
    const Matrix u = c.unitary();
    EXPECT_LT(max_diff(a.matrix(), u * rho.matrix() * u.adjoint()), 1e-10);
}

TEST(Random, CounterBasedDeterminism) {
    RandomSource a(77), b(77);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
    const RandomSource base(5);
    EXPECT_EQ(base.fork(3).at(0), base.fork(3).at(0));
    EXPECT_NE(base.fork(3).at(0), base.fork(4).at(0));
    RandomSource u(1);
    double mean = 0;
    for (int i = 0; i < 100000; ++i) mean += u.uniform();
    EXPECT_NEAR(mean / 100000, 0.5, 0.005);
}
