#include "qlab/mitigation/pec.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qlab/core/gates.hpp"
#include "qlab/core/pauli.hpp"

namespace qlab {

namespace {

int sample_index(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(probs.size()) - 1;
}

void validate_lambdas(const std::array<double, 4>& l) {
    double s = 0.0;
    for (double v : l) {
        require(v >= 0.0 && v <= 1.0, "pec: channel weights must lie in [0,1]");
        s += v;
    }
    require(std::abs(s - 1.0) < 1e-12, "pec: channel weights must sum to 1");
}

}  // namespace

QuasiProbability QuasiProbability::from_weights(std::vector<int> paulis, std::vector<double> q) {
    require(paulis.size() == q.size() && !q.empty(), "QuasiProbability: mismatched Pauli and weight lists");
    QuasiProbability out;
    out.paulis = std::move(paulis);
    out.q = std::move(q);
    out.gamma = 0.0;
    for (double v : out.q) {
        require(std::isfinite(v), "QuasiProbability: weights must be finite");
        out.gamma += std::abs(v);
    }
    for (double v : out.q) {
        out.signs.push_back(v < 0.0 ? -1 : 1);
        out.probs.push_back(std::abs(v) / out.gamma);
    }
    out.validate(1e-10);
    return out;
}

void QuasiProbability::validate(double tol) const {
    double s = 0.0, ps = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        s += q[k];
        ps += probs[k];
        require(std::abs(signs[k] * probs[k] * gamma - q[k]) <= tol, "QuasiProbability: S P gamma != q");
    }
    require(std::abs(s - 1.0) <= tol, "QuasiProbability: weights must sum to 1");
    require(std::abs(ps - 1.0) <= tol, "QuasiProbability: probabilities must sum to 1");
    require(gamma >= 1.0 - tol, "QuasiProbability: gamma must be >= 1");
}

QuasiProbability pec_invert_bitflip(double p) {
    require(p >= 0.0 && p < 0.5, "pec_invert_bitflip: p must lie in [0, 1/2)");
    const double q = -p / (1.0 - 2.0 * p);
    return QuasiProbability::from_weights({0, 1}, {1.0 - q, q});
}

QuasiProbability pec_invert_pauli(const std::array<double, 4>& lambdas) {
    validate_lambdas(lambdas);
    const double lx = lambdas[1], ly = lambdas[2], lz = lambdas[3];
    const double fx = 1.0 - 2.0 * (ly + lz);
    const double fy = 1.0 - 2.0 * (lx + lz);
    const double fz = 1.0 - 2.0 * (lx + ly);
    require(std::abs(fx) > 1e-12 && std::abs(fy) > 1e-12 && std::abs(fz) > 1e-12,
            "pec_invert_pauli: channel is not invertible (1 - 2 l_a - 2 l_b = 0)");
    const double ix = 1.0 / fx, iy = 1.0 / fy, iz = 1.0 / fz;
    return QuasiProbability::from_weights({0, 1, 2, 3}, {0.25 * (1.0 + ix + iy + iz), 0.25 * (1.0 + ix - iy - iz),
                                                          0.25 * (1.0 - ix + iy - iz), 0.25 * (1.0 - ix - iy + iz)});
}

Matrix apply_quasi_map(const QuasiProbability& qp, const Matrix& rho) {
    require(rho.rows() == 2 && rho.cols() == 2, "apply_quasi_map: single-qubit density matrix expected");
    Matrix out = Matrix::Zero(2, 2);
    for (std::size_t k = 0; k < qp.q.size(); ++k) {
        const Matrix s = pauli(qp.paulis[k]);
        out += qp.q[k] * (s * rho * s);
    }
    return out;
}

Matrix channel_superoperator(const KrausChannel& ch) {
    require(ch.arity() == 1, "channel_superoperator: single-qubit channel expected");
    Matrix s = Matrix::Zero(4, 4);
    for (const Matrix& e : ch.operators()) s += Eigen::kroneckerProduct(e.conjugate(), e).eval();
    return s;
}

Matrix quasi_superoperator(const QuasiProbability& qp) {
    Matrix s = Matrix::Zero(4, 4);
    for (std::size_t k = 0; k < qp.q.size(); ++k) {
        const Matrix p = pauli(qp.paulis[k]);
        s += qp.q[k] * Eigen::kroneckerProduct(p.conjugate(), p).eval();
    }
    return s;
}

Circuit x_chain(int depth) {
    require(depth >= 0, "x_chain: depth must be >= 0");
    Circuit c(1);
    for (int k = 0; k < depth; ++k) c.add(gates::X(), {0}, "X");
    return c;
}

PecResult pec_mitigate(const Circuit& circuit, const std::array<double, 4>& lambdas, std::uint64_t shots,
                       RandomSource& rng) {
    require(circuit.n_qubits() == 1, "pec_mitigate: single-qubit circuit expected");
    require(shots >= 2, "pec_mitigate: shots must be >= 2");
    validate_lambdas(lambdas);
    const QuasiProbability qp = pec_invert_pauli(lambdas);
    const std::vector<double> noise(lambdas.begin(), lambdas.end());
    const auto locations = static_cast<int>(circuit.size());
    std::vector<Matrix> sig;
    for (int a = 0; a < 4; ++a) sig.push_back(pauli(a));

    PecResult r;
    r.shots = shots;
    r.gamma_total = std::pow(qp.gamma, locations);
    {
        StateVector s(1);
        circuit.apply(s);
        r.noiseless = 2.0 * s.probability_zero(0) - 1.0;
    }

    const RandomSource base = rng.fork(rng());
    double sum_m = 0.0, sum_m2 = 0.0, sum_u = 0.0, sum_u2 = 0.0;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        // Two independent trajectories per shot: unmitigated and mitigated.
        for (int mitigated = 0; mitigated < 2; ++mitigated) {
            RandomSource t = base.fork(2 * shot + static_cast<std::uint64_t>(mitigated));
            StateVector s(1);
            int sign = 1;
            for (const Operation& op : circuit.ops()) {
                s.apply(op.gate, op.targets);
                const int e = sample_index(noise, t.uniform());
                if (e) s.apply(sig[static_cast<std::size_t>(e)], {0});
                if (mitigated) {
                    const int k = sample_index(qp.probs, t.uniform());
                    sign *= qp.signs[static_cast<std::size_t>(k)];
                    const int a = qp.paulis[static_cast<std::size_t>(k)];
                    if (a) s.apply(sig[static_cast<std::size_t>(a)], {0});
                }
            }
            const double z = t.uniform() < s.probability_zero(0) ? 1.0 : -1.0;
            if (mitigated) {
                const double v = r.gamma_total * sign * z;
                sum_m += v;
                sum_m2 += v * v;
            } else {
                sum_u += z;
                sum_u2 += z * z;
            }
        }
    }
    const double n = static_cast<double>(shots);
    r.mitigated = sum_m / n;
    r.unmitigated = sum_u / n;
    r.mitigated_stderr = std::sqrt(std::max(0.0, (sum_m2 / n - r.mitigated * r.mitigated) / (n - 1.0)));
    r.unmitigated_stderr = std::sqrt(std::max(0.0, (sum_u2 / n - r.unmitigated * r.unmitigated) / (n - 1.0)));
    return r;
}

}  // namespace qlab
