#include "qlab/ising/qaoa.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qlab/core/gates.hpp"
#include "qlab/ising/optimize.hpp"
#include "qlab/ising/pauli_hamiltonian.hpp"

namespace qlab {

void QaoaParams::validate() const {
    require(!gamma.empty(), "QaoaParams: p must be >= 1");
    require(gamma.size() == beta.size(), "QaoaParams: gamma and beta lengths differ");
    for (std::size_t k = 0; k < gamma.size(); ++k)
        require(std::isfinite(gamma[k]) && std::isfinite(beta[k]), "QaoaParams: angles must be finite");
}

QaoaParams QaoaParams::padded(int p) const {
    require(p >= this->p(), "QaoaParams::padded: cannot shrink");
    QaoaParams out = *this;
    out.gamma.resize(static_cast<std::size_t>(p), 0.0);
    out.beta.resize(static_cast<std::size_t>(p), 0.0);
    return out;
}

Circuit qaoa_circuit(const IsingModel& model, const QaoaParams& params) {
    params.validate();
    const int n = model.n();
    Circuit c(n);
    for (int i = 0; i < n; ++i) c.add(gates::H(), {i}, "H");
    for (int k = 0; k < params.p(); ++k) {
        const double g = params.gamma[static_cast<std::size_t>(k)];
        const double b = params.beta[static_cast<std::size_t>(k)];
        for (int i = 0; i < n; ++i) {
            const double h = model.h()[static_cast<std::size_t>(i)];
            if (h != 0.0) c.add(gates::Rz(-2.0 * g * h), {i}, "Rz");
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double jij = model.j()(i, j);
                if (jij == 0.0) continue;
                c.add(gates::CNOT(), {i, j}, "CNOT");
                c.add(gates::Rz(-2.0 * g * jij), {j}, "Rz");
                c.add(gates::CNOT(), {i, j}, "CNOT");
            }
        }
        for (int i = 0; i < n; ++i) c.add(gates::Rx(-2.0 * b), {i}, "Rx");
    }
    return c;
}

StateVector qaoa_state(const IsingModel& model, const QaoaParams& params) {
    return qaoa_circuit(model, params).run(StateVector(model.n()));
}

StateVector qaoa_state_dense(const IsingModel& model, const QaoaParams& params) {
    params.validate();
    const int n = model.n();
    const Eigen::Index d = Eigen::Index{1} << n;
    const Eigen::VectorXd cost = model.cost_diagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> mixer(PauliHamiltonian::transverse_field(n).to_matrix());
    Vector psi = Vector::Constant(d, cplx(1.0 / std::sqrt(static_cast<double>(d))));
    for (int k = 0; k < params.p(); ++k) {
        const double g = params.gamma[static_cast<std::size_t>(k)];
        const double b = params.beta[static_cast<std::size_t>(k)];
        for (Eigen::Index z = 0; z < d; ++z) psi[z] *= std::polar(1.0, -g * cost[z]);
        Vector ph(d);
        for (Eigen::Index j = 0; j < d; ++j) ph[j] = std::polar(1.0, -b * mixer.eigenvalues()[j]);
        psi = mixer.eigenvectors() * (ph.asDiagonal() * (mixer.eigenvectors().adjoint() * psi));
    }
    return StateVector::from_amplitudes(psi / psi.norm(), 1e-8);
}

double qaoa_energy(const IsingModel& model, const QaoaParams& params) {
    const StateVector s = qaoa_state(model, params);
    const Eigen::VectorXd cost = model.cost_diagonal();
    double e = 0.0;
    for (Eigen::Index z = 0; z < s.dim(); ++z) e += std::norm(s[z]) * cost[z];
    return e;
}

QaoaResult qaoa_optimize(const IsingModel& model, int p, std::uint64_t budget, RandomSource& rng,
                         const QaoaParams& init) {
    require(p >= 1, "qaoa_optimize: p must be >= 1");
    require(budget >= 1, "qaoa_optimize: budget must be >= 1");
    QaoaParams start = init;
    if (start.gamma.empty()) {
        start.gamma.resize(static_cast<std::size_t>(p));
        start.beta.resize(static_cast<std::size_t>(p));
        for (int k = 0; k < p; ++k) {
            start.gamma[static_cast<std::size_t>(k)] = rng.uniform() * kQaoaGammaMax;
            start.beta[static_cast<std::size_t>(k)] = rng.uniform() * kQaoaBetaMax;
        }
    }
    require(start.p() == p, "qaoa_optimize: initial parameters have the wrong depth");
    start.validate();

    std::vector<double> x0, lo, hi;
    for (int k = 0; k < p; ++k) {
        x0.push_back(start.gamma[static_cast<std::size_t>(k)]);
        lo.push_back(0.0);
        hi.push_back(kQaoaGammaMax);
        x0.push_back(start.beta[static_cast<std::size_t>(k)]);
        lo.push_back(0.0);
        hi.push_back(kQaoaBetaMax);
    }
    auto unpack = [p](const std::vector<double>& x) {
        QaoaParams q;
        for (int k = 0; k < p; ++k) {
            q.gamma.push_back(x[static_cast<std::size_t>(2 * k)]);
            q.beta.push_back(x[static_cast<std::size_t>(2 * k + 1)]);
        }
        return q;
    };
    PatternSearchOptions opts;
    opts.budget = budget;
    const PatternSearchResult r =
        pattern_search([&](const std::vector<double>& x) { return qaoa_energy(model, unpack(x)); }, x0, lo, hi, opts);
    return QaoaResult{unpack(r.x), r.f, r.trace, r.evaluations};
}

std::vector<QaoaResult> qaoa_optimize_nested(const IsingModel& model, int p_max, std::uint64_t budget_per_depth,
                                             RandomSource& rng) {
    require(p_max >= 1, "qaoa_optimize_nested: p_max must be >= 1");
    std::vector<QaoaResult> out;
    QaoaParams seed;
    for (int p = 1; p <= p_max; ++p) {
        const QaoaParams init = p == 1 ? QaoaParams{} : seed.padded(p);
        out.push_back(qaoa_optimize(model, p, budget_per_depth, rng, init));
        seed = out.back().best;
    }
    return out;
}

QaoaParams annealing_to_qaoa(const Schedule& schedule) {
    schedule.validate();
    const int m = schedule.resolved_steps();
    const double dt = schedule.tau / m;
    QaoaParams q;
    for (int k = 0; k < m; ++k) {
        const double s = schedule.s((k + 0.5) / m);
        q.gamma.push_back(s * dt);
        q.beta.push_back((1.0 - s) * dt);
    }
    return q;
}

}  // namespace qlab
