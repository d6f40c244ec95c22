#include "qlab/ising/anneal.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qlab/ising/pauli_hamiltonian.hpp"

namespace qlab {

Schedule Schedule::linear(double tau, int steps) {
    Schedule s;
    s.tau = tau;
    s.s = [](double u) { return u; };
    s.steps = steps;
    return s;
}

int Schedule::resolved_steps() const {
    if (steps > 0) return steps;
    return std::max(1, static_cast<int>(std::ceil(1000.0 * tau)));
}

void Schedule::validate() const {
    require(tau >= 0.0 && std::isfinite(tau), "Schedule: tau must be finite and >= 0");
    require(static_cast<bool>(s), "Schedule: missing s(t)");
    require(s(0.0) == 0.0 && s(1.0) == 1.0, "Schedule: endpoints must be s(0) = 0 and s(tau) = 1");
    const int m = resolved_steps();
    double prev = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double v = s(static_cast<double>(k) / m);
        require(v >= prev - 1e-15, "Schedule: s must be non-decreasing");
        prev = v;
    }
}

Matrix annealing_hamiltonian(const IsingModel& model, double s) {
    const Matrix h0 = PauliHamiltonian::transverse_field(model.n()).to_matrix();
    Matrix hc = Matrix::Zero(h0.rows(), h0.cols());
    hc.diagonal() = model.cost_diagonal().cast<cplx>();
    return (1.0 - s) * h0 + s * hc;
}

double driver_cost_commutator(const IsingModel& model) {
    const Matrix h0 = PauliHamiltonian::transverse_field(model.n()).to_matrix();
    Matrix hc = Matrix::Zero(h0.rows(), h0.cols());
    hc.diagonal() = model.cost_diagonal().cast<cplx>();
    return commutator_norm(h0, hc);
}

AnnealResult anneal(const IsingModel& model, const Schedule& schedule) {
    schedule.validate();
    require(model.n() <= 12, "anneal: at most 12 spins for dense evolution");
    const int n = model.n();
    const Eigen::Index d = Eigen::Index{1} << n;
    const Matrix h0 = PauliHamiltonian::transverse_field(n).to_matrix();
    Matrix hc = Matrix::Zero(d, d);
    hc.diagonal() = model.cost_diagonal().cast<cplx>();

    Vector psi = Vector::Constant(d, cplx(1.0 / std::sqrt(static_cast<double>(d))));
    const int m = schedule.resolved_steps();
    const double dt = schedule.tau / m;

    AnnealResult out;
    out.min_gap = std::numeric_limits<double>::infinity();
    out.gaps.reserve(static_cast<std::size_t>(m));
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    for (int k = 0; k < m; ++k) {
        const double s = schedule.s((k + 0.5) / m);
        es.compute((1.0 - s) * h0 + s * hc);
        const Eigen::VectorXd& ev = es.eigenvalues();
        const double gap = ev.size() > 1 ? ev[1] - ev[0] : 0.0;
        out.gaps.push_back(gap);
        out.min_gap = std::min(out.min_gap, gap);
        if (dt > 0.0) {
            Vector phases(d);
            for (Eigen::Index j = 0; j < d; ++j) phases[j] = std::polar(1.0, -ev[j] * dt);
            psi = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi));
        }
    }
    out.gap_closed = out.min_gap < 1e-9;
    out.trotter_error_estimate = dt * dt * commutator_norm(h0, hc) / 12.0;
    psi /= psi.norm();
    out.final_state = StateVector::from_amplitudes(psi, 1e-8);
    for (std::uint64_t z : brute_force_ground(model).states) out.p_success += std::norm(psi[static_cast<Eigen::Index>(z)]);
    return out;
}

double repetitions_for_target(double p, double target) {
    require(p > 0.0 && p < 1.0, "repetitions_for_target: p must lie in (0, 1)");
    require(target > 0.0 && target < 1.0, "repetitions_for_target: target must lie in (0, 1)");
    return std::log(1.0 - target) / std::log(1.0 - p);
}

}  // namespace qlab
