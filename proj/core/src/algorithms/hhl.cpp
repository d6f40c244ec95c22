#include "qlab/algorithms/hhl.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qlab/core/circuit.hpp"
#include "qlab/core/gates.hpp"
#include "qlab/core/qft.hpp"

namespace qlab {

Matrix hhl_evolution(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Vector phases(a.rows());
    for (Eigen::Index j = 0; j < a.rows(); ++j) phases[j] = std::polar(1.0, 2.0 * kPi * es.eigenvalues()[j]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Vector classical_solution(const LinearSystem& sys) {
    Vector x = sys.a.fullPivLu().solve(sys.b);
    return x / x.norm();
}

LinearSystem random_exact_system(int n_b, int d, RandomSource& rng) {
    require(n_b >= 1 && d >= 1 && d <= 20, "random_exact_system: sizes out of range");
    const Eigen::Index dim = Eigen::Index{1} << n_b;
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    const Matrix v = Eigen::HouseholderQR<Matrix>(g).householderQ();
    Eigen::VectorXd lambda(dim);
    const std::uint64_t levels = (std::uint64_t{1} << d) - 1;
    for (Eigen::Index j = 0; j < dim; ++j)
        lambda[j] = static_cast<double>(1 + rng() % levels) / std::ldexp(1.0, d);
    LinearSystem sys;
    sys.a = v * lambda.cast<cplx>().asDiagonal() * v.adjoint();
    sys.a = 0.5 * (sys.a + sys.a.adjoint());
    sys.b = Vector(dim);
    for (Eigen::Index i = 0; i < dim; ++i) sys.b[i] = cplx(rng.normal(), rng.normal());
    sys.b /= sys.b.norm();
    return sys;
}

namespace {

// Eigenvalue-register rotation: for register value y, the ancilla goes to
// sqrt(1 - c^2)|0> + c|1> with c = C / (y / 2^d); y = 0 is left untouched.
Matrix conditional_rotation(int d, double c_const) {
    const Eigen::Index ny = Eigen::Index{1} << d;
    Matrix r = Matrix::Identity(2 * ny, 2 * ny);
    for (Eigen::Index y = 1; y < ny; ++y) {
        const double lambda = static_cast<double>(y) / static_cast<double>(ny);
        const double c = std::min(1.0, c_const / lambda);
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        r(y, y) = s;
        r(y, ny + y) = -c;
        r(ny + y, y) = c;
        r(ny + y, ny + y) = s;
    }
    return r;
}

}  // namespace

HhlResult hhl(const LinearSystem& sys, const HhlOptions& opts, RandomSource& rng) {
    const int d = opts.precision_bits;
    require(d >= 1, "hhl: precision_bits must be >= 1");
    require(sys.a.rows() == sys.a.cols(), "hhl: A must be square");
    const int nb = log2_dim(sys.a.rows());
    require(nb >= 1, "hhl: A dimension must be 2^n");
    require(sys.b.size() == sys.a.rows(), "hhl: b dimension mismatch");
    require(std::abs(sys.b.norm() - 1.0) < 1e-10, "hhl: b must be normalized");
    require((sys.a - sys.a.adjoint()).cwiseAbs().maxCoeff() < 1e-10, "hhl: A must be Hermitian");
    require(1 + d + nb <= kMaxQubits, "hhl: register too large");

    Eigen::SelfAdjointEigenSolver<Matrix> es(sys.a);
    const double scale = std::ldexp(1.0, d);
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
        const double lam = es.eigenvalues()[j];
        require(lam > 0.0 && lam < 1.0, "hhl: eigenvalues must lie in (0, 1)");
        require(std::abs(lam * scale - std::round(lam * scale)) <= opts.exactness_tol,
                "hhl: eigenvalue " + std::to_string(lam) + " has no exact " + std::to_string(d) + "-bit representation");
    }
    const double lambda_min = es.eigenvalues().minCoeff();
    const double c_const = opts.c > 0.0 ? opts.c : lambda_min;
    require(c_const <= lambda_min * (1.0 + 1e-12), "hhl: C must not exceed the smallest eigenvalue");

    const int n = 1 + d + nb;
    std::vector<int> reg(static_cast<std::size_t>(d));
    std::iota(reg.begin(), reg.end(), 1);
    std::vector<int> sysq(static_cast<std::size_t>(nb));
    std::iota(sysq.begin(), sysq.end(), 1 + d);

    const Matrix u = hhl_evolution(sys.a);
    Circuit pe(n);
    for (int q : reg) pe.add(gates::H(), {q}, "H");
    for (int i = 0; i < d; ++i) pe.add_controlled(power_of_two(u, d - 1 - i), {reg[static_cast<std::size_t>(i)]}, sysq, "CU");
    pe.append(qft_circuit_on(n, reg, true));

    StateVector s = tensor_product(StateVector(1 + d), StateVector::from_amplitudes(sys.b));
    pe.apply(s);
    std::vector<int> rot_q(static_cast<std::size_t>(d + 1));
    std::iota(rot_q.begin(), rot_q.end(), 0);
    s.apply(conditional_rotation(d, c_const), rot_q);
    pe.inverse().apply(s);

    HhlResult out;
    out.full_state = s;
    out.p_success = 1.0 - s.probability_zero(0);
    if (out.p_success <= 0.0) throw RuntimeFailure("hhl: post-selection probability is zero");

    RandomSource trials = rng.fork(rng());
    for (out.attempts = 1; out.attempts <= opts.max_attempts; ++out.attempts)
        if (trials.bernoulli(out.p_success)) break;
    if (out.attempts > opts.max_attempts)
        throw RuntimeFailure("hhl: post-selection failed " + std::to_string(opts.max_attempts) +
                             " times (p_success = " + std::to_string(out.p_success) + ")");

    StateVector post = s;
    post.project(0, 1);
    const Eigen::Index sys_dim = Eigen::Index{1} << nb;
    const Eigen::Index reg_block = Eigen::Index{1} << (d + nb);
    const Vector x = post.amplitudes().segment(reg_block, sys_dim);
    out.register_fidelity = x.squaredNorm();
    out.x_hat = StateVector::from_amplitudes(x / x.norm(), 1e-8);
    return out;
}

}  // namespace qlab
