#include "qlab/mitigation/dd.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qlab {

namespace {

double coth_half(double beta, double omega) { return 1.0 / std::tanh(0.5 * beta * omega); }

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

// Sum over the first m segments of the pulse train, alternating sign: xi(dt) * S.
cplx segment_sum(double x, long long m) {
    // pairs of segments contribute (1 - e^{ix}) e^{2ixn}
    const long long pairs = m / 2;
    cplx s = pairs > 0 ? (1.0 - std::polar(1.0, x)) * dd_geometric(static_cast<int>(pairs), x) : cplx(0.0);
    if (m % 2 == 1) s += std::polar(1.0, x * static_cast<double>(m - 1));
    return s;
}

}  // namespace

void BathSpec::validate() const {
    require(std::isfinite(beta) && beta > 0.0, "BathSpec: beta must be positive and finite");
    for (const BathMode& m : modes) {
        require(std::isfinite(m.omega) && m.omega > 0.0, "BathSpec: mode frequencies must be positive and finite");
        require(std::isfinite(m.g), "BathSpec: couplings must be finite");
    }
}

BathSpec BathSpec::from_spectral_density(const std::function<double(double)>& density, double w_min, double w_max,
                                         int n_modes, double beta) {
    require(w_min >= 0.0 && w_max > w_min, "BathSpec::from_spectral_density: need 0 <= w_min < w_max");
    require(n_modes >= 1, "BathSpec::from_spectral_density: n_modes must be >= 1");
    BathSpec b;
    b.beta = beta;
    const double dw = (w_max - w_min) / n_modes;
    for (int k = 0; k < n_modes; ++k) {
        const double w = w_min + (k + 0.5) * dw;
        const double i = density(w);
        require(std::isfinite(i) && i >= 0.0, "BathSpec::from_spectral_density: density must be finite and >= 0");
        b.modes.push_back({std::sqrt(i * dw), w});
    }
    b.validate();
    return b;
}

BathSpec BathSpec::parse(const std::string& text) {
    BathSpec b;
    bool have_beta = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(strip_comment(line));
        std::string key;
        if (!(ls >> key)) continue;
        const std::string where = "bath line " + std::to_string(lineno) + ": ";
        if (key == "beta") {
            require(static_cast<bool>(ls >> b.beta), where + "expected 'beta <value>'");
            have_beta = true;
        } else if (key == "mode") {
            BathMode m;
            require(static_cast<bool>(ls >> m.g >> m.omega), where + "expected 'mode <g> <omega>'");
            b.modes.push_back(m);
        } else if (key == "ohmic") {
            double alpha = 0, wc = 0, wmax = 0;
            int n = 512;
            require(static_cast<bool>(ls >> alpha >> wc >> wmax), where + "expected 'ohmic <alpha> <omega_c> <omega_max> [n]'");
            if (!(ls >> n)) n = 512;
            require(wc > 0.0 && wmax > 0.0 && n >= 1, where + "ohmic parameters must be positive");
            const BathSpec o = from_spectral_density([&](double w) { return alpha * w * std::exp(-w / wc); }, 0.0, wmax, n, 1.0);
            b.modes.insert(b.modes.end(), o.modes.begin(), o.modes.end());
        } else {
            throw PreconditionError(where + "unknown directive '" + key + "'");
        }
    }
    require(have_beta, "bath: missing 'beta' directive");
    require(!b.modes.empty(), "bath: no modes");
    b.validate();
    return b;
}

std::string BathSpec::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << "beta " << beta << '\n';
    for (const BathMode& m : modes) out << "mode " << m.g << ' ' << m.omega << '\n';
    return out.str();
}

cplx dd_xi(double g, double omega, double t) {
    require(omega > 0.0, "dd_xi: omega must be > 0");
    return (2.0 * g / omega) * (1.0 - std::polar(1.0, omega * t));
}

double gamma_free(const BathSpec& bath, double t0, double t) {
    bath.validate();
    require(t >= t0, "gamma_free: t must be >= t0");
    double acc = 0.0;
    for (const BathMode& m : bath.modes)
        acc += 4.0 * m.g * m.g / (m.omega * m.omega) * (1.0 - std::cos(m.omega * (t - t0))) * coth_half(bath.beta, m.omega);
    return acc;
}

void PulseSequence::validate() const {
    require(std::isfinite(dt) && dt > 0.0, "PulseSequence: dt must be > 0");
    require(n_cycles >= 1, "PulseSequence: N must be >= 1");
}

cplx dd_geometric(int n, double x) {
    require(n >= 0, "dd_geometric: N must be >= 0");
    if (n == 0) return 0.0;
    const double s = std::sin(x);
    const double ratio = std::abs(s) < 1e-8 ? n * std::cos(n * x) / std::cos(x) : std::sin(n * x) / s;
    return std::polar(1.0, (n - 1) * x) * ratio;
}

cplx dd_eta(double g, double omega, double dt, int n_cycles) {
    const double x = omega * dt;
    return dd_xi(g, omega, dt) * (1.0 - std::polar(1.0, x)) * dd_geometric(n_cycles, x);
}

cplx dd_f(double omega, double dt, int n_cycles) {
    const double x = omega * dt;
    const cplx den = 1.0 - std::polar(1.0, 2.0 * n_cycles * x);
    require(std::abs(den) > 1e-12, "dd_f: xi(2 N dt) vanishes, f is undefined");
    return 2.0 * (1.0 - std::polar(1.0, x)) / den * std::polar(1.0, x) * dd_geometric(n_cycles, x);
}

double gamma_pulsed(const BathSpec& bath, const PulseSequence& seq) {
    bath.validate();
    seq.validate();
    double acc = 0.0;
    for (const BathMode& m : bath.modes)
        acc += 0.5 * std::norm(dd_eta(m.g, m.omega, seq.dt, seq.n_cycles)) * coth_half(bath.beta, m.omega);
    return acc;
}

double gamma_pulsed_at(const BathSpec& bath, double dt, double elapsed) {
    bath.validate();
    require(dt > 0.0 && elapsed >= 0.0, "gamma_pulsed_at: need dt > 0 and elapsed >= 0");
    const auto m = static_cast<long long>(std::floor(elapsed / dt + 1e-12));
    const double r = std::max(0.0, elapsed - static_cast<double>(m) * dt);
    double acc = 0.0;
    for (const BathMode& mode : bath.modes) {
        const double x = mode.omega * dt;
        cplx eta = dd_xi(mode.g, mode.omega, dt) * segment_sum(x, m);
        const double sign = m % 2 == 0 ? 1.0 : -1.0;
        eta += sign * std::polar(1.0, mode.omega * static_cast<double>(m) * dt) * dd_xi(mode.g, mode.omega, r);
        acc += 0.5 * std::norm(eta) * coth_half(bath.beta, mode.omega);
    }
    return acc;
}

std::vector<double> coherence_trace(const BathSpec& bath, double t0, const std::vector<double>& times,
                                    std::optional<double> pulse_dt) {
    std::vector<double> out;
    double prev = t0;
    for (double t : times) {
        require(t >= prev, "coherence_trace: time grid must be non-decreasing and start at or after t0");
        prev = t;
        const double g = pulse_dt ? gamma_pulsed_at(bath, *pulse_dt, t - t0) : gamma_free(bath, t0, t);
        out.push_back(std::exp(-g));
    }
    return out;
}

std::vector<double> fock_coherence(const BathSpec& bath, int levels, const std::vector<double>& times) {
    bath.validate();
    const int k = static_cast<int>(bath.modes.size());
    require(levels >= 2 && k >= 1, "fock_coherence: need >= 2 levels and >= 1 mode");
    Eigen::Index dim = 1;
    for (int i = 0; i < k; ++i) dim *= levels;
    require(dim <= 4096, "fock_coherence: truncated bath space too large");

    // b on a single mode, then embedded
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    auto embed = [&](const Eigen::MatrixXd& op, int mode) {
        Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
        for (int i = 0; i < k; ++i) {
            const Eigen::MatrixXd f = i == mode ? op : Eigen::MatrixXd::Identity(levels, levels);
            Eigen::MatrixXd next(out.rows() * f.rows(), out.cols() * f.cols());
            for (Eigen::Index r = 0; r < out.rows(); ++r)
                for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(r * f.rows(), c * f.cols(), f.rows(), f.cols()) = out(r, c) * f;
            out = std::move(next);
        }
        return out;
    };
    Eigen::MatrixXd hb = Eigen::MatrixXd::Zero(dim, dim), coupling = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < k; ++i) {
        const BathMode& m = bath.modes[static_cast<std::size_t>(i)];
        const Eigen::MatrixXd b = embed(a, i);
        hb += m.omega * b.transpose() * b;
        coupling += m.g * (b + b.transpose());
    }
    // Thermal state of the free bath (diagonal in the Fock basis).
    Eigen::VectorXd pop = (-bath.beta * hb.diagonal().array()).exp();
    pop /= pop.sum();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> plus(hb + coupling), minus(hb - coupling);
    std::vector<double> out;
    for (double t : times) {
        auto evolve = [t](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& e) {
            const Vector ph = (e.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp();
            const Matrix v = e.eigenvectors().cast<cplx>();
            return Matrix(v * ph.asDiagonal() * v.adjoint());
        };
        const Matrix w = evolve(minus).adjoint() * evolve(plus);
        cplx tr = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i) tr += w(i, i) * pop[i];
        out.push_back(std::abs(tr));
    }
    return out;
}

}  // namespace qlab
