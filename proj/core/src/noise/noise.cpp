#include "qlab/noise/noise.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/core/gates.hpp"
#include "qlab/core/pauli.hpp"

namespace qlab {

GateMatrix MiscalibrationModel::gate() const { return gates::X() * (kI * gates::Rx(epsilon)); }

void MeasurementErrorModel::validate() const {
    require(mu >= 0.0 && mu <= 1.0 && nu >= 0.0 && nu <= 1.0, "MeasurementErrorModel: mu and nu must lie in [0,1]");
}

Eigen::Matrix2d MeasurementErrorModel::assignment_matrix() const {
    validate();
    Eigen::Matrix2d a;
    a << 1.0 - mu, nu, mu, 1.0 - nu;
    return a;
}

double MeasurementErrorModel::apply(double p) const {
    validate();
    require(p >= 0.0 && p <= 1.0, "apply_measurement_bias: p must lie in [0,1]");
    return p + mu - (nu + mu) * p;
}

double MeasurementErrorModel::invert(double p_tilde) const {
    validate();
    require(std::abs(1.0 - mu - nu) > 1e-12, "MeasurementErrorModel::invert: mu + nu = 1 is not invertible");
    return (p_tilde - mu) / (1.0 - mu - nu);
}

double MeasurementErrorModel::apply_to_z(double z) const { return (1.0 - mu - nu) * z + nu - mu; }

void EnvironmentChannel::validate() const {
    require(p_e >= 0.0 && p_e <= 1.0, "EnvironmentChannel: p_e must lie in [0,1]");
    if (error_gate.size() > 0)
        require(error_gate.rows() == 2 && is_unitary(error_gate), "EnvironmentChannel: error gate must be a 1-qubit unitary");
}

GateMatrix EnvironmentChannel::error() const { return error_gate.size() > 0 ? error_gate : gates::X(); }

KrausChannel EnvironmentChannel::channel() const {
    validate();
    return KrausChannel::unitary_mixture(p_e, error());
}

EnvironmentMode parse_environment_mode(const std::string& s) {
    if (s == "per_gate" || s == "per-gate") return EnvironmentMode::per_gate;
    if (s == "per_circuit" || s == "per-circuit") return EnvironmentMode::per_circuit;
    throw PreconditionError("unknown environment mode '" + s + "' (expected per_gate or per_circuit)");
}

const char* to_string(EnvironmentMode m) { return m == EnvironmentMode::per_gate ? "per_gate" : "per_circuit"; }

double z_noiseless_exact(int d) { return std::cos(d * kPi); }

double z_miscalibrated_exact(double eps, int d) { return std::cos(d * (kPi + eps)); }

double z_environment_exact(double p_e, double eps, int d, EnvironmentMode mode) {
    if (mode == EnvironmentMode::per_gate) return std::pow(1.0 - 2.0 * p_e, d) * std::cos(d * (kPi + eps));
    return (1.0 - p_e) * std::cos(d * (kPi + eps)) + p_e * std::cos(d * eps);
}

namespace {

const PauliString& z1() {
    static const PauliString z = PauliString::from_string("Z");
    return z;
}

void require_depth(int d) { require(d >= 0, "noise: depth must be >= 0"); }

}  // namespace

std::vector<double> z_curve_noiseless(int d_max) { return z_curve_miscalibrated(0.0, d_max); }

std::vector<double> z_curve_miscalibrated(double eps, int d_max) {
    require_depth(d_max);
    const GateMatrix g = eps == 0.0 ? gates::X() : MiscalibrationModel{eps}.gate();
    std::vector<double> out;
    StateVector s(1);
    for (int d = 0; d <= d_max; ++d) {
        if (d > 0) s.apply(g, {0});
        out.push_back(expectation_pauli(s, z1()));
    }
    return out;
}

DensityMatrix environment_state(const EnvironmentChannel& env, double eps, int d, EnvironmentMode mode) {
    require_depth(d);
    env.validate();
    const GateMatrix g = MiscalibrationModel{eps}.gate();
    if (mode == EnvironmentMode::per_gate) {
        const KrausChannel ch = env.channel();
        DensityMatrix rho(1);
        for (int k = 0; k < d; ++k) {
            rho.apply_channel(ch, {0});
            rho.apply_unitary(g, {0});
        }
        return rho;
    }
    const GateMatrix gb = g * env.error();
    StateVector a(1), b(1);
    for (int k = 0; k < d; ++k) {
        a.apply(g, {0});
        b.apply(gb, {0});
    }
    DensityMatrix rho(a);
    rho.mix(1.0 - env.p_e, DensityMatrix(b), env.p_e);
    return rho;
}

std::vector<double> z_curve_environment(const EnvironmentChannel& env, double eps, int d_max, EnvironmentMode mode) {
    require_depth(d_max);
    std::vector<double> out;
    if (mode == EnvironmentMode::per_gate) {
        const KrausChannel ch = env.channel();
        const GateMatrix g = MiscalibrationModel{eps}.gate();
        DensityMatrix rho(1);
        for (int d = 0; d <= d_max; ++d) {
            if (d > 0) {
                rho.apply_channel(ch, {0});
                rho.apply_unitary(g, {0});
            }
            out.push_back(expectation_pauli(rho, z1()));
        }
        return out;
    }
    for (int d = 0; d <= d_max; ++d) out.push_back(expectation_pauli(environment_state(env, eps, d, mode), z1()));
    return out;
}

double z_environment_trajectories(const EnvironmentChannel& env, double eps, int d, EnvironmentMode mode,
                                  std::uint64_t shots, RandomSource& rng) {
    require_depth(d);
    require(shots >= 1, "z_environment_trajectories: shots must be >= 1");
    env.validate();
    const GateMatrix g = MiscalibrationModel{eps}.gate();
    const GateMatrix e = env.error();
    const RandomSource base = rng.fork(rng());
    double acc = 0.0;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        RandomSource r = base.fork(shot);
        StateVector s(1);
        const bool hit_all = mode == EnvironmentMode::per_circuit && r.bernoulli(env.p_e);
        for (int k = 0; k < d; ++k) {
            const bool hit = mode == EnvironmentMode::per_gate ? r.bernoulli(env.p_e) : hit_all;
            if (hit) s.apply(e, {0});
            s.apply(g, {0});
        }
        acc += expectation_pauli(s, z1());
    }
    return acc / static_cast<double>(shots);
}

double sample_polarization(double p_d, std::uint64_t n_shots, RandomSource& rng) {
    require(p_d >= 0.0 && p_d <= 1.0, "sample_polarization: p must lie in [0,1]");
    require(n_shots >= 1, "sample_polarization: N must be >= 1");
    const std::uint64_t ones = count_successes(rng.fork(rng()), p_d, n_shots);
    return static_cast<double>(ones) / static_cast<double>(n_shots);
}

double sample_polarization(double p_d, const SamplingPlan& plan) {
    RandomSource rng(plan.seed);
    return sample_polarization(p_d, plan.n_shots, rng);
}

std::vector<double> sampling_distribution(double p_d, std::uint64_t n_shots) {
    require(p_d >= 0.0 && p_d <= 1.0, "sampling_distribution: p must lie in [0,1]");
    require(n_shots >= 1 && n_shots <= 100000, "sampling_distribution: N out of range");
    std::vector<double> pmf(n_shots + 1);
    const double n = static_cast<double>(n_shots);
    for (std::uint64_t k = 0; k <= n_shots; ++k) {
        const double kk = static_cast<double>(k);
        const double logc = std::lgamma(n + 1) - std::lgamma(kk + 1) - std::lgamma(n - kk + 1);
        double v = 0.0;
        if (p_d == 0.0) v = k == 0 ? 1.0 : 0.0;
        else if (p_d == 1.0) v = k == n_shots ? 1.0 : 0.0;
        else v = std::exp(logc + kk * std::log(p_d) + (n - kk) * std::log1p(-p_d));
        pmf[k] = v;
    }
    return pmf;
}

MeasurementErrorModel calibrate_measurement(std::uint64_t shots, double true_mu, double true_nu, RandomSource& rng) {
    require(shots >= 1, "calibrate_measurement: shots must be >= 1");
    MeasurementErrorModel truth{true_mu, true_nu};
    truth.validate();
    // The |0> circuit reads 1 with probability mu; the |1> circuit reads 0 with probability nu.
    const std::uint64_t flips0 = count_successes(rng.fork(rng()), true_mu, shots);
    const std::uint64_t flips1 = count_successes(rng.fork(rng()), true_nu, shots);
    return MeasurementErrorModel{static_cast<double>(flips0) / static_cast<double>(shots),
                                 static_cast<double>(flips1) / static_cast<double>(shots)};
}

std::vector<NoisyPoint> z_curve_full(double eps, const EnvironmentChannel& env, const MeasurementErrorModel& model,
                                     const SamplingPlan& plan, int d_max, EnvironmentMode mode) {
    require_depth(d_max);
    require(plan.n_shots >= 1, "z_curve_full: N must be >= 1");
    model.validate();
    const std::vector<double> z = z_curve_environment(env, eps, d_max, mode);
    const RandomSource base(plan.seed, 0x6e6f697365ULL);
    std::vector<NoisyPoint> out;
    for (int d = 0; d <= d_max; ++d) {
        NoisyPoint pt;
        pt.depth = d;
        pt.z_exact = z[static_cast<std::size_t>(d)];
        pt.p_one = std::clamp(0.5 * (1.0 - pt.z_exact), 0.0, 1.0);
        RandomSource r = base.fork(static_cast<std::uint64_t>(d));
        pt.s_sampled = sample_polarization(pt.p_one, plan.n_shots, r);
        pt.z_sampled = 1.0 - 2.0 * pt.s_sampled;
        pt.z_biased = 1.0 - 2.0 * model.apply(pt.s_sampled);
        out.push_back(pt);
    }
    return out;
}

KrausChannel pauli_channel(const std::array<double, 4>& lambdas) {
    double total = 0.0;
    for (double l : lambdas) {
        require(l >= 0.0, "pauli_channel: lambdas must be non-negative");
        total += l;
    }
    require(std::abs(total - 1.0) < 1e-12, "pauli_channel: lambdas must sum to 1");
    std::vector<Matrix> ops;
    for (int a = 0; a < 4; ++a) ops.push_back(std::sqrt(lambdas[static_cast<std::size_t>(a)]) * pauli(a));
    return KrausChannel(std::move(ops));
}

}  // namespace qlab
