#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "detail.hpp"
#include "harness.hpp"
#include "qlab/algorithms/hhl.hpp"
#include "qlab/algorithms/protocols.hpp"
#include "qlab/algorithms/qpe.hpp"
#include "qlab/core/gates.hpp"
#include "qlab/ising/anneal.hpp"
#include "qlab/ising/model.hpp"
#include "qlab/ising/qaoa.hpp"
#include "qlab/mitigation/pec.hpp"
#include "qlab/mitigation/zne.hpp"
#include "qlab/noise/noise.hpp"
#include "qlab/qec/analytic.hpp"
#include "qlab/qec/codes.hpp"
#include "qlab/qec/stabilizer.hpp"

namespace qlab::harness {

namespace detail {

BathSpec default_bath() {
    BathSpec b;
    b.modes = {{0.10, 0.8}, {0.08, 1.0}, {0.12, 1.3}};
    b.beta = 2.0;
    return b;
}

void stamp(ResultTable& t, const ValidatedConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> meta = {{"tool", kToolName},
                                                              {"version", kToolVersion},
                                                              {"subcommand", cfg.schema().id},
                                                              {"seed", std::to_string(cfg.seed())}};
    for (const auto& [k, v] : cfg.values()) meta.emplace_back("config." + k, v);
    meta.insert(meta.end(), t.metadata.begin(), t.metadata.end());
    t.metadata = std::move(meta);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) { return RandomSource(seed).fork(index)(); }

}  // namespace detail

namespace {

std::string bit_string(std::uint64_t z, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += ((z >> (n - 1 - i)) & 1U) ? '1' : '0';
    return s;
}

std::string short_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string amplitude_string(cplx a) {
    if (std::abs(a.imag()) < 1e-12) return short_real(a.real());
    if (std::abs(a.real()) < 1e-12) return short_real(a.imag()) + "i";
    return "(" + short_real(a.real()) + (a.imag() < 0 ? "" : "+") + short_real(a.imag()) + "i)";
}

std::string ket_string(const Vector& v, int n) {
    std::string s;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v[k]) < 1e-10) continue;
        if (!s.empty()) s += " + ";
        s += amplitude_string(v[k]) + "|" + bit_string(static_cast<std::uint64_t>(k), n) + ">";
    }
    return s;
}

std::string join_reals(const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + format_real(x);
    return s;
}

IsingModel problem_model(const ValidatedConfig& cfg, int max_n) {
    const std::vector<long long> ns = cfg.integers("numbers");
    const std::string key = cfg.schema().id + ".numbers";
    if (static_cast<int>(ns.size()) > max_n) throw ConfigError(key, "at most " + std::to_string(max_n) + " numbers");
    if (cfg.text("problem") == "partition") return partition_to_ising(ns);
    return subset_sum_to_ising(cfg.integer("target"), ns);
}

ResultTable cmd_noise_sweep(const ValidatedConfig& cfg) {
    EnvironmentChannel env;
    env.p_e = cfg.real("pE");
    const MeasurementErrorModel readout{cfg.real("mu"), cfg.real("nu")};
    const SamplingPlan plan{static_cast<std::uint64_t>(cfg.integer("N")), cfg.seed()};
    const auto points = z_curve_full(cfg.real("eps"), env, readout, plan, static_cast<int>(cfg.integer("dmax")),
                                     parse_environment_mode(cfg.text("mode")));
    ResultTable t;
    t.columns = {"depth", "z_exact", "z_sampled", "z_biased"};
    for (const NoisyPoint& p : points) t.add_row({static_cast<long long>(p.depth), p.z_exact, p.z_sampled, p.z_biased});
    return t;
}

ResultTable cmd_qec_bench(const ValidatedConfig& cfg) {
    const std::string code = cfg.text("code");
    const auto trials = static_cast<std::uint64_t>(cfg.integer("trials"));
    const int k = static_cast<int>(cfg.integer("k"));
    const int levels = static_cast<int>(cfg.integer("levels"));
    if (code == "repetition" && k % 2 == 0) throw ConfigError("qec-bench.k", "must be odd");
    char model = cfg.text("model")[0];
    if (model == 'a') model = code == "phaseflip" ? 'Z' : code == "shor" ? 'D' : 'X';

    const RandomSource base(cfg.seed(), 0x716563ULL);
    ResultTable t;
    t.columns = {"eps", "analytic", "sampled", "std_error"};
    const auto eps_list = cfg.reals("eps");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        const double eps = eps_list[i];
        RandomSource r = base.fork(i);
        double analytic = 0.0;
        FailureEstimate f;
        if (code == "repetition") {
            analytic = pfail_repetition(k, eps);
            f = sample_repetition(k, eps, trials, r);
        } else if (code == "concatenated") {
            analytic = pfail_concatenated(levels, eps).exact;
            f = sample_concatenated(levels, eps, trials, r);
        } else {
            const CodeSpec spec = code_by_name(code);
            analytic = code_failure_exact(spec, eps, model);
            f = sample_code_failure(spec, eps, model, trials, r);
        }
        t.add_row({eps, analytic, f.estimate, f.std_error});
    }
    t.metadata.emplace_back("result.model", std::string(1, model));
    return t;
}

std::vector<std::string> split_ops(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ';' || c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

ResultTable cmd_qec_stabilizers(const ValidatedConfig& cfg) {
    StabilizerGroup group;
    try {
        group = StabilizerGroup::parse(cfg.text("generators"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("qec-stabilizers.generators", e.what());
    }
    ResultTable t;
    const int n = group.n_qubits();
    if (!cfg.has("ops")) {
        if (n > 12) throw ConfigError("qec-stabilizers.generators", "partition report supports at most 12 qubits");
        t.columns = {"syndrome", "eigenvalues", "dimension", "basis"};
        for (const StabilizerSector& s : partition_by_stabilizers(group)) {
            std::string signs;
            for (int b : s.syndrome) signs += b ? '-' : '+';
            std::string basis;
            for (Eigen::Index c = 0; c < s.basis.cols(); ++c)
                basis += (c ? "; " : "") + ket_string(s.basis.col(c), n);
            t.add_row({syndrome_to_string(s.syndrome), signs, static_cast<long long>(s.basis.cols()), basis});
        }
        return t;
    }
    t.columns = {"operator", "class", "syndrome"};
    for (const std::string& op : split_ops(cfg.text("ops"))) {
        PauliString p;
        try {
            p = PauliString::from_string(op);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("qec-stabilizers.ops", e.what());
        }
        if (p.n_qubits() != n) throw ConfigError("qec-stabilizers.ops", "operator '" + op + "' has the wrong length");
        const Classification c = classify_operator(p, group);
        t.add_row({op, std::string(to_string(c.kind)), syndrome_to_string(c.syndrome)});
    }
    return t;
}

ResultTable cmd_qpe(const ValidatedConfig& cfg) {
    const double phi = cfg.real("phi");
    const int bits = static_cast<int>(cfg.integer("bits"));
    const GateMatrix u = gates::phase(2.0 * kPi * phi);
    const StateVector psi = StateVector::basis(1, 1);
    RandomSource rng(cfg.seed());
    ResultTable t;
    if (cfg.text("method") == "kitaev") {
        const PhaseEstimate e = qpe_kitaev(u, psi, bits, static_cast<std::uint64_t>(cfg.integer("shots")), rng);
        t.columns = {"position", "bit"};
        for (std::size_t i = 0; i < e.bits.size(); ++i)
            t.add_row({static_cast<long long>(i + 1), static_cast<long long>(e.bits[i])});
        t.metadata.emplace_back("result.phi_hat", format_real(e.phi_hat));
        t.metadata.emplace_back("result.shots_used", std::to_string(e.shots_used));
        return t;
    }
    const QpeOutput out = qpe_n(u, psi, bits);
    t.columns = {"k", "register", "phase", "probability"};
    const double scale = std::ldexp(1.0, bits);
    for (std::size_t k = 0; k < out.register_probabilities.size(); ++k)
        t.add_row({static_cast<long long>(k), bit_string(k, bits), static_cast<double>(k) / scale,
                   out.register_probabilities[k]});
    t.metadata.emplace_back("result.phi_hat", format_real(out.estimate.phi_hat));
    return t;
}

ResultTable cmd_hhl(const ValidatedConfig& cfg) {
    const int nb = static_cast<int>(cfg.integer("size"));
    HhlOptions opts;
    opts.precision_bits = static_cast<int>(cfg.integer("bits"));
    const RandomSource base(cfg.seed(), 0x68686cULL);
    ResultTable t;
    t.columns = {"system", "fidelity", "p_success", "register_fidelity", "attempts"};
    for (long long s = 0; s < cfg.integer("systems"); ++s) {
        RandomSource r = base.fork(static_cast<std::uint64_t>(s));
        const LinearSystem sys = random_exact_system(nb, opts.precision_bits, r);
        const HhlResult res = hhl(sys, opts, r);
        const double fid = std::norm(classical_solution(sys).dot(res.x_hat.amplitudes()));
        t.add_row({s, fid, res.p_success, res.register_fidelity, static_cast<long long>(res.attempts)});
    }
    return t;
}

ResultTable cmd_teleport(const ValidatedConfig& cfg) {
    const RandomSource base(cfg.seed(), 0x74656cULL);
    ResultTable t;
    t.columns = {"trial", "m0", "m1", "fidelity"};
    for (long long i = 0; i < cfg.integer("trials"); ++i) {
        RandomSource r = base.fork(static_cast<std::uint64_t>(i));
        const StateVector psi = StateVector::random(1, r);
        const TeleportResult res = teleport(psi, r);
        t.add_row({i, static_cast<long long>(res.m0), static_cast<long long>(res.m1), fidelity(res.output, psi)});
    }
    return t;
}

ResultTable cmd_densecode(const ValidatedConfig& cfg) {
    const auto shots = cfg.integer("shots");
    const RandomSource base(cfg.seed(), 0x646373ULL);
    ResultTable t;
    t.columns = {"x", "y", "shots", "correct", "success_rate"};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            RandomSource r = base.fork(static_cast<std::uint64_t>(2 * x + y));
            long long ok = 0;
            for (long long s = 0; s < shots; ++s) ok += dense_coding(x, y, r) == std::make_pair(x, y);
            t.add_row({static_cast<long long>(x), static_cast<long long>(y), shots, ok,
                       static_cast<double>(ok) / static_cast<double>(shots)});
        }
    }
    return t;
}

ResultTable cmd_ising_encode(const ValidatedConfig& cfg) {
    const IsingModel model = problem_model(cfg, 16);
    const std::vector<long long> ns = cfg.integers("numbers");
    const IsingGround ground = brute_force_ground(model);
    const int n = model.n();
    ResultTable t;
    t.columns = {"z", "bits", "subset", "cost", "ground"};
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        std::string subset = "{";
        for (int i : selected_indices(z, n)) subset += (subset.size() > 1 ? " " : "") + std::to_string(ns[static_cast<std::size_t>(i)]);
        subset += "}";
        const bool is_ground = std::find(ground.states.begin(), ground.states.end(), z) != ground.states.end();
        t.add_row({static_cast<long long>(z), bit_string(z, n), subset, model.cost(z), static_cast<long long>(is_ground)});
    }
    t.metadata.emplace_back("result.ground_energy", format_real(ground.energy));
    return t;
}

ResultTable cmd_anneal(const ValidatedConfig& cfg) {
    const IsingModel model = problem_model(cfg, 10);
    ResultTable t;
    t.columns = {"tau", "steps", "p_success", "min_gap", "trotter_error", "repetitions_99"};
    for (double tau : cfg.reals("tau")) {
        const Schedule sched = Schedule::linear(tau, static_cast<int>(cfg.integer("steps")));
        const AnnealResult r = anneal(model, sched);
        double reps = std::numeric_limits<double>::infinity();
        if (r.p_success >= 1.0) reps = 1.0;
        else if (r.p_success > 0.0) reps = repetitions_for_target(r.p_success);
        t.add_row({tau, static_cast<long long>(sched.resolved_steps()), r.p_success, r.min_gap, r.trotter_error_estimate, reps});
    }
    return t;
}

ResultTable cmd_qaoa(const ValidatedConfig& cfg) {
    const IsingModel model = problem_model(cfg, 12);
    RandomSource rng(cfg.seed());
    const QaoaResult r = qaoa_optimize(model, static_cast<int>(cfg.integer("p")),
                                       static_cast<std::uint64_t>(cfg.integer("budget")), rng);
    ResultTable t;
    t.columns = {"evaluation", "best_energy"};
    for (std::size_t i = 0; i < r.trace.size(); ++i) t.add_row({static_cast<long long>(i + 1), r.trace[i]});
    t.metadata.emplace_back("result.energy", format_real(r.energy));
    t.metadata.emplace_back("result.gamma", join_reals(r.best.gamma));
    t.metadata.emplace_back("result.beta", join_reals(r.best.beta));
    t.metadata.emplace_back("result.ground_energy", format_real(brute_force_ground(model).energy));
    return t;
}

ResultTable cmd_zne(const ValidatedConfig& cfg) {
    std::vector<double> scales;
    for (long long c : cfg.integers("scales")) scales.push_back(static_cast<double>(c));
    if (scales.size() < 2) throw ConfigError("zne.scales", "need at least two scale factors");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (scales[i] <= scales[i - 1]) throw ConfigError("zne.scales", "must be strictly increasing");
    const double lambda = cfg.real("lambda");
    const auto backend = FoldedDepolarizingBackend::with_noiseless_value(lambda, static_cast<int>(cfg.integer("depth")),
                                                                         cfg.real("e0"));
    RandomSource rng(cfg.seed());
    const EstimatorSeries series = folded_series(backend, scales, static_cast<std::uint64_t>(cfg.integer("shots")), rng);
    const LinearFit lin = zne_linear(series);
    const RichardsonFit rich = zne_richardson(series);
    const double point_se = series.sigma0 / std::sqrt(static_cast<double>(series.n_sample));
    ResultTable t;
    t.columns = {"kind", "scale", "lambda", "estimate", "std_error", "exact"};
    for (std::size_t j = 0; j < scales.size(); ++j)
        t.add_row({std::string("point"), scales[j], scales[j] * lambda, series.estimates[j], point_se,
                   backend.exact(static_cast<int>(scales[j]))});
    t.add_row({std::string("linear"), 0.0, 0.0, lin.intercept, std::sqrt(lin.variance), backend.noiseless()});
    t.add_row({std::string("richardson"), 0.0, 0.0, rich.estimate, std::sqrt(rich.variance), backend.noiseless()});
    return t;
}

ResultTable cmd_pec(const ValidatedConfig& cfg) {
    const auto l = cfg.reals("lambdas");
    if (l.size() != 4) throw ConfigError("pec.lambdas", "expected four weights l0,lx,ly,lz");
    double sum = 0.0;
    for (double v : l) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("pec.lambdas", "weights must sum to 1");
    const std::array<double, 4> lambdas{l[0] / sum, l[1] / sum, l[2] / sum, l[3] / sum};
    RandomSource rng(cfg.seed());
    const PecResult r = pec_mitigate(x_chain(static_cast<int>(cfg.integer("depth"))), lambdas,
                                     static_cast<std::uint64_t>(cfg.integer("shots")), rng);
    ResultTable t;
    t.columns = {"kind", "estimate", "std_error", "gamma_total", "noiseless"};
    t.add_row({std::string("mitigated"), r.mitigated, r.mitigated_stderr, r.gamma_total, r.noiseless});
    t.add_row({std::string("unmitigated"), r.unmitigated, r.unmitigated_stderr, 1.0, r.noiseless});
    return t;
}

BathSpec load_bath(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("dd.bath", "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return BathSpec::parse(buf.str());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("dd.bath", path + ": " + e.what());
    }
}

ResultTable cmd_dd(const ValidatedConfig& cfg) {
    const BathSpec bath = cfg.has("bath") ? load_bath(cfg.text("bath")) : detail::default_bath();
    const double total = cfg.real("total_time");
    const double dt0 = cfg.real("dt0");
    const double cycles = total / (2.0 * dt0);
    const double n0 = std::round(cycles);
    if (n0 < 1.0 || std::abs(cycles - n0) > 1e-9 * cycles)
        throw ConfigError("dd.dt0", "total_time / (2 dt0) must be a positive integer");
    const int halvings = static_cast<int>(cfg.integer("halvings"));
    if (std::ldexp(n0, halvings) > 1e8) throw ConfigError("dd.halvings", "too many pulse cycles");
    const double free = gamma_free(bath, 0.0, total);
    ResultTable t;
    t.columns = {"dt", "n_cycles", "gamma_free", "gamma_pulsed", "ratio"};
    for (int k = 0; k <= halvings; ++k) {
        PulseSequence seq;
        seq.dt = std::ldexp(dt0, -k);
        seq.n_cycles = static_cast<int>(std::ldexp(n0, k));
        const double g = gamma_pulsed(bath, seq);
        t.add_row({seq.dt, static_cast<long long>(seq.n_cycles), free, g, free > 0 ? g / free : 0.0});
    }
    return t;
}

using Command = std::function<ResultTable(const ValidatedConfig&)>;

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> m = {
        {"noise-sweep", cmd_noise_sweep}, {"qec-bench", cmd_qec_bench},   {"qec-stabilizers", cmd_qec_stabilizers},
        {"qpe", cmd_qpe},                 {"hhl", cmd_hhl},               {"teleport", cmd_teleport},
        {"densecode", cmd_densecode},     {"ising-encode", cmd_ising_encode}, {"anneal", cmd_anneal},
        {"qaoa", cmd_qaoa},               {"zne", cmd_zne},               {"pec", cmd_pec},
        {"dd", cmd_dd}};
    return m;
}

}  // namespace

ResultTable run(const ExperimentConfig& config) {
    const ValidatedConfig cfg = validate(config);
    const auto it = commands().find(cfg.schema().id);
    if (it == commands().end())
        throw ConfigError("", "'" + cfg.schema().display + "' does not produce a single table");
    ResultTable t;
    try {
        t = it->second(cfg);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(cfg.schema().display + ": " + e.what());
    }
    t.name = cfg.schema().id;
    detail::stamp(t, cfg);
    return t;
}

std::string usage() {
    std::ostringstream s;
    s << "usage: " << kToolName << " <subcommand> [--key value ...] [--config FILE] [--seed N] [--output PATH]\n\n"
      << "subcommands:\n";
    for (const Schema& sc : schemas()) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-16s %s\n", sc.display.c_str(), sc.summary.c_str());
        s << line;
    }
    s << "\nRun '" << kToolName << " help <subcommand>' for its parameters. QLAB_SEED sets the default seed.\n";
    return s.str();
}

std::string help_for(const std::string& subcommand) {
    const Schema& sc = schema_for(subcommand);
    std::ostringstream s;
    s << kToolName << ' ' << sc.display << " - " << sc.summary << "\n\nparameters:\n";
    for (const ParamSpec& p : sc.params) {
        s << "  --" << p.key << " (default '" << p.default_value << "')  " << p.help;
        if (!p.choices.empty()) {
            s << " [";
            for (std::size_t i = 0; i < p.choices.size(); ++i) s << (i ? "|" : "") << p.choices[i];
            s << ']';
        }
        s << '\n';
    }
    return s.str();
}

}  // namespace qlab::harness
