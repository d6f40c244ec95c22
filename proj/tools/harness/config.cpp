#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "harness.hpp"

namespace qlab::harness {

namespace {

ParamSpec real_param(std::string key, std::string def, std::string help, double lo, double hi) {
    return {std::move(key), ParamType::real, std::move(def), std::move(help), lo, hi, {}};
}

ParamSpec int_param(std::string key, std::string def, std::string help, double lo, double hi) {
    return {std::move(key), ParamType::integer, std::move(def), std::move(help), lo, hi, {}};
}

ParamSpec choice_param(std::string key, std::string def, std::string help, std::vector<std::string> choices) {
    return {std::move(key), ParamType::choice, std::move(def), std::move(help), -1e300, 1e300, std::move(choices)};
}

ParamSpec text_param(std::string key, std::string def, std::string help) {
    return {std::move(key), ParamType::text, std::move(def), std::move(help), -1e300, 1e300, {}};
}

ParamSpec list_param(std::string key, ParamType type, std::string def, std::string help, double lo, double hi) {
    return {std::move(key), type, std::move(def), std::move(help), lo, hi, {}};
}

std::vector<ParamSpec> problem_params(const std::string& numbers, const std::string& target) {
    return {choice_param("problem", "subset", "Ising encoding of the number problem", {"subset", "partition"}),
            list_param("numbers", ParamType::integer_list, numbers, "comma-separated integers", -1e12, 1e12),
            int_param("target", target, "subset-sum target m (ignored for partition)", -1e12, 1e12)};
}

std::vector<Schema> build_schemas() {
    std::vector<Schema> s;
    s.push_back({"noise-sweep", "noise-sweep", "<Z> of the X^d circuit under miscalibration, environment, sampling and readout noise",
                 {real_param("eps", "0.1", "over-rotation per gate (rad)", -3.141592653589793, 3.141592653589793),
                  real_param("pE", "0.007", "environment error probability", 0, 1),
                  real_param("mu", "0.03", "P(read 1 | 0)", 0, 1), real_param("nu", "0.07", "P(read 0 | 1)", 0, 1),
                  int_param("N", "10", "shots per depth", 1, 1e9), int_param("dmax", "80", "largest depth", 0, 100000),
                  choice_param("mode", "per_gate", "environment correlation", {"per_gate", "per_circuit"})}});
    s.push_back({"qec-bench", "qec bench", "failure probability of a code: analytic vs Monte Carlo",
                 {choice_param("code", "bitflip", "code under test", {"bitflip", "phaseflip", "shor", "repetition", "concatenated"}),
                  list_param("eps", ParamType::real_list, "0.05,0.1,0.2,0.3,0.5", "physical error probabilities", 0, 1),
                  int_param("trials", "100000", "Monte-Carlo trials per point", 1, 1e9),
                  int_param("k", "3", "copies for the repetition code (odd)", 1, 99),
                  int_param("levels", "2", "concatenation levels", 0, 6),
                  choice_param("model", "auto", "error model: auto, X, Z or D (depolarizing)", {"auto", "X", "Z", "D"})}});
    s.push_back({"qec-stabilizers", "qec stabilizers", "sector partition for a stabilizer group and operator classification",
                 {text_param("generators", "ZZI;IZZ", "generators separated by ';'"),
                  text_param("ops", "", "operators to classify, separated by ';' (empty: partition report)")}});
    s.push_back({"qpe", "qpe", "phase estimation of U = diag(1, e^{2 pi i phi}) on |1>",
                 {real_param("phi", "0.640625", "phase in [0,1)", 0, 1), int_param("bits", "6", "precision bits", 1, 12),
                  choice_param("method", "kitaev", "bitwise (kitaev) or inverse-QFT register (qft)", {"kitaev", "qft"}),
                  int_param("shots", "0", "shots per bit for kitaev (0 = exact probabilities)", 0, 1e9)}});
    s.push_back({"hhl", "hhl", "HHL on random Hermitian systems with exactly representable spectra",
                 {int_param("size", "1", "qubits in the b register", 1, 3), int_param("bits", "4", "eigenvalue register bits", 2, 8),
                  int_param("systems", "5", "number of random systems", 1, 1000)}});
    s.push_back({"teleport", "teleport", "teleportation of random states", {int_param("trials", "10", "random input states", 1, 1000000)}});
    s.push_back({"densecode", "densecode", "superdense coding of every two-bit message",
                 {int_param("shots", "100", "repetitions per message", 1, 1000000)}});
    s.push_back({"ising-encode", "ising encode", "Ising encoding of subset-sum or partitioning, enumerated exhaustively",
                 problem_params("-5,-3,1,4,9", "7")});
    {
        Schema a{"anneal", "anneal", "adiabatic annealing success probability versus total time", problem_params("-5,-3,1,4,9", "7")};
        a.params.push_back(list_param("tau", ParamType::real_list, "0.5,1,2,5,10", "total annealing times", 1e-6, 1e4));
        a.params.push_back(int_param("steps", "0", "time steps (0 = ceil(1000 tau))", 0, 10000000));
        s.push_back(a);
    }
    {
        Schema q{"qaoa", "qaoa", "QAOA optimization trace (best energy so far)", problem_params("-5,-3,1,4,9", "7")};
        q.params.push_back(int_param("p", "2", "QAOA depth", 1, 20));
        q.params.push_back(int_param("budget", "300", "energy evaluations", 1, 1000000));
        s.push_back(q);
    }
    s.push_back({"zne", "zne", "zero-noise extrapolation on a folded depolarizing backend",
                 {real_param("lambda", "0.005", "depolarizing strength per step", 0, 1), int_param("depth", "10", "Ry layers", 1, 100000),
                  real_param("e0", "0.6", "noiseless <Z>", -1, 1),
                  list_param("scales", ParamType::integer_list, "1,2,3", "integer noise scale factors", 1, 1000),
                  int_param("shots", "100000", "shots per scale", 1, 1e9)}});
    s.push_back({"pec", "pec", "probabilistic error cancellation on the X^d circuit",
                 {list_param("lambdas", ParamType::real_list, "0.8,0.2,0,0", "Pauli channel weights l0,lx,ly,lz", 0, 1),
                  int_param("depth", "4", "number of X gates", 1, 1000), int_param("shots", "100000", "shots", 2, 1e9)}});
    s.push_back({"dd", "dd", "decoherence factor with and without dynamical decoupling",
                 {text_param("bath", "", "bath file (empty = built-in 3-mode bath)"),
                  real_param("total_time", "10", "total evolution time 2 N dt", 1e-9, 1e6),
                  real_param("dt0", "1", "initial pulse spacing; total_time / (2 dt0) must be an integer", 1e-9, 1e6),
                  int_param("halvings", "8", "number of times dt is halved", 0, 30)}});
    s.push_back({"reproduce", "reproduce", "write every figure table into a directory",
                 {text_param("out", "qlab-figures", "output directory (overridden by --output)")}});
    s.push_back({"help", "help", "show usage", {text_param("topic", "", "subcommand to describe")}});
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) out.push_back(trim(cur));
    return out;
}

bool parse_ll(const std::string& s, long long& v) {
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    v = std::strtoll(s.c_str(), &end, 10);
    return errno == 0 && end == s.c_str() + s.size();
}

bool parse_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(v);
}

void check_number(const ParamSpec& p, const std::string& path, double v) {
    if (v < p.min || v > p.max) {
        throw ConfigError(path, "value " + format_real(v) + " outside [" + format_real(p.min) + ", " + format_real(p.max) + "]");
    }
}

void check_value(const ParamSpec& p, const std::string& path, const std::string& raw) {
    switch (p.type) {
        case ParamType::integer: {
            long long v = 0;
            if (!parse_ll(raw, v)) throw ConfigError(path, "expected an integer, got '" + raw + "'");
            check_number(p, path, static_cast<double>(v));
            break;
        }
        case ParamType::real: {
            double v = 0;
            if (!parse_double(raw, v)) throw ConfigError(path, "expected a real number, got '" + raw + "'");
            check_number(p, path, v);
            break;
        }
        case ParamType::choice:
            if (std::find(p.choices.begin(), p.choices.end(), raw) == p.choices.end()) {
                std::string opts;
                for (const auto& c : p.choices) opts += (opts.empty() ? "" : ", ") + c;
                throw ConfigError(path, "expected one of {" + opts + "}, got '" + raw + "'");
            }
            break;
        case ParamType::text: break;
        case ParamType::real_list:
        case ParamType::integer_list: {
            const auto items = split_list(raw);
            if (items.empty() || raw.empty()) throw ConfigError(path, "expected a non-empty comma-separated list");
            for (std::size_t i = 0; i < items.size(); ++i) {
                const std::string ip = path + "[" + std::to_string(i) + "]";
                if (p.type == ParamType::integer_list) {
                    long long v = 0;
                    if (!parse_ll(items[i], v)) throw ConfigError(ip, "expected an integer, got '" + items[i] + "'");
                    check_number(p, ip, static_cast<double>(v));
                } else {
                    double v = 0;
                    if (!parse_double(items[i], v)) throw ConfigError(ip, "expected a real number, got '" + items[i] + "'");
                    check_number(p, ip, v);
                }
            }
            break;
        }
    }
}

}  // namespace

const ParamSpec* Schema::find(const std::string& key) const {
    for (const ParamSpec& p : params)
        if (p.key == key) return &p;
    return nullptr;
}

const std::vector<Schema>& schemas() {
    static const std::vector<Schema> s = build_schemas();
    return s;
}

const Schema& schema_for(const std::string& subcommand) {
    for (const Schema& s : schemas())
        if (s.id == subcommand || s.display == subcommand) return s;
    throw ConfigError("", "unknown subcommand '" + subcommand + "'");
}

ValidatedConfig::ValidatedConfig(const Schema& schema, std::map<std::string, std::string> values, std::uint64_t seed)
    : schema_(&schema), values_(std::move(values)), seed_(seed) {}

bool ValidatedConfig::has(const std::string& key) const {
    const auto it = values_.find(key);
    return it != values_.end() && !it->second.empty();
}

const std::string& ValidatedConfig::text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(schema_->id + "." + key, "missing parameter");
    return it->second;
}

long long ValidatedConfig::integer(const std::string& key) const {
    long long v = 0;
    if (!parse_ll(text(key), v)) throw ConfigError(schema_->id + "." + key, "not an integer");
    return v;
}

double ValidatedConfig::real(const std::string& key) const {
    double v = 0;
    if (!parse_double(text(key), v)) throw ConfigError(schema_->id + "." + key, "not a real number");
    return v;
}

std::vector<double> ValidatedConfig::reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(text(key))) {
        double v = 0;
        parse_double(item, v);
        out.push_back(v);
    }
    return out;
}

std::vector<long long> ValidatedConfig::integers(const std::string& key) const {
    std::vector<long long> out;
    for (const auto& item : split_list(text(key))) {
        long long v = 0;
        parse_ll(item, v);
        out.push_back(v);
    }
    return out;
}

ValidatedConfig validate(const ExperimentConfig& config) {
    const Schema& schema = schema_for(config.subcommand);
    std::map<std::string, std::string> values;
    for (const auto& [key, raw] : config.params) {
        const ParamSpec* p = schema.find(key);
        if (!p) throw ConfigError(schema.id + "." + key, "unknown parameter");
        const std::string v = trim(raw);
        if (!(p->type == ParamType::text && v.empty())) check_value(*p, schema.id + "." + key, v);
        values[key] = v;
    }
    for (const ParamSpec& p : schema.params)
        if (!values.count(p.key)) values[p.key] = p.default_value;
    return ValidatedConfig(schema, std::move(values), config.seed);
}

std::map<std::string, std::string> parse_config_text(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError(origin + ":" + std::to_string(lineno), "expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("QLAB_SEED");
    if (!env || !*env) return kDefaultSeed;
    long long v = 0;
    if (!parse_ll(env, v) || v < 0) throw ConfigError("QLAB_SEED", std::string("expected a non-negative integer, got '") + env + "'");
    return static_cast<std::uint64_t>(v);
}

}  // namespace qlab::harness
