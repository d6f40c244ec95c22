#include <cmath>
#include <filesystem>
#include <fstream>

#include "detail.hpp"
#include "harness.hpp"
#include "qlab/noise/noise.hpp"
#include "qlab/qec/analytic.hpp"

namespace qlab::harness {

namespace {

struct TableJob {
    std::string name;
    std::function<ResultTable(std::uint64_t)> make;
};

ResultTable from_subcommand(const std::string& name, const std::string& sub, std::map<std::string, std::string> params,
                            std::uint64_t seed) {
    ExperimentConfig c;
    c.subcommand = sub;
    c.params = std::move(params);
    c.seed = seed;
    ResultTable t = run(c);
    t.name = name;
    return t;
}

std::function<ResultTable(std::uint64_t)> noise_job(const std::string& name, std::map<std::string, std::string> p) {
    return [name, p](std::uint64_t seed) { return from_subcommand(name, "noise-sweep", p, seed); };
}

void stamp_custom(ResultTable& t, std::uint64_t seed, std::vector<std::pair<std::string, std::string>> params) {
    std::vector<std::pair<std::string, std::string>> meta = {
        {"tool", kToolName}, {"version", kToolVersion}, {"subcommand", "reproduce"}, {"seed", std::to_string(seed)}};
    for (auto& kv : params) meta.emplace_back("param." + kv.first, kv.second);
    t.metadata = std::move(meta);
}

std::vector<double> eps_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(0.05 * i);
    return g;
}

ResultTable binomial_table(std::uint64_t seed) {
    constexpr std::uint64_t kShots = 10;
    constexpr int kRepeats = 10000;
    ResultTable t;
    t.name = "binomial_histogram";
    t.columns = {"N", "p", "k", "s", "probability", "empirical"};
    const RandomSource base(seed, 0x62696eULL);
    const double ps[] = {0.1, 0.5, 0.9};
    for (std::size_t i = 0; i < 3; ++i) {
        const double p = ps[i];
        const auto pmf = sampling_distribution(p, kShots);
        std::vector<long long> hits(kShots + 1, 0);
        RandomSource r = base.fork(i);
        for (int rep = 0; rep < kRepeats; ++rep)
            ++hits[static_cast<std::size_t>(std::llround(sample_polarization(p, kShots, r) * kShots))];
        for (std::uint64_t k = 0; k <= kShots; ++k)
            t.add_row({static_cast<long long>(kShots), p, static_cast<long long>(k), static_cast<double>(k) / kShots,
                       pmf[k], static_cast<double>(hits[k]) / kRepeats});
    }
    stamp_custom(t, seed, {{"N", "10"}, {"repeats", "10000"}, {"p", "0.1,0.5,0.9"}});
    return t;
}

ResultTable repetition_table(std::uint64_t seed) {
    constexpr std::uint64_t kTrials = 10000;
    ResultTable t;
    t.name = "pfail_repetition";
    t.columns = {"k", "eps", "analytic", "sampled", "std_error"};
    const RandomSource base(seed, 0x726570ULL);
    std::uint64_t stream = 0;
    for (int k = 1; k <= 9; k += 2) {
        for (double eps : eps_grid()) {
            RandomSource r = base.fork(stream++);
            const FailureEstimate f = sample_repetition(k, eps, kTrials, r);
            t.add_row({static_cast<long long>(k), eps, pfail_repetition(k, eps), f.estimate, f.std_error});
        }
    }
    stamp_custom(t, seed, {{"k", "1,3,5,7,9"}, {"trials", "10000"}});
    return t;
}

ResultTable concatenation_table(std::uint64_t seed) {
    constexpr std::uint64_t kTrials = 10000;
    ResultTable t;
    t.name = "pfail_concatenated";
    t.columns = {"levels", "eps", "exact", "approximant", "sampled", "std_error"};
    const RandomSource base(seed, 0x636f6eULL);
    std::uint64_t stream = 0;
    for (int levels = 0; levels <= 3; ++levels) {
        for (double eps : eps_grid()) {
            RandomSource r = base.fork(stream++);
            const ConcatenatedFailure a = pfail_concatenated(levels, eps);
            const FailureEstimate f = sample_concatenated(levels, eps, kTrials, r);
            t.add_row({static_cast<long long>(levels), eps, a.exact, a.approximant, f.estimate, f.std_error});
        }
    }
    stamp_custom(t, seed, {{"levels", "0,1,2,3"}, {"trials", "10000"}});
    return t;
}

ResultTable correlated_table(std::uint64_t seed) {
    ResultTable t;
    t.name = "correlated_leading";
    t.columns = {"n_qubits", "p", "order", "coefficient", "leading_term"};
    for (int n : {3, 5, 7}) {
        for (double p : {0.001, 0.01, 0.05}) {
            const CorrelatedFailure c = correlated_pfail(n, p);
            t.add_row({static_cast<long long>(n), p, static_cast<long long>(c.order), static_cast<long long>(c.coefficient),
                       c.leading_term});
        }
    }
    stamp_custom(t, seed, {{"n_qubits", "3,5,7"}, {"p", "0.001,0.01,0.05"}});
    return t;
}

std::vector<TableJob> jobs() {
    using P = std::map<std::string, std::string>;
    const P clean = {{"eps", "0"}, {"pE", "0"}, {"mu", "0"}, {"nu", "0"}, {"N", "10"}, {"dmax", "80"}};
    P miscal = clean;
    miscal["eps"] = "0.1";
    P sampled = miscal;
    sampled["N"] = "10";
    miscal["N"] = "1000";
    P measurement = sampled;
    measurement["mu"] = "0.03";
    measurement["nu"] = "0.07";
    P environment = clean;
    environment["pE"] = "0.007";
    P combined = measurement;
    combined["pE"] = "0.007";
    return {
        {"z_noiseless", noise_job("z_noiseless", clean)},
        {"z_miscalibrated", noise_job("z_miscalibrated", miscal)},
        {"z_sampled", noise_job("z_sampled", sampled)},
        {"z_measurement", noise_job("z_measurement", measurement)},
        {"z_environment", noise_job("z_environment", environment)},
        {"z_combined", noise_job("z_combined", combined)},
        {"binomial_histogram", binomial_table},
        {"pfail_repetition", repetition_table},
        {"pfail_concatenated", concatenation_table},
        {"correlated_leading", correlated_table},
        {"qaoa_trace", [](std::uint64_t s) { return from_subcommand("qaoa_trace", "qaoa", {}, s); }},
        {"zne_points", [](std::uint64_t s) { return from_subcommand("zne_points", "zne", {}, s); }},
        {"pec_estimates", [](std::uint64_t s) { return from_subcommand("pec_estimates", "pec", {}, s); }},
        {"dd_gamma", [](std::uint64_t s) { return from_subcommand("dd_gamma", "dd", {}, s); }},
    };
}

}  // namespace

std::vector<ResultTable> reproduce_tables(std::uint64_t seed) {
    std::vector<ResultTable> out;
    const auto js = jobs();
    for (std::size_t i = 0; i < js.size(); ++i) out.push_back(js[i].make(detail::derived_seed(seed, i)));
    return out;
}

std::vector<ReproduceEntry> reproduce_all(std::uint64_t seed, const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    std::vector<ReproduceEntry> entries;
    const auto js = jobs();
    for (std::size_t i = 0; i < js.size(); ++i) {
        ReproduceEntry e;
        e.name = js[i].name;
        e.path = (fs::path(directory) / (js[i].name + ".csv")).string();
        try {
            const ResultTable t = js[i].make(detail::derived_seed(seed, i));
            std::ofstream f(e.path, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + e.path);
            write_csv(t, f);
            e.rows = t.rows.size();
            e.ok = e.rows > 0 && f.good();
            if (!e.ok) e.error = t.rows.empty() ? "empty table" : "write failed";
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
        entries.push_back(e);
    }
    return entries;
}

}  // namespace qlab::harness
