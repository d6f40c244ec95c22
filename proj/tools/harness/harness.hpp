// harness.hpp - experiment configs, parameter schemas, result tables and the
// subcommand dispatcher behind the qlab CLI

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qlab::harness {

inline constexpr const char* kToolName = "qlab";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 1234;

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

// Schema violation; `key` is the offending parameter path, e.g. "noise-sweep.eps".
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& what)
        : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

enum class ParamType { integer, real, text, choice, real_list, integer_list };

struct ParamSpec {
    std::string key;
    ParamType type = ParamType::real;
    std::string default_value;  // empty: optional with no default
    std::string help;
    double min = -1e300;        // inclusive bounds for numbers and list items
    double max = 1e300;
    std::vector<std::string> choices;
};

struct Schema {
    std::string id;       // e.g. "qec-bench"
    std::string display;  // e.g. "qec bench"
    std::string summary;
    std::vector<ParamSpec> params;

    const ParamSpec* find(const std::string& key) const;
};

const std::vector<Schema>& schemas();
// Accepts the id ("qec-bench") or the display form ("qec bench").
const Schema& schema_for(const std::string& subcommand);

struct ExperimentConfig {
    std::string subcommand;
    std::map<std::string, std::string> params;
    std::uint64_t seed = kDefaultSeed;
    std::string output;  // file path, or a directory for reproduce; empty = stdout
};

// Schema-checked, default-filled parameter view.
class ValidatedConfig {
public:
    ValidatedConfig(const Schema& schema, std::map<std::string, std::string> values, std::uint64_t seed);
    const Schema& schema() const { return *schema_; }
    std::uint64_t seed() const { return seed_; }
    bool has(const std::string& key) const;
    long long integer(const std::string& key) const;
    double real(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::vector<long long> integers(const std::string& key) const;
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    const Schema* schema_;
    std::map<std::string, std::string> values_;
    std::uint64_t seed_;
};

// Throws ConfigError on unknown keys, malformed values or out-of-range numbers.
ValidatedConfig validate(const ExperimentConfig& config);

// key=value lines; '#' comments and blank lines ignored.
std::map<std::string, std::string> parse_config_text(const std::string& text, const std::string& origin = "config");
// Seed from QLAB_SEED when set, else kDefaultSeed.
std::uint64_t default_seed();

using Cell = std::variant<long long, double, std::string>;

struct ResultTable {
    std::string name;
    std::vector<std::pair<std::string, std::string>> metadata;  // written as "# key=value"
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::string metadata_value(const std::string& key) const;
};

std::string format_real(double v);  // 17 significant digits
std::string format_cell(const Cell& c);
void write_csv(const ResultTable& t, std::ostream& out);
std::string to_csv(const ResultTable& t);
ResultTable parse_csv(const std::string& text);

// Rebuilds the config recorded in a table's metadata.
ExperimentConfig config_from_metadata(const ResultTable& t);

// Runs one subcommand (not "reproduce") and returns its table with metadata.
ResultTable run(const ExperimentConfig& config);

struct ReproduceEntry {
    std::string name;
    std::string path;
    std::size_t rows = 0;
    bool ok = false;
    std::string error;
};

// Writes every figure table into `directory` (created if missing).
std::vector<ReproduceEntry> reproduce_all(std::uint64_t seed, const std::string& directory);
// In-memory tables, in output order.
std::vector<ResultTable> reproduce_tables(std::uint64_t seed);

std::string usage();
std::string help_for(const std::string& subcommand);

// Full command-line entry point; returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qlab::harness
