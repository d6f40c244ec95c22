#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "harness.hpp"

namespace qlab::harness {

namespace {

struct Leaf {
    const Schema* schema = nullptr;
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
    std::string output;
};

std::string read_file(const std::string& path, const std::string& key) {
    std::ifstream in(path);
    if (!in) throw ConfigError(key, "cannot open '" + path + "'");
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig assemble(const Leaf& leaf) {
    ExperimentConfig c;
    c.subcommand = leaf.schema->id;
    c.seed = default_seed();
    if (!leaf.config_path.empty()) {
        for (auto& [k, v] : parse_config_text(read_file(leaf.config_path, "--config"), leaf.config_path)) {
            if (k == "seed") {
                try {
                    std::size_t used = 0;
                    c.seed = std::stoull(v, &used);
                    if (used != v.size()) throw std::invalid_argument(v);
                } catch (const std::exception&) {
                    throw ConfigError(c.subcommand + ".seed", "expected a non-negative integer, got '" + v + "'");
                }
            } else if (k == "output") {
                c.output = v;
            } else {
                c.params[k] = v;
            }
        }
    }
    for (const auto& [k, opt] : leaf.options)
        if (opt->count() > 0) c.params[k] = leaf.values.at(k);
    if (leaf.seed_opt->count() > 0) c.seed = leaf.seed;
    if (!leaf.output.empty()) c.output = leaf.output;
    return c;
}

int run_reproduce(ExperimentConfig c, std::ostream& out, std::ostream& err) {
    const ValidatedConfig v = validate(c);
    const std::string dir = c.output.empty() ? v.text("out") : c.output;
    int failed = 0;
    for (const ReproduceEntry& e : reproduce_all(c.seed, dir)) {
        if (e.ok) {
            out << "wrote " << e.path << " (" << e.rows << " rows)\n";
        } else {
            ++failed;
            err << "failed " << e.name << ": " << e.error << '\n';
        }
    }
    if (failed) {
        err << failed << " table(s) failed\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int execute(const Leaf& leaf, std::ostream& out, std::ostream& err) {
    ExperimentConfig c = assemble(leaf);
    if (c.subcommand == "reproduce") return run_reproduce(std::move(c), out, err);
    const ResultTable t = run(c);
    if (c.output.empty()) {
        write_csv(t, out);
        return kExitOk;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + c.output + "'");
    write_csv(t, f);
    if (!f.good()) throw std::runtime_error("write to '" + c.output + "' failed");
    return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{std::string(kToolName) + " " + kToolVersion + " - quantum computing experiment harness", kToolName};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    std::map<std::string, CLI::App*> groups;
    std::vector<std::unique_ptr<Leaf>> leaves;
    CLI::App* help_app = nullptr;

    for (const Schema& s : schemas()) {
        if (s.id == "help") {
            help_app = app.add_subcommand("help", s.summary);
            help_app->allow_extras();
            continue;
        }
        CLI::App* parent = &app;
        std::string name = s.display;
        const auto space = s.display.find(' ');
        if (space != std::string::npos) {
            const std::string group = s.display.substr(0, space);
            name = s.display.substr(space + 1);
            if (!groups.count(group)) groups[group] = app.add_subcommand(group, group + " experiments")->require_subcommand(1);
            parent = groups[group];
        }
        auto leaf = std::make_unique<Leaf>();
        leaf->schema = &s;
        leaf->app = parent->add_subcommand(name, s.summary);
        for (const ParamSpec& p : s.params) {
            leaf->values[p.key] = p.default_value;
            leaf->options[p.key] = leaf->app->add_option("--" + p.key, leaf->values[p.key], p.help);
        }
        leaf->app->add_option("--config", leaf->config_path, "key=value config file; flags override its entries");
        leaf->seed_opt = leaf->app->add_option("--seed", leaf->seed, "random seed (default: QLAB_SEED or 1234)");
        leaf->app->add_option("-o,--output", leaf->output, "output file (directory for reproduce); default stdout");
        leaves.push_back(std::move(leaf));
    }

    // Topic words would otherwise match sibling subcommands, so help is routed here.
    if (argc >= 3 && std::string(argv[1]) == "help") {
        std::string topic;
        for (int i = 2; i < argc; ++i) topic += (topic.empty() ? "" : " ") + std::string(argv[i]);
        try {
            out << help_for(topic);
            return kExitOk;
        } catch (const ConfigError& e) {
            err << "config error: " << e.what() << '\n';
            return kExitConfig;
        }
    }

    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion&) {
        out << kToolName << ' ' << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << usage();
        return kExitConfig;
    }

    try {
        if (help_app && help_app->parsed()) {
            out << usage();
            return kExitOk;
        }
        for (const auto& leaf : leaves)
            if (leaf->app->parsed()) return execute(*leaf, out, err);
        err << usage();
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace qlab::harness
