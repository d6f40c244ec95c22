#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "harness.hpp"

namespace qlab::harness {

namespace {

bool needs_quotes(const std::string& s) { return s.find_first_of(",\"\r\n") != std::string::npos; }

std::string quote(const std::string& s) {
    if (!needs_quotes(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (in_quotes) throw std::runtime_error("parse_csv: unterminated quote");
    cells.push_back(cur);
    return cells;
}

Cell parse_cell(const std::string& s) {
    if (s.empty()) return std::string();
    char* end = nullptr;
    errno = 0;
    const long long i = std::strtoll(s.c_str(), &end, 10);
    if (errno == 0 && end == s.c_str() + s.size()) return i;
    errno = 0;
    const double d = std::strtod(s.c_str(), &end);
    if (errno == 0 && end == s.c_str() + s.size()) return d;
    if (s == "inf" || s == "-inf" || s == "nan") return std::strtod(s.c_str(), nullptr);
    return s;
}

}  // namespace

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("ResultTable " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                               std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::string ResultTable::metadata_value(const std::string& key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return v;
    return "";
}

// Reals always carry a '.' or exponent so their type survives a round trip.
std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string format_cell(const Cell& c) {
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
    return quote(std::get<std::string>(c));
}

void write_csv(const ResultTable& t, std::ostream& out) {
    out << "# table=" << t.name << '\n';
    for (const auto& [k, v] : t.metadata) out << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << quote(t.columns[i]);
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
        out << '\n';
    }
}

std::string to_csv(const ResultTable& t) {
    std::ostringstream s;
    write_csv(t, s);
    return s.str();
}

ResultTable parse_csv(const std::string& text) {
    ResultTable t;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body[0] == ' ') body.erase(0, 1);
            const auto eq = body.find('=');
            const std::string key = eq == std::string::npos ? body : body.substr(0, eq);
            const std::string value = eq == std::string::npos ? "" : body.substr(eq + 1);
            if (key == "table") t.name = value;
            else t.metadata.emplace_back(key, value);
            continue;
        }
        const auto cells = split_row(line);
        if (!have_header) {
            t.columns = cells;
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        for (const auto& c : cells) row.push_back(parse_cell(c));
        t.add_row(std::move(row));
    }
    return t;
}

ExperimentConfig config_from_metadata(const ResultTable& t) {
    ExperimentConfig c;
    c.subcommand = t.metadata_value("subcommand");
    if (c.subcommand.empty()) throw ConfigError("subcommand", "table metadata has no subcommand");
    const std::string seed = t.metadata_value("seed");
    if (!seed.empty()) c.seed = std::strtoull(seed.c_str(), nullptr, 10);
    const std::string prefix = "config.";
    for (const auto& [k, v] : t.metadata)
        if (k.compare(0, prefix.size(), prefix) == 0) c.params[k.substr(prefix.size())] = v;
    return c;
}

}  // namespace qlab::harness
