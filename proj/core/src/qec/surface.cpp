#include "qlab/qec/surface.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/core/gates.hpp"

namespace qlab {

namespace {

std::uint64_t embed_data(const SurfaceLayout& l, std::uint64_t j) {
    std::uint64_t idx = 0;
    const int nd = l.n_data();
    for (int k = 0; k < nd; ++k)
        if ((j >> (nd - 1 - k)) & 1u) idx |= qubit_bit(l.n_total, l.data[static_cast<std::size_t>(k)]);
    return idx;
}

std::uint64_t embed_syndrome(const SurfaceLayout& l, const Syndrome& s) {
    std::uint64_t idx = 0;
    for (std::size_t c = 0; c < l.checks.size(); ++c)
        if (s[c]) idx |= qubit_bit(l.n_total, l.checks[c].ancilla);
    return idx;
}

StateVector entangle(const SurfaceLayout& l, const StateVector& data_state) {
    require(data_state.n_qubits() == l.n_data(), "surface_cycle: data state does not match the layout");
    Vector full = Vector::Zero(Eigen::Index{1} << l.n_total);
    for (Eigen::Index j = 0; j < data_state.dim(); ++j)
        full[static_cast<Eigen::Index>(embed_data(l, static_cast<std::uint64_t>(j)))] = data_state[j];
    StateVector s = StateVector::from_amplitudes(full, 1e-8);
    for (const SurfaceCheck& c : l.checks) {
        if (c.type == 'Z') {
            for (int d : c.data) s.apply(gates::CNOT(), {d, c.ancilla});
        } else {
            s.apply(gates::H(), {c.ancilla});
            for (int d : c.data) s.apply(gates::CNOT(), {c.ancilla, d});
            s.apply(gates::H(), {c.ancilla});
        }
    }
    return s;
}

int data_index(const SurfaceLayout& l, const std::string& label) {
    for (std::size_t k = 0; k < l.data_labels.size(); ++k)
        if (l.data_labels[k] == label) return static_cast<int>(k);
    throw PreconditionError("surface: unknown data qubit '" + label + "' in layout " + l.name);
}

int check_index(const SurfaceLayout& l, const std::string& label) {
    for (std::size_t k = 0; k < l.checks.size(); ++k)
        if (l.checks[k].label == label) return static_cast<int>(k);
    throw PreconditionError("surface: unknown measurement qubit '" + label + "' in layout " + l.name);
}

}  // namespace

std::vector<PauliString> SurfaceLayout::stabilizers() const {
    std::vector<PauliString> out;
    for (const SurfaceCheck& c : checks) {
        std::vector<int> local;
        for (int d : c.data) {
            const auto it = std::find(data.begin(), data.end(), d);
            local.push_back(static_cast<int>(it - data.begin()));
        }
        out.push_back(PauliString::on(n_data(), local, c.type));
    }
    return out;
}

SurfaceLayout surface_layout_4() {
    SurfaceLayout l;
    l.name = "4";
    l.n_total = 4;
    l.data = {1, 2};
    l.data_labels = {"a", "b"};
    l.checks = {{"X", 'X', 0, {1, 2}}, {"Z", 'Z', 3, {1, 2}}};
    return l;
}

SurfaceLayout surface_layout_9() {
    SurfaceLayout l;
    l.name = "9";
    l.n_total = 9;
    l.data = {0, 1, 2, 3, 4};
    l.data_labels = {"a", "c", "e", "g", "i"};
    l.checks = {{"b", 'Z', 5, {0, 1, 2}}, {"d", 'X', 6, {0, 2, 3}}, {"f", 'X', 7, {1, 2, 4}}, {"h", 'Z', 8, {2, 3, 4}}};
    return l;
}

SurfaceLayout surface_layout_by_name(const std::string& name) {
    if (name == "4") return surface_layout_4();
    if (name == "9") return surface_layout_9();
    throw PreconditionError("unknown surface layout '" + name + "' (expected 4 or 9)");
}

SurfaceCycleResult surface_cycle(const SurfaceLayout& layout, const StateVector& data_state, RandomSource& rng,
                                 const std::optional<Syndrome>& forced) {
    if (forced) require(forced->size() == layout.checks.size(), "surface_cycle: forced syndrome length mismatch");
    StateVector s = entangle(layout, data_state);
    SurfaceCycleResult out;
    for (std::size_t c = 0; c < layout.checks.size(); ++c) {
        const int a = layout.checks[c].ancilla;
        Measurement m = forced ? measure_z_forced(s, a, (*forced)[c]) : measure_z(s, a, rng);
        if (m.probability < 1e-14) throw RuntimeFailure("surface_cycle: forced outcome has zero probability");
        out.syndrome.push_back(m.outcome);
        out.probabilities.push_back(m.probability);
        s = std::move(m.collapsed);
    }
    const std::uint64_t anc = embed_syndrome(layout, out.syndrome);
    Vector data(Eigen::Index{1} << layout.n_data());
    for (Eigen::Index j = 0; j < data.size(); ++j)
        data[j] = s[static_cast<Eigen::Index>(anc | embed_data(layout, static_cast<std::uint64_t>(j)))];
    out.data_state = StateVector::from_amplitudes(data / data.norm(), 1e-8);
    return out;
}

std::vector<std::pair<Syndrome, double>> surface_outcome_distribution(const SurfaceLayout& layout,
                                                                    const StateVector& data_state) {
    const StateVector s = entangle(layout, data_state);
    const std::size_t k = layout.checks.size();
    std::vector<std::pair<Syndrome, double>> out;
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
        Syndrome syn;
        for (std::size_t c = 0; c < k; ++c) syn.push_back(static_cast<int>((pattern >> (k - 1 - c)) & 1u));
        const std::uint64_t anc = embed_syndrome(layout, syn);
        double p = 0.0;
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << layout.n_data()); ++j)
            p += std::norm(s[static_cast<Eigen::Index>(anc | embed_data(layout, j))]);
        out.emplace_back(syn, p);
    }
    return out;
}

InjectedError parse_injected_error(const std::string& spec) {
    InjectedError e;
    if (spec.empty() || spec == "none") return e;
    const auto us = spec.find('_');
    const auto at = spec.find('@');
    require(us == 1 && at != std::string::npos && at > us + 1,
            "parse_injected_error: expected none, <X|Y|Z>_<data>@<cycle> or M_<check>@<cycle>, got '" + spec + "'");
    const char head = spec[0];
    e.target = spec.substr(us + 1, at - us - 1);
    try {
        e.cycle = std::stoi(spec.substr(at + 1));
    } catch (const std::exception&) {
        throw PreconditionError("parse_injected_error: bad cycle in '" + spec + "'");
    }
    require(e.cycle >= 1, "parse_injected_error: cycle must be >= 1");
    if (head == 'M') {
        e.kind = InjectedErrorKind::readout;
    } else {
        require(head == 'X' || head == 'Y' || head == 'Z', "parse_injected_error: error letter must be X, Y, Z or M");
        e.kind = InjectedErrorKind::data;
        e.letter = head;
    }
    return e;
}

SurfaceErrorTable surface_error_table(const SurfaceLayout& layout, const StateVector& initial,
                                      const InjectedError& injected, int n_cycles, RandomSource& rng) {
    require(n_cycles >= 1, "surface_error_table: n_cycles must be >= 1");
    if (injected.kind != InjectedErrorKind::none)
        require(n_cycles >= injected.cycle, "surface_error_table: n_cycles must reach the injected cycle");
    SurfaceErrorTable t;
    for (const SurfaceCheck& c : layout.checks) t.labels.push_back(c.label);
    StateVector data = initial;
    for (int cycle = 1; cycle <= n_cycles; ++cycle) {
        if (injected.kind == InjectedErrorKind::data && cycle == injected.cycle)
            PauliString::single(layout.n_data(), data_index(layout, injected.target), injected.letter).apply(data);
        SurfaceCycleResult r = surface_cycle(layout, data, rng);
        data = r.data_state;
        if (injected.kind == InjectedErrorKind::readout && cycle == injected.cycle) {
            const auto k = static_cast<std::size_t>(check_index(layout, injected.target));
            r.syndrome[k] ^= 1;
        }
        t.rows.push_back(r.syndrome);
    }
    return t;
}

Classification loop_product_class(int n_qubits, const std::vector<int>& path_a, const std::vector<int>& path_b,
                                  const StabilizerGroup& stabilizers, char letter) {
    require(stabilizers.n_qubits() == n_qubits, "loop_equivalence: paths and stabilizers use different layouts");
    const PauliString prod = PauliString::on(n_qubits, path_a, letter) * PauliString::on(n_qubits, path_b, letter);
    return classify_operator(prod, stabilizers);
}

bool loop_equivalence(int n_qubits, const std::vector<int>& path_a, const std::vector<int>& path_b,
                      const StabilizerGroup& stabilizers, char letter) {
    return loop_product_class(n_qubits, path_a, path_b, stabilizers, letter).kind == OperatorClass::stabilizer;
}

StabilizerGroup loop_example_group() {
    // A B C D E F G -> 0..6
    return StabilizerGroup({PauliString::on(7, {1, 4, 3, 6}, 'Z'), PauliString::on(7, {0, 2, 3, 5}, 'Z')});
}

}  // namespace qlab
