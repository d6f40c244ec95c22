#include "qlab/qec/codes.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qlab/core/gates.hpp"

namespace qlab {

namespace {

PauliString pad(const PauliString& p, int n_total) {
    std::vector<std::uint8_t> letters = p.letters();
    letters.resize(static_cast<std::size_t>(n_total), 0);
    return PauliString(std::move(letters), p.phase());
}

void add_cnot(Circuit& c, int control, int target) { c.add(gates::CNOT(), {control, target}, "CNOT"); }

// Repetition-code parity checks (x0 = q0 q1, x1 = q0 q2) and the shared table.
void repetition_syndrome(Circuit& c, int a0, int a1) {
    add_cnot(c, 0, a0);
    add_cnot(c, 1, a0);
    add_cnot(c, 0, a1);
    add_cnot(c, 2, a1);
}

std::map<Syndrome, PauliString> repetition_table(char letter) {
    return {{{0, 0}, PauliString(3)},
            {{1, 1}, PauliString::single(3, 0, letter)},
            {{1, 0}, PauliString::single(3, 1, letter)},
            {{0, 1}, PauliString::single(3, 2, letter)}};
}

}  // namespace

CodeSpec bit_flip_code() {
    CodeSpec c;
    c.name = "bitflip";
    c.n_data = 3;
    c.n_ancilla = 2;
    c.encode = Circuit(5);
    add_cnot(c.encode, 0, 1);
    add_cnot(c.encode, 0, 2);
    c.syndrome = Circuit(5);
    repetition_syndrome(c.syndrome, 3, 4);
    c.decode = c.encode.inverse();
    c.ancillas = {3, 4};
    c.correction = repetition_table('X');
    c.stabilizers = {PauliString::from_string("ZZI"), PauliString::from_string("ZIZ")};
    return c;
}

CodeSpec phase_flip_code() {
    CodeSpec c;
    c.name = "phaseflip";
    c.n_data = 3;
    c.n_ancilla = 2;
    Circuit rep(5);
    add_cnot(rep, 0, 1);
    add_cnot(rep, 0, 2);
    c.encode = rep;
    for (int q = 0; q < 3; ++q) c.encode.add(gates::H(), {q}, "H");
    c.syndrome = Circuit(5);
    for (int q = 0; q < 3; ++q) c.syndrome.add(gates::H(), {q}, "H");
    repetition_syndrome(c.syndrome, 3, 4);
    for (int q = 0; q < 3; ++q) c.syndrome.add(gates::H(), {q}, "H");
    c.decode = c.encode.inverse();
    c.ancillas = {3, 4};
    c.correction = repetition_table('Z');
    c.stabilizers = {PauliString::from_string("XXI"), PauliString::from_string("XIX")};
    return c;
}

CodeSpec shor_code() {
    CodeSpec c;
    c.name = "shor";
    c.n_data = 9;
    c.n_ancilla = 8;
    const int n = 17;
    c.encode = Circuit(n);
    add_cnot(c.encode, 0, 3);
    add_cnot(c.encode, 0, 6);
    for (int q : {0, 3, 6}) c.encode.add(gates::H(), {q}, "H");
    for (int b = 0; b < 3; ++b) {
        add_cnot(c.encode, 3 * b, 3 * b + 1);
        add_cnot(c.encode, 3 * b, 3 * b + 2);
    }

    c.syndrome = Circuit(n);
    for (int b = 0; b < 3; ++b) {
        const int a0 = 9 + 2 * b, a1 = 10 + 2 * b;
        add_cnot(c.syndrome, 3 * b, a0);
        add_cnot(c.syndrome, 3 * b + 1, a0);
        add_cnot(c.syndrome, 3 * b, a1);
        add_cnot(c.syndrome, 3 * b + 2, a1);
    }
    for (int q = 0; q < 9; ++q) c.syndrome.add(gates::H(), {q}, "H");
    for (int q : {0, 1, 2, 3, 4, 5}) add_cnot(c.syndrome, q, 15);
    for (int q : {0, 1, 2, 6, 7, 8}) add_cnot(c.syndrome, q, 16);
    for (int q = 0; q < 9; ++q) c.syndrome.add(gates::H(), {q}, "H");

    c.decode = c.encode.inverse();
    for (int a = 9; a < 17; ++a) c.ancillas.push_back(a);

    // Per block: (1,1) first qubit, (1,0) second, (0,1) third.
    // Phase pair (d6, d7): (1,1) block 1, (1,0) block 2, (0,1) block 3.
    const int bit_target[4] = {-1, 2, 1, 0};  // indexed by d_{2b} * 2 + d_{2b+1}
    const int phase_block[4] = {-1, 2, 1, 0};  // indexed by d6 * 2 + d7
    for (int pattern = 0; pattern < 256; ++pattern) {
        Syndrome s;
        for (int i = 0; i < 8; ++i) s.push_back((pattern >> (7 - i)) & 1);
        PauliString fix(9);
        for (int b = 0; b < 3; ++b) {
            const int t = bit_target[s[static_cast<std::size_t>(2 * b)] * 2 + s[static_cast<std::size_t>(2 * b + 1)]];
            if (t >= 0) fix = fix * PauliString::single(9, 3 * b + t, 'X');
        }
        const int blk = phase_block[s[6] * 2 + s[7]];
        if (blk >= 0) fix = fix * PauliString::single(9, 3 * blk, 'Z');
        c.correction.emplace(s, fix.with_phase(0));
    }

    for (int b = 0; b < 3; ++b) {
        c.stabilizers.push_back(PauliString::on(9, {3 * b, 3 * b + 1}, 'Z'));
        c.stabilizers.push_back(PauliString::on(9, {3 * b, 3 * b + 2}, 'Z'));
    }
    c.stabilizers.push_back(PauliString::on(9, {0, 1, 2, 3, 4, 5}, 'X'));
    c.stabilizers.push_back(PauliString::on(9, {0, 1, 2, 6, 7, 8}, 'X'));
    return c;
}

CodeSpec code_by_name(const std::string& name) {
    if (name == "bitflip" || name == "bit-flip") return bit_flip_code();
    if (name == "phaseflip" || name == "phase-flip") return phase_flip_code();
    if (name == "shor") return shor_code();
    throw PreconditionError("unknown code '" + name + "' (expected bitflip, phaseflip or shor)");
}

StateVector encode_logical(const CodeSpec& code, const StateVector& psi) {
    require(psi.n_qubits() == 1, "encode_logical: input must be a single qubit");
    StateVector s = tensor_product(psi, StateVector(code.n_total() - 1));
    code.encode.apply(s);
    Vector data(Eigen::Index{1} << code.n_data);
    for (Eigen::Index i = 0; i < data.size(); ++i) data[i] = s[i << code.n_ancilla];
    return StateVector::from_amplitudes(data, 1e-8);
}

CodeRun run_code(const CodeSpec& code, const StateVector& psi, const PauliString& error, RandomSource& rng) {
    require(psi.n_qubits() == 1, "run_code: input must be a single qubit");
    require(error.n_qubits() == code.n_data, "run_code: error length must equal the number of physical qubits");
    const int n = code.n_total();
    StateVector s = tensor_product(psi, StateVector(n - 1));
    code.encode.apply(s);
    pad(error, n).apply(s);
    code.syndrome.apply(s);

    CodeRun out;
    for (int a : code.ancillas) {
        Measurement m = measure_z(s, a, rng);
        out.syndrome.push_back(m.outcome);
        s = std::move(m.collapsed);
    }
    const auto it = code.correction.find(out.syndrome);
    out.applied = it != code.correction.end() ? it->second : PauliString(code.n_data);
    pad(out.applied, n).apply(s);
    code.decode.apply(s);

    const Matrix rho = reduced_density(s, {0});
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
    Vector top = eig.eigenvectors().col(1);
    const cplx ov = psi.amplitudes().dot(top);
    if (std::abs(ov) > 1e-12) top *= std::conj(ov) / std::abs(ov);
    out.final_state = StateVector::from_amplitudes(top / top.norm(), 1e-8);
    out.fidelity = (psi.amplitudes().adjoint() * rho * psi.amplitudes())(0, 0).real();
    out.corrected = out.fidelity >= 1.0 - 1e-10;
    return out;
}

bool pauli_frame_corrects(const CodeSpec& code, const PauliString& error) {
    require(error.n_qubits() == code.n_data, "pauli_frame_corrects: error length must equal the number of physical qubits");
    Syndrome s;
    for (const PauliString& g : code.stabilizers) s.push_back(g.commutes(error) ? 0 : 1);
    const auto it = code.correction.find(s);
    const PauliString residual = it != code.correction.end() ? error * it->second : error;
    return StabilizerGroup(code.stabilizers).contains(residual, false);
}

namespace {

// Per-qubit error letter: 1 = X, 3 = Z, 0 = depolarizing (X, Y, Z equally likely).
std::uint8_t draw_letter(char model, double u) {
    if (model == 'X') return 1;
    if (model == 'Z') return 3;
    return static_cast<std::uint8_t>(1 + std::min(2, static_cast<int>(3.0 * u)));
}

void require_model(char model) {
    require(model == 'X' || model == 'Z' || model == 'D', "code failure: error model must be X, Z or D");
}

}  // namespace

FailureEstimate sample_code_failure(const CodeSpec& code, double eps, char model, std::uint64_t trials,
                                    RandomSource& rng) {
    require_model(model);
    require(eps >= 0.0 && eps <= 1.0, "sample_code_failure: eps must lie in [0,1]");
    require(trials >= 1, "sample_code_failure: trials must be >= 1");
    const StabilizerGroup group(code.stabilizers);
    const RandomSource base = rng.fork(rng());
    std::uint64_t failures = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const RandomSource r = base.fork(t);
        std::vector<std::uint8_t> letters(static_cast<std::size_t>(code.n_data), 0);
        for (int q = 0; q < code.n_data; ++q)
            if (r.uniform_at(2 * static_cast<std::uint64_t>(q)) < eps)
                letters[static_cast<std::size_t>(q)] = draw_letter(model, r.uniform_at(2 * static_cast<std::uint64_t>(q) + 1));
        if (!pauli_frame_corrects(code, PauliString(letters))) ++failures;
    }
    FailureEstimate f;
    f.trials = trials;
    f.failures = failures;
    f.estimate = static_cast<double>(failures) / static_cast<double>(trials);
    f.std_error = std::sqrt(f.estimate * (1.0 - f.estimate) / static_cast<double>(trials));
    return f;
}

double code_failure_exact(const CodeSpec& code, double eps, char model) {
    require_model(model);
    require(eps >= 0.0 && eps <= 1.0, "code_failure_exact: eps must lie in [0,1]");
    require(code.n_data <= 9, "code_failure_exact: at most 9 physical qubits");
    const int per = model == 'D' ? 4 : 2;
    std::uint64_t total = 1;
    for (int q = 0; q < code.n_data; ++q) total *= static_cast<std::uint64_t>(per);
    double fail = 0.0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<std::uint8_t> letters(static_cast<std::size_t>(code.n_data), 0);
        std::uint64_t rest = idx;
        int hits = 0;
        for (int q = 0; q < code.n_data; ++q) {
            const auto v = static_cast<int>(rest % static_cast<std::uint64_t>(per));
            rest /= static_cast<std::uint64_t>(per);
            if (v == 0) continue;
            ++hits;
            letters[static_cast<std::size_t>(q)] = model == 'D' ? static_cast<std::uint8_t>(v) : (model == 'X' ? 1 : 3);
        }
        if (pauli_frame_corrects(code, PauliString(letters))) continue;
        const double pick = model == 'D' ? eps / 3.0 : eps;
        fail += std::pow(pick, hits) * std::pow(1.0 - eps, code.n_data - hits);
    }
    return fail;
}

}  // namespace qlab
