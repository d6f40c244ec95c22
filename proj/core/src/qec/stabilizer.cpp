#include "qlab/qec/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qlab {

namespace {

// Packed symplectic vector: x bits high, z bits low (n <= 32).
std::uint64_t symplectic(const PauliString& p) { return (p.x_mask() << 32) | p.z_mask(); }

struct Elimination {
    std::vector<std::uint64_t> rows;    // reduced rows
    std::vector<std::uint64_t> combos;  // generator subset (bit mask) producing each row
    std::vector<int> pivots;
};

Elimination eliminate(const std::vector<PauliString>& gens) {
    Elimination e;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        std::uint64_t v = symplectic(gens[g]);
        std::uint64_t c = std::uint64_t{1} << g;
        for (std::size_t r = 0; r < e.rows.size(); ++r) {
            if ((v >> e.pivots[r]) & 1u) {
                v ^= e.rows[r];
                c ^= e.combos[r];
            }
        }
        if (v == 0) continue;
        e.rows.push_back(v);
        e.combos.push_back(c);
        e.pivots.push_back(63 - std::countl_zero(v));
    }
    return e;
}

std::optional<std::uint64_t> reduce(const Elimination& e, std::uint64_t v) {
    std::uint64_t c = 0;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if ((v >> e.pivots[r]) & 1u) {
            v ^= e.rows[r];
            c ^= e.combos[r];
        }
    }
    if (v != 0) return std::nullopt;
    return c;
}

cplx ipow(int k) {
    static const cplx table[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    return table[((k % 4) + 4) % 4];
}

// Applies (1 + sign * g) / 2 to a vector.
Vector half_projector(const PauliString& g, int sign, const Vector& in) {
    const std::uint64_t xm = g.x_mask(), zm = g.z_mask();
    int ny = 0;
    for (std::uint8_t l : g.letters()) ny += (l == 2);
    const cplx base = ipow(g.phase() + ny) * static_cast<double>(sign);
    Vector out = 0.5 * in;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(in.size()); ++i) {
        const double s = (std::popcount(i & zm) % 2) ? -1.0 : 1.0;
        out[static_cast<Eigen::Index>(i ^ xm)] += 0.5 * base * s * in[static_cast<Eigen::Index>(i)];
    }
    return out;
}

Vector project_sector(const StabilizerGroup& group, const Syndrome& s, Vector v) {
    for (int g = 0; g < group.size(); ++g)
        v = half_projector(group.generators()[static_cast<std::size_t>(g)], s[static_cast<std::size_t>(g)] ? -1 : 1, v);
    return v;
}

}  // namespace

std::string syndrome_to_string(const Syndrome& s) {
    std::string out;
    for (int b : s) out.push_back(b ? '1' : '0');
    return out;
}

bool generators_commute(const std::vector<PauliString>& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!gens[i].commutes(gens[j])) return false;
    return true;
}

bool generators_independent(const std::vector<PauliString>& gens) { return eliminate(gens).rows.size() == gens.size(); }

StabilizerGroup::StabilizerGroup(std::vector<PauliString> generators) : gens_(std::move(generators)) {
    require(!gens_.empty(), "StabilizerGroup: use trivial(n) for an empty group");
    n_ = gens_.front().n_qubits();
    require(n_ >= 1 && n_ <= 32, "StabilizerGroup: register must have 1..32 qubits");
    require(gens_.size() <= static_cast<std::size_t>(n_), "StabilizerGroup: more generators than qubits");
    for (const PauliString& g : gens_) {
        require(g.n_qubits() == n_, "StabilizerGroup: generator length mismatch");
        require(g.phase() % 2 == 0, "StabilizerGroup: generators must be Hermitian (sign +1 or -1)");
        require(!g.is_identity_word(), "StabilizerGroup: identity is not a valid generator");
    }
    require(generators_commute(gens_), "StabilizerGroup: generators do not commute");
    require(generators_independent(gens_), "StabilizerGroup: generators are not independent");
}

StabilizerGroup StabilizerGroup::parse(const std::string& spec) {
    std::vector<PauliString> gens;
    std::string cur;
    std::istringstream in(spec);
    while (std::getline(in, cur, spec.find(';') != std::string::npos ? ';' : ',')) {
        std::string w;
        for (char c : cur)
            if (!std::isspace(static_cast<unsigned char>(c))) w.push_back(c);
        if (!w.empty()) gens.push_back(PauliString::from_string(w));
    }
    require(!gens.empty(), "StabilizerGroup::parse: no generators in '" + spec + "'");
    return StabilizerGroup(std::move(gens));
}

StabilizerGroup StabilizerGroup::trivial(int n_qubits) {
    require(n_qubits >= 1 && n_qubits <= 32, "StabilizerGroup::trivial: register must have 1..32 qubits");
    StabilizerGroup g;
    g.n_ = n_qubits;
    return g;
}

Syndrome StabilizerGroup::syndrome_of(const PauliString& op) const {
    require(op.n_qubits() == n_, "StabilizerGroup::syndrome_of: length mismatch");
    Syndrome s;
    for (const PauliString& g : gens_) s.push_back(g.commutes(op) ? 0 : 1);
    return s;
}

std::optional<std::vector<int>> StabilizerGroup::decompose(const PauliString& op) const {
    require(op.n_qubits() == n_, "StabilizerGroup::decompose: length mismatch");
    const auto c = reduce(eliminate(gens_), symplectic(op));
    if (!c) return std::nullopt;
    std::vector<int> subset;
    for (int g = 0; g < size(); ++g)
        if ((*c >> g) & 1u) subset.push_back(g);
    return subset;
}

PauliString StabilizerGroup::product(const std::vector<int>& subset) const {
    PauliString p(n_);
    for (int g : subset) {
        require(g >= 0 && g < size(), "StabilizerGroup::product: generator index out of range");
        p = p * gens_[static_cast<std::size_t>(g)];
    }
    return p;
}

bool StabilizerGroup::contains(const PauliString& op, bool match_phase) const {
    const auto subset = decompose(op);
    if (!subset) return false;
    if (!match_phase) return true;
    return product(*subset).phase() == op.phase();
}

Matrix StabilizerGroup::projector(const Syndrome& s) const {
    require(n_ <= 12, "StabilizerGroup::projector: register too large for a dense projector");
    require(s.size() == gens_.size(), "StabilizerGroup::projector: syndrome length mismatch");
    const Eigen::Index d = Eigen::Index{1} << n_;
    Matrix p(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        Vector e = Vector::Zero(d);
        e[c] = 1.0;
        p.col(c) = project_sector(*this, s, std::move(e));
    }
    return p;
}

std::vector<StabilizerSector> partition_by_stabilizers(const StabilizerGroup& group) {
    const int n = group.n_qubits();
    const int k = group.size();
    require(n <= 12, "partition_by_stabilizers: register too large");
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t target = std::uint64_t{1} << (n - k);

    std::vector<StabilizerSector> out;
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
        StabilizerSector sec;
        for (int g = 0; g < k; ++g) sec.syndrome.push_back(static_cast<int>((pattern >> (k - 1 - g)) & 1u));
        std::vector<Vector> cols;
        std::vector<char> seen(d, 0);
        // P|z> is either zero or spans one orbit of the X-parts, so orbits never repeat.
        for (std::uint64_t z = 0; z < d && cols.size() < target; ++z) {
            if (seen[z]) continue;
            Vector e = Vector::Zero(static_cast<Eigen::Index>(d));
            e[static_cast<Eigen::Index>(z)] = 1.0;
            Vector v = project_sector(group, sec.syndrome, std::move(e));
            seen[z] = 1;
            const double nv = v.norm();
            if (nv < 1e-9) continue;
            for (std::uint64_t i = 0; i < d; ++i)
                if (std::abs(v[static_cast<Eigen::Index>(i)]) > 1e-12) seen[i] = 1;
            cols.push_back(v / nv);
        }
        if (cols.size() != target) throw RuntimeFailure("partition_by_stabilizers: sector dimension mismatch");
        sec.basis.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) sec.basis.col(static_cast<Eigen::Index>(c)) = cols[c];
        out.push_back(std::move(sec));
    }
    return out;
}

const char* to_string(OperatorClass c) {
    switch (c) {
        case OperatorClass::stabilizer: return "stabilizer";
        case OperatorClass::error: return "error";
        case OperatorClass::logical: return "logical";
    }
    return "?";
}

Classification classify_operator(const PauliString& op, const StabilizerGroup& group) {
    Classification c;
    c.syndrome = group.syndrome_of(op);
    bool anticommutes = false;
    for (int b : c.syndrome) anticommutes = anticommutes || b;
    if (anticommutes) c.kind = OperatorClass::error;
    else if (group.contains(op, false)) c.kind = OperatorClass::stabilizer;
    else c.kind = OperatorClass::logical;
    return c;
}

Recoverability check_recoverability(const std::vector<Matrix>& errors, const Matrix& projector, double tol) {
    require(!errors.empty(), "check_recoverability: error set is empty");
    require(projector.rows() == projector.cols(), "check_recoverability: projector must be square");
    require((projector * projector - projector).cwiseAbs().maxCoeff() < 1e-10, "check_recoverability: P is not a projector");
    for (const Matrix& e : errors)
        require(e.rows() == projector.rows() && e.cols() == projector.cols(), "check_recoverability: dimension mismatch");
    const double tr = projector.trace().real();
    require(tr > 0.5, "check_recoverability: projector has zero rank");
    const auto m = static_cast<Eigen::Index>(errors.size());
    Recoverability r;
    r.mu = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Matrix left = projector * errors[static_cast<std::size_t>(i)].adjoint();
        for (Eigen::Index j = 0; j < m; ++j) {
            const Matrix pe = left * errors[static_cast<std::size_t>(j)] * projector;
            const cplx mu = pe.trace() / tr;
            r.mu(i, j) = mu;
            r.residual = std::max(r.residual, (pe - mu * projector).cwiseAbs().maxCoeff());
        }
    }
    r.recoverable = r.residual <= tol;
    return r;
}

Recoverability check_recoverability(const KrausChannel& channel, const Matrix& projector, double tol) {
    return check_recoverability(channel.operators(), projector, tol);
}

}  // namespace qlab
