// stabilizer.hpp - abelian Pauli groups, code-space partitioning and
// Knill-Laflamme recoverability

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlab/core/density_matrix.hpp"
#include "qlab/core/pauli.hpp"

namespace qlab {

// Syndrome bits, one per generator: 0 <-> eigenvalue +1, 1 <-> -1.
using Syndrome = std::vector<int>;

std::string syndrome_to_string(const Syndrome& s);

class StabilizerGroup {
public:
    StabilizerGroup() = default;
    // Throws unless the generators have equal length, are Hermitian, pairwise
    // commute and are independent (which keeps -1 out of the group).
    explicit StabilizerGroup(std::vector<PauliString> generators);
    // Semicolon or comma separated words, e.g. "ZZI;IZZ".
    static StabilizerGroup parse(const std::string& spec);
    // Empty group on n qubits.
    static StabilizerGroup trivial(int n_qubits);

    int n_qubits() const { return n_; }
    int size() const { return static_cast<int>(gens_.size()); }
    const std::vector<PauliString>& generators() const { return gens_; }

    // Signs of the generators against `op`: bit i is 1 when op anticommutes with g_i.
    Syndrome syndrome_of(const PauliString& op) const;
    // Generator subset whose product equals the word of `op` (ignoring phase).
    std::optional<std::vector<int>> decompose(const PauliString& op) const;
    // Membership; `match_phase` also requires the sign to agree.
    bool contains(const PauliString& op, bool match_phase = true) const;
    PauliString product(const std::vector<int>& subset) const;

    // Projector onto the sector with the given syndrome (dense, n <= 12).
    Matrix projector(const Syndrome& s) const;
    Matrix code_projector() const { return projector(Syndrome(gens_.size(), 0)); }

private:
    int n_ = 0;
    std::vector<PauliString> gens_;
};

// Whether generators given as words commute / are independent, without throwing.
bool generators_commute(const std::vector<PauliString>& gens);
bool generators_independent(const std::vector<PauliString>& gens);

struct StabilizerSector {
    Syndrome syndrome;
    Matrix basis;  // orthonormal columns spanning the sector
};

// 2^k sectors of dimension 2^(n-k); sector 0 (all +1) is the code space.
std::vector<StabilizerSector> partition_by_stabilizers(const StabilizerGroup& group);

enum class OperatorClass { stabilizer, error, logical };
const char* to_string(OperatorClass c);

struct Classification {
    OperatorClass kind = OperatorClass::stabilizer;
    Syndrome syndrome;  // generator signs, all zero unless kind == error
};

// Phase-insensitive: -S still acts trivially up to a global phase.
Classification classify_operator(const PauliString& op, const StabilizerGroup& group);

struct Recoverability {
    bool recoverable = false;
    Matrix mu;            // P E_i^dagger E_j P = mu_ij P
    double residual = 0;  // largest deviation from the proportionality
};

// Knill-Laflamme test on an error set or a channel's Kraus operators.
Recoverability check_recoverability(const std::vector<Matrix>& errors, const Matrix& projector, double tol = 1e-9);
Recoverability check_recoverability(const KrausChannel& channel, const Matrix& projector, double tol = 1e-9);

}  // namespace qlab
