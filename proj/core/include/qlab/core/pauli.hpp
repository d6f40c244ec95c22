// pauli.hpp - signed Pauli words

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlab/core/density_matrix.hpp"
#include "qlab/core/state_vector.hpp"

namespace qlab {

// i^phase * P_0 (x) P_1 (x) ... with letters 0=I, 1=X, 2=Y, 3=Z.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(int n_qubits) : letters_(static_cast<std::size_t>(n_qubits), 0) {}
    PauliString(std::vector<std::uint8_t> letters, int phase = 0);

    // Accepts an optional sign prefix ("+", "-", "i", "-i") then letters I/X/Y/Z
    // ("1" is read as I).
    static PauliString from_string(const std::string& s);
    // Single letter on qubit q of an n-qubit register.
    static PauliString single(int n_qubits, int q, char letter);
    // Same letter on every listed qubit.
    static PauliString on(int n_qubits, const std::vector<int>& qubits, char letter);

    int n_qubits() const { return static_cast<int>(letters_.size()); }
    int phase() const { return phase_; }  // power of i, 0..3
    std::uint8_t letter(int q) const { return letters_[static_cast<std::size_t>(q)]; }
    const std::vector<std::uint8_t>& letters() const { return letters_; }
    cplx phase_factor() const;
    int weight() const;
    bool is_identity_word() const { return weight() == 0; }

    // Letters only, e.g. "XZI"; with_phase prepends the sign.
    std::string to_string(bool with_phase = false) const;

    PauliString operator*(const PauliString& other) const;
    bool operator==(const PauliString& other) const = default;
    PauliString with_phase(int phase) const;

    bool commutes(const PauliString& other) const;
    Matrix to_matrix() const;
    // Applies the operator (including its phase) in place.
    void apply(StateVector& psi) const;

    // Bit masks in index space: X-part and Z-part.
    std::uint64_t x_mask() const;
    std::uint64_t z_mask() const;

private:
    std::vector<std::uint8_t> letters_;
    int phase_ = 0;
};

bool pauli_commutes(const PauliString& a, const PauliString& b);

double expectation_pauli(const StateVector& psi, const PauliString& p);
double expectation_pauli(const DensityMatrix& rho, const PauliString& p);

// Conjugation U P U^dagger of a Pauli word by a dense unitary, returned as a
// Pauli word when the result is one (throws otherwise).
PauliString conjugate_pauli(const Matrix& u, const PauliString& p);

}  // namespace qlab
