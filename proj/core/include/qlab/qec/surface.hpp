// surface.hpp - minimal surface-code patches: syndrome cycles, error tables
// and loop equivalence of error chains

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlab/core/pauli.hpp"
#include "qlab/qec/stabilizer.hpp"

namespace qlab {

struct SurfaceCheck {
    std::string label;       // measurement-qubit name, e.g. "b"
    char type = 'Z';         // 'X' or 'Z'
    int ancilla = 0;         // register index of the measurement qubit
    std::vector<int> data;   // register indices it couples to
};

// Checks are listed in readout order. Z checks use CNOTs from the data to the
// ancilla; X checks are H, CNOTs from the ancilla, H.
struct SurfaceLayout {
    std::string name;
    int n_total = 0;
    std::vector<int> data;              // register indices of the data qubits
    std::vector<std::string> data_labels;
    std::vector<SurfaceCheck> checks;

    int n_data() const { return static_cast<int>(data.size()); }
    // Check operators as Pauli words on the data qubits only.
    std::vector<PauliString> stabilizers() const;
    StabilizerGroup group() const { return StabilizerGroup(stabilizers()); }
};

// Register: X-ancilla q0, data a q1, b q2, Z-ancilla q3; checks (M_X, M_Z).
SurfaceLayout surface_layout_4();
// Register: data a c e g i = q0..q4, ancillas b d f h = q5..q8;
// checks Z_b = ZaZcZe, X_d = XaXeXg, X_f = XcXeXi, Z_h = ZeZgZi.
SurfaceLayout surface_layout_9();
SurfaceLayout surface_layout_by_name(const std::string& name);  // "4" or "9"

struct SurfaceCycleResult {
    StateVector data_state;  // post-measurement data-qubit state
    Syndrome syndrome;       // one bit per check, readout order
    std::vector<double> probabilities;  // probability of each sequential outcome
};

// One noise-free cycle with ancillas freshly reset to |0>. `forced` pins the
// outcomes (throws if a pinned outcome has zero probability).
SurfaceCycleResult surface_cycle(const SurfaceLayout& layout, const StateVector& data_state, RandomSource& rng,
                                 const std::optional<Syndrome>& forced = std::nullopt);

// Exact probability of every syndrome for the given data state.
std::vector<std::pair<Syndrome, double>> surface_outcome_distribution(const SurfaceLayout& layout,
                                                                    const StateVector& data_state);

enum class InjectedErrorKind { none, data, readout };

struct InjectedError {
    InjectedErrorKind kind = InjectedErrorKind::none;
    int cycle = 3;           // 1-based cycle in which it occurs
    char letter = 'Z';       // for data errors
    std::string target;      // data label (data) or check label (readout)
};

InjectedError parse_injected_error(const std::string& spec);  // "none", "Z_e@3", "M_f@3"

struct SurfaceErrorTable {
    std::vector<std::string> labels;  // check labels
    std::vector<Syndrome> rows;       // one per cycle
};

// Runs n_cycles cycles starting from `initial` (already stabilized). A data
// error is applied just before its cycle; a readout error flips the recorded
// bit of one check in that cycle only.
SurfaceErrorTable surface_error_table(const SurfaceLayout& layout, const StateVector& initial,
                                      const InjectedError& injected, int n_cycles, RandomSource& rng);

// Product of `letter` on pathA and pathB is a stabilizer (harmless) or not.
bool loop_equivalence(int n_qubits, const std::vector<int>& path_a, const std::vector<int>& path_b,
                      const StabilizerGroup& stabilizers, char letter = 'Z');
Classification loop_product_class(int n_qubits, const std::vector<int>& path_a, const std::vector<int>& path_b,
                                  const StabilizerGroup& stabilizers, char letter = 'Z');

// Abstract 7-qubit patch A..G (indices 0..6) with S_e = Z_B Z_E Z_D Z_G and
// S_d = Z_A Z_C Z_D Z_F.
StabilizerGroup loop_example_group();

}  // namespace qlab
