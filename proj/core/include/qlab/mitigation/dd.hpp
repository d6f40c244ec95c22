// dd.hpp - pure-dephasing decoherence factor of a qubit in a harmonic bath,
// free and under periodic pi-pulse sequences (hbar = k_B = 1)

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qlab/core/types.hpp"

namespace qlab {

struct BathMode {
    double g = 0.0;      // coupling (real)
    double omega = 1.0;  // frequency, > 0
};

struct BathSpec {
    std::vector<BathMode> modes;
    double beta = 1.0;  // inverse temperature, > 0

    void validate() const;

    // Midpoint quadrature of a spectral density I(w) = sum_k delta(w - w_k) g_k^2
    // on (w_min, w_max]: g_k^2 = I(w_k) dw.
    static BathSpec from_spectral_density(const std::function<double(double)>& density, double w_min, double w_max,
                                          int n_modes, double beta);

    // Text format, one directive per line ('#' starts a comment):
    //   beta <value>
    //   mode <g> <omega>
    //   ohmic <alpha> <omega_c> <omega_max> [n_modes=512]   I(w) = alpha w e^{-w/omega_c}
    static BathSpec parse(const std::string& text);
    std::string serialize() const;
};

// xi(t) = (2 g / omega)(1 - e^{i omega t})
cplx dd_xi(double g, double omega, double t);

// Gamma(t0, t) = sum_k (4 g_k^2 / w_k^2)(1 - cos w_k (t - t0)) coth(beta w_k / 2)
double gamma_free(const BathSpec& bath, double t0, double t);

struct PulseSequence {
    double t0 = 0.0;
    double dt = 0.1;   // spacing between pulses
    int n_cycles = 1;  // each cycle has two pi pulses, total time 2 N dt

    void validate() const;
    double total_time() const { return 2.0 * n_cycles * dt; }
};

// sum_{n<N} e^{2 i x n}; near sin(x) = 0 the analytic limit N cos(Nx)/cos(x) is used.
cplx dd_geometric(int n, double x);

// eta(N, dt) = xi(dt)(1 - e^{i w dt}) sum_{n<N} e^{2 i w dt n}
cplx dd_eta(double g, double omega, double dt, int n_cycles);

// f(N, dt) with eta = xi(2 N dt)(1 - f); requires 1 - e^{2 i N w dt} != 0.
cplx dd_f(double omega, double dt, int n_cycles);

// sum_k |eta_k|^2 / 2 coth(beta w_k / 2) at t = t0 + 2 N dt.
double gamma_pulsed(const BathSpec& bath, const PulseSequence& seq);

// Gamma at arbitrary elapsed time under the pulse train (pulses at t0 + m dt, m >= 1).
double gamma_pulsed_at(const BathSpec& bath, double dt, double elapsed);

// |rho01(t)| / |rho01(t0)| = e^{-Gamma}; with a pulse spacing, the pulsed factor.
std::vector<double> coherence_trace(const BathSpec& bath, double t0, const std::vector<double>& times,
                                    std::optional<double> pulse_dt = std::nullopt);

// Exact unitary dynamics of one qubit coupled to the bath modes, each truncated
// to `levels` Fock states, starting from a thermal bath: |Tr(U_-^dagger U_+ rho_B)|.
std::vector<double> fock_coherence(const BathSpec& bath, int levels, const std::vector<double>& times);

}  // namespace qlab
