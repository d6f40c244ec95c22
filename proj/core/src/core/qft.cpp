#include "qlab/core/qft.hpp"

#include <cmath>

#include "qlab/core/gates.hpp"

namespace qlab {

Circuit qft_circuit_on(int n_register, const std::vector<int>& qubits, bool inverse) {
    const int n = static_cast<int>(qubits.size());
    require(n >= 1, "qft_circuit: n must be >= 1");
    Circuit c(n_register);
    for (int j = 0; j < n; ++j) {
        c.add(gates::H(), {qubits[j]}, "H");
        for (int k = j + 1; k < n; ++k) {
            const double angle = 2.0 * kPi / std::ldexp(1.0, k - j + 1);
            c.add_controlled(gates::phase(angle), {qubits[k]}, {qubits[j]}, "CR");
        }
    }
    for (int i = 0; i < n / 2; ++i) c.add(gates::SWAP(), {qubits[i], qubits[n - 1 - i]}, "SWAP");
    return inverse ? c.inverse() : c;
}

Circuit qft_circuit(int n, bool inverse) {
    require(n >= 1, "qft_circuit: n must be >= 1");
    std::vector<int> qs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) qs[static_cast<std::size_t>(i)] = i;
    return qft_circuit_on(n, qs, inverse);
}

Matrix qft_matrix(int n, bool inverse) {
    const Eigen::Index d = Eigen::Index{1} << n;
    const double sign = inverse ? -1.0 : 1.0;
    Matrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index j = 0; j < d; ++j)
            f(k, j) = norm * std::polar(1.0, sign * 2.0 * kPi * static_cast<double>((j * k) % d) / static_cast<double>(d));
    return f;
}

}  // namespace qlab
