// model.hpp - classical Ising models and combinatorial encodings

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlab/core/types.hpp"

namespace qlab {

// C(s) = constant - sum_i h_i s_i - sum_{i<j} J_ij s_i s_j, with spin s_i = +1
// for bit z_i = 0 and s_i = -1 for z_i = 1. Bit strings are packed with qubit 0
// as the most significant bit.
class IsingModel {
public:
    IsingModel() = default;
    explicit IsingModel(int n);
    IsingModel(std::vector<double> h, Eigen::MatrixXd j, double constant = 0.0);

    int n() const { return n_; }
    const std::vector<double>& h() const { return h_; }
    const Eigen::MatrixXd& j() const { return j_; }
    double constant() const { return constant_; }

    void set_h(int i, double v);
    // Stores the coupling of the unordered pair {a, b} (a != b).
    void set_j(int a, int b, double v);
    void set_constant(double c) { constant_ = c; }
    double coupling(int a, int b) const;

    static int spin(std::uint64_t z, int n, int i) { return ((z >> (n - 1 - i)) & 1U) ? -1 : 1; }

    // Energy without the constant offset.
    double energy(std::uint64_t z) const;
    double energy_spins(const std::vector<int>& s) const;
    // energy + constant: the encoded classical cost.
    double cost(std::uint64_t z) const { return energy(z) + constant_; }

    // Diagonal of the cost Hamiltonian over all 2^n basis states.
    Eigen::VectorXd cost_diagonal() const;

    bool has_interaction() const;

    // Plain text: "n <n>", "h <i> <v>", "J <i> <j> <v>", "constant <v>", '#' comments.
    std::string serialize() const;
    static IsingModel parse(const std::string& text);

private:
    int n_ = 0;
    std::vector<double> h_;
    Eigen::MatrixXd j_;  // strictly upper triangular
    double constant_ = 0.0;
};

// cost(z) = (sum_i n_i z_i - m)^2.
IsingModel subset_sum_to_ising(long long m, const std::vector<long long>& ns);
// cost(s) = (sum_i n_i s_i)^2.
IsingModel partition_to_ising(const std::vector<long long>& ns);

struct IsingGround {
    double energy = 0.0;  // minimum cost, offset included
    std::vector<std::uint64_t> states;  // all bit strings within `tol` of the minimum
};

// Exhaustive enumeration, n <= 20.
IsingGround brute_force_ground(const IsingModel& model, double tol = 1e-9);

// Subset indices selected by a bit string (z_i = 1).
std::vector<int> selected_indices(std::uint64_t z, int n);

}  // namespace qlab
