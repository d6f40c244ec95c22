// density_matrix.hpp - mixed states and Kraus channels

#pragma once

#include <vector>

#include "qlab/core/state_vector.hpp"
#include "qlab/core/types.hpp"

namespace qlab {

class KrausChannel {
public:
    KrausChannel() = default;
    // Throws unless sum_i E_i^dagger E_i = 1 within `tol`.
    explicit KrausChannel(std::vector<Matrix> ops, double tol = 1e-10);

    static KrausChannel identity(int n_qubits = 1);
    // rho -> (1 - p) rho + p E rho E^dagger for a unitary E.
    static KrausChannel unitary_mixture(double p, const Matrix& e);
    static KrausChannel bit_flip(double p);
    static KrausChannel phase_flip(double p);
    // Bloch vector contracts by (1 - lambda).
    static KrausChannel depolarizing(double lambda);

    const std::vector<Matrix>& operators() const { return ops_; }
    int arity() const { return arity_; }
    double completeness_error() const;

private:
    std::vector<Matrix> ops_;
    int arity_ = 1;
};

class DensityMatrix {
public:
    explicit DensityMatrix(int n_qubits = 1);
    explicit DensityMatrix(const StateVector& psi);
    static DensityMatrix from_matrix(Matrix rho, double tol = 1e-10);
    static DensityMatrix maximally_mixed(int n_qubits);
    // Random full-rank state rho = A A^dagger / tr.
    static DensityMatrix random(int n_qubits, RandomSource& rng);

    int n_qubits() const { return n_; }
    Eigen::Index dim() const { return rho_.rows(); }
    const Matrix& matrix() const { return rho_; }

    void apply_unitary(const GateMatrix& g, const std::vector<int>& targets);
    void apply_channel(const KrausChannel& ch, const std::vector<int>& targets);

    cplx trace() const { return rho_.trace(); }
    double purity() const;
    double probability_zero(int q) const;
    // Tr(O rho) for a full-register operator.
    cplx expectation(const Matrix& op) const;
    // Hermitian, unit trace, eigenvalues >= -psd_tol.
    bool is_valid(double tol = 1e-10, double psd_tol = 1e-9) const;

    // rho <- a rho + b other (used to mix trajectories).
    void mix(double a, const DensityMatrix& other, double b);

private:
    // Applies M (left) and conj(M) on the column index: rho -> M rho M^dagger.
    void conjugate_by(const Matrix& m, const std::vector<int>& targets, Matrix& rho) const;

    int n_;
    Matrix rho_;
};

DensityMatrix apply_kraus(DensityMatrix rho, const KrausChannel& ch, const std::vector<int>& targets = {0});

}  // namespace qlab
