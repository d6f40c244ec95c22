#include "qlab/ising/pauli_hamiltonian.hpp"

#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qlab {

PauliHamiltonian::PauliHamiltonian(int n_qubits) : n_(n_qubits) {
    require(n_qubits >= 1, "PauliHamiltonian: need at least one qubit");
}

PauliHamiltonian& PauliHamiltonian::add(double coeff, const PauliString& word) {
    require(word.n_qubits() == n_, "PauliHamiltonian: word length mismatch");
    require(word.phase() == 0 || word.phase() == 2, "PauliHamiltonian: word phase must be real");
    terms_.push_back({word.phase() == 2 ? -coeff : coeff, word.with_phase(0)});
    return *this;
}

PauliHamiltonian& PauliHamiltonian::add(double coeff, const std::string& word) {
    return add(coeff, PauliString::from_string(word));
}

Matrix PauliHamiltonian::to_matrix() const {
    require(n_ <= 13, "PauliHamiltonian::to_matrix: register too large");
    const Eigen::Index d = Eigen::Index{1} << n_;
    Matrix m = Matrix::Zero(d, d);
    for (const PauliTerm& t : terms_) m += t.coeff * t.word.to_matrix();
    return m;
}

PauliHamiltonian PauliHamiltonian::from_ising(const IsingModel& model) {
    const int n = model.n();
    PauliHamiltonian h(n);
    if (model.constant() != 0.0) h.add(model.constant(), PauliString(n));
    for (int i = 0; i < n; ++i)
        if (model.h()[static_cast<std::size_t>(i)] != 0.0)
            h.add(-model.h()[static_cast<std::size_t>(i)], PauliString::single(n, i, 'Z'));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (model.j()(a, b) != 0.0) h.add(-model.j()(a, b), PauliString::on(n, {a, b}, 'Z'));
    return h;
}

PauliHamiltonian PauliHamiltonian::transverse_field(int n_qubits) {
    PauliHamiltonian h(n_qubits);
    for (int i = 0; i < n_qubits; ++i) h.add(-1.0, PauliString::single(n_qubits, i, 'X'));
    return h;
}

PauliHamiltonian PauliHamiltonian::parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::pair<double, std::string>> items;
    std::string tok;
    while (in >> tok) {
        if (tok == "+") continue;
        double c = 0.0;
        try {
            std::size_t used = 0;
            c = std::stod(tok, &used);
            require(used == tok.size(), "PauliHamiltonian::parse: bad coefficient '" + tok + "'");
        } catch (const std::logic_error&) {
            throw PreconditionError("PauliHamiltonian::parse: bad coefficient '" + tok + "'");
        }
        std::string word;
        require(static_cast<bool>(in >> word), "PauliHamiltonian::parse: coefficient without a word");
        items.emplace_back(c, word);
    }
    require(!items.empty(), "PauliHamiltonian::parse: no terms");
    PauliHamiltonian h(static_cast<int>(items.front().second.size()));
    for (const auto& [c, w] : items) h.add(c, w);
    return h;
}

HamiltonianGround brute_force_ground(const PauliHamiltonian& h, double tol) {
    require(h.n_qubits() <= 12, "brute_force_ground: at most 12 qubits for dense diagonalization");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.to_matrix());
    const Eigen::VectorXd& ev = es.eigenvalues();
    HamiltonianGround g;
    g.energy = ev[0];
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (ev[k] - g.energy <= tol) {
            g.states.push_back(StateVector::from_amplitudes(es.eigenvectors().col(k), 1e-8));
        } else {
            g.gap = ev[k] - g.energy;
            break;
        }
    }
    return g;
}

double commutator_norm(const Matrix& a, const Matrix& b) {
    const Matrix c = a * b - b * a;
    Eigen::JacobiSVD<Matrix> svd(c);
    return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

}  // namespace qlab
