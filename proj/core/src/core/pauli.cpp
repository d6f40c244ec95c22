#include "qlab/core/pauli.hpp"

#include <bit>
#include <cmath>

#include "qlab/core/gates.hpp"

namespace qlab {

namespace {

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// Product of single letters a*b = i^phase * c.
struct LetterProduct {
    std::uint8_t letter;
    int phase;
};

LetterProduct multiply_letters(std::uint8_t a, std::uint8_t b) {
    if (a == 0) return {b, 0};
    if (b == 0) return {a, 0};
    if (a == b) return {0, 0};
    const std::uint8_t c = static_cast<std::uint8_t>(6 - a - b);
    // Cyclic X->Y->Z gives +i, anti-cyclic gives -i.
    const bool cyclic = (b == a % 3 + 1);
    return {c, cyclic ? 1 : 3};
}

cplx ipow(int k) {
    static const cplx table[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    return table[((k % 4) + 4) % 4];
}

}  // namespace

PauliString::PauliString(std::vector<std::uint8_t> letters, int phase) : letters_(std::move(letters)), phase_(((phase % 4) + 4) % 4) {
    for (std::uint8_t l : letters_) require(l <= 3, "PauliString: letter index must be 0..3");
}

PauliString PauliString::from_string(const std::string& s) {
    std::size_t pos = 0;
    int phase = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') phase = 2;
        ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
        phase += 1;
        ++pos;
    }
    std::vector<std::uint8_t> letters;
    for (; pos < s.size(); ++pos) {
        switch (s[pos]) {
            case 'I': case '1': letters.push_back(0); break;
            case 'X': letters.push_back(1); break;
            case 'Y': letters.push_back(2); break;
            case 'Z': letters.push_back(3); break;
            default: throw PreconditionError("PauliString: invalid letter '" + std::string(1, s[pos]) + "' in '" + s + "'");
        }
    }
    require(!letters.empty(), "PauliString: empty word");
    return PauliString(std::move(letters), phase);
}

PauliString PauliString::single(int n_qubits, int q, char letter) { return on(n_qubits, {q}, letter); }

PauliString PauliString::on(int n_qubits, const std::vector<int>& qubits, char letter) {
    PauliString p(n_qubits);
    std::uint8_t l = 0;
    switch (letter) {
        case 'I': l = 0; break;
        case 'X': l = 1; break;
        case 'Y': l = 2; break;
        case 'Z': l = 3; break;
        default: throw PreconditionError("PauliString::on: invalid letter");
    }
    for (int q : qubits) {
        require(q >= 0 && q < n_qubits, "PauliString::on: qubit out of range");
        p.letters_[static_cast<std::size_t>(q)] = l;
    }
    return p;
}

cplx PauliString::phase_factor() const { return ipow(phase_); }

int PauliString::weight() const {
    int w = 0;
    for (std::uint8_t l : letters_) w += (l != 0);
    return w;
}

std::string PauliString::to_string(bool with_phase) const {
    std::string out;
    if (with_phase) {
        static const char* signs[4] = {"+", "+i", "-", "-i"};
        out = signs[phase_];
    }
    for (std::uint8_t l : letters_) out.push_back(kLetters[l]);
    return out;
}

PauliString PauliString::operator*(const PauliString& other) const {
    require(n_qubits() == other.n_qubits(), "PauliString: length mismatch in product");
    PauliString out(n_qubits());
    int phase = phase_ + other.phase_;
    for (int q = 0; q < n_qubits(); ++q) {
        const LetterProduct lp = multiply_letters(letter(q), other.letter(q));
        out.letters_[static_cast<std::size_t>(q)] = lp.letter;
        phase += lp.phase;
    }
    out.phase_ = phase % 4;
    return out;
}

PauliString PauliString::with_phase(int phase) const {
    PauliString out = *this;
    out.phase_ = ((phase % 4) + 4) % 4;
    return out;
}

bool PauliString::commutes(const PauliString& other) const {
    require(n_qubits() == other.n_qubits(), "pauli_commutes: length mismatch");
    int clashes = 0;
    for (int q = 0; q < n_qubits(); ++q) {
        const std::uint8_t a = letter(q), b = other.letter(q);
        clashes += (a != 0 && b != 0 && a != b);
    }
    return clashes % 2 == 0;
}

std::uint64_t PauliString::x_mask() const {
    std::uint64_t m = 0;
    for (int q = 0; q < n_qubits(); ++q)
        if (letter(q) == 1 || letter(q) == 2) m |= qubit_bit(n_qubits(), q);
    return m;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t m = 0;
    for (int q = 0; q < n_qubits(); ++q)
        if (letter(q) == 2 || letter(q) == 3) m |= qubit_bit(n_qubits(), q);
    return m;
}

Matrix PauliString::to_matrix() const {
    require(n_qubits() >= 1 && n_qubits() <= 13, "PauliString::to_matrix: register too large for a dense matrix");
    const Eigen::Index d = Eigen::Index{1} << n_qubits();
    Matrix m = Matrix::Zero(d, d);
    const std::uint64_t xm = x_mask(), zm = z_mask();
    int ny = 0;
    for (std::uint8_t l : letters_) ny += (l == 2);
    const cplx base = ipow(phase_ + ny);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(d); ++i) {
        const double sign = (std::popcount(i & zm) % 2) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(i ^ xm), static_cast<Eigen::Index>(i)) = base * sign;
    }
    return m;
}

void PauliString::apply(StateVector& psi) const {
    require(psi.n_qubits() == n_qubits(), "PauliString::apply: length mismatch");
    const std::uint64_t xm = x_mask(), zm = z_mask();
    int ny = 0;
    for (std::uint8_t l : letters_) ny += (l == 2);
    const cplx base = ipow(phase_ + ny);
    Vector out(psi.dim());
    const Vector& in = psi.amplitudes();
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(psi.dim()); ++i) {
        const double sign = (std::popcount(i & zm) % 2) ? -1.0 : 1.0;
        out[static_cast<Eigen::Index>(i ^ xm)] = base * sign * in[static_cast<Eigen::Index>(i)];
    }
    psi.amplitudes() = std::move(out);
}

bool pauli_commutes(const PauliString& a, const PauliString& b) { return a.commutes(b); }

double expectation_pauli(const StateVector& psi, const PauliString& p) {
    require(psi.n_qubits() == p.n_qubits(), "expectation_pauli: length mismatch");
    StateVector tmp = psi;
    p.apply(tmp);
    const cplx v = inner(psi, tmp);
    return v.real();
}

double expectation_pauli(const DensityMatrix& rho, const PauliString& p) {
    require(rho.n_qubits() == p.n_qubits(), "expectation_pauli: length mismatch");
    const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
    int ny = 0;
    for (std::uint8_t l : p.letters()) ny += (l == 2);
    const cplx base = ipow(p.phase() + ny);
    // Tr(P rho) = sum_i P(i^x, i) rho(i, i^x)
    cplx acc = 0.0;
    const Matrix& m = rho.matrix();
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(rho.dim()); ++i) {
        const double sign = (std::popcount(i & zm) % 2) ? -1.0 : 1.0;
        acc += base * sign * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ xm));
    }
    return acc.real();
}

PauliString conjugate_pauli(const Matrix& u, const PauliString& p) {
    const Matrix m = u * p.to_matrix() * u.adjoint();
    const int n = p.n_qubits();
    require(m.rows() == (Eigen::Index{1} << n), "conjugate_pauli: dimension mismatch");
    Eigen::Index x = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        if (std::abs(m(r, 0)) > 0.5) x = r;
    const cplx m0 = m(x, 0);
    std::vector<std::uint8_t> letters(static_cast<std::size_t>(n), 0);
    int ny = 0;
    for (int q = 0; q < n; ++q) {
        const auto col = static_cast<Eigen::Index>(qubit_bit(n, q));
        const bool xb = (static_cast<std::uint64_t>(x) & qubit_bit(n, q)) != 0;
        const bool zb = (m(col ^ x, col) / m0).real() < 0.0;
        letters[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(xb ? (zb ? 2 : 1) : (zb ? 3 : 0));
        ny += (xb && zb);
    }
    const cplx ph = m0 / ipow(ny);
    int phase = 0;
    for (int k = 0; k < 4; ++k)
        if (std::abs(ph - ipow(k)) < 1e-8) phase = k;
    PauliString out(letters, phase);
    if ((out.to_matrix() - m).cwiseAbs().maxCoeff() > 1e-8)
        throw PreconditionError("conjugate_pauli: result is not a Pauli word");
    return out;
}

}  // namespace qlab
