#include "qlab/ising/model.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace qlab {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

IsingModel::IsingModel(int n) : n_(n), h_(static_cast<std::size_t>(n), 0.0), j_(Eigen::MatrixXd::Zero(n, n)) {
    require(n >= 1, "IsingModel: need at least one spin");
}

IsingModel::IsingModel(std::vector<double> h, Eigen::MatrixXd j, double constant)
    : n_(static_cast<int>(h.size())), h_(std::move(h)), j_(std::move(j)), constant_(constant) {
    require(n_ >= 1, "IsingModel: need at least one spin");
    require(j_.rows() == n_ && j_.cols() == n_, "IsingModel: J must be n x n");
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b <= a; ++b) require(j_(a, b) == 0.0, "IsingModel: J must be strictly upper triangular");
}

void IsingModel::set_h(int i, double v) {
    require(i >= 0 && i < n_, "IsingModel::set_h: index out of range");
    h_[static_cast<std::size_t>(i)] = v;
}

void IsingModel::set_j(int a, int b, double v) {
    require(a >= 0 && a < n_ && b >= 0 && b < n_ && a != b, "IsingModel::set_j: invalid pair");
    if (a > b) std::swap(a, b);
    j_(a, b) = v;
}

double IsingModel::coupling(int a, int b) const {
    if (a > b) std::swap(a, b);
    return a == b ? 0.0 : j_(a, b);
}

double IsingModel::energy(std::uint64_t z) const {
    double e = 0.0;
    for (int i = 0; i < n_; ++i) {
        const int si = spin(z, n_, i);
        e -= h_[static_cast<std::size_t>(i)] * si;
        for (int k = i + 1; k < n_; ++k) e -= j_(i, k) * si * spin(z, n_, k);
    }
    return e;
}

double IsingModel::energy_spins(const std::vector<int>& s) const {
    require(static_cast<int>(s.size()) == n_, "IsingModel::energy_spins: length mismatch");
    std::uint64_t z = 0;
    for (int i = 0; i < n_; ++i) {
        require(s[static_cast<std::size_t>(i)] == 1 || s[static_cast<std::size_t>(i)] == -1, "IsingModel: spins must be +-1");
        if (s[static_cast<std::size_t>(i)] == -1) z |= std::uint64_t{1} << (n_ - 1 - i);
    }
    return energy(z);
}

Eigen::VectorXd IsingModel::cost_diagonal() const {
    require(n_ <= 26, "IsingModel::cost_diagonal: too many spins");
    const std::uint64_t d = std::uint64_t{1} << n_;
    Eigen::VectorXd diag(static_cast<Eigen::Index>(d));
    for (std::uint64_t z = 0; z < d; ++z) diag[static_cast<Eigen::Index>(z)] = cost(z);
    return diag;
}

bool IsingModel::has_interaction() const {
    for (double v : h_)
        if (v != 0.0) return true;
    return j_.cwiseAbs().maxCoeff() > 0.0;
}

std::string IsingModel::serialize() const {
    std::ostringstream os;
    os << "n " << n_ << "\n";
    for (int i = 0; i < n_; ++i)
        if (h_[static_cast<std::size_t>(i)] != 0.0) os << "h " << i << " " << fmt17(h_[static_cast<std::size_t>(i)]) << "\n";
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (j_(a, b) != 0.0) os << "J " << a << " " << b << " " << fmt17(j_(a, b)) << "\n";
    os << "constant " << fmt17(constant_) << "\n";
    return os.str();
}

IsingModel IsingModel::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    IsingModel model;
    bool have_n = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        const std::string where = "IsingModel::parse: line " + std::to_string(lineno);
        if (key == "n") {
            int n = 0;
            require(static_cast<bool>(ls >> n) && n >= 1, where + ": bad spin count");
            model = IsingModel(n);
            have_n = true;
        } else if (key == "h") {
            require(have_n, where + ": 'n' must come first");
            int i = 0;
            double v = 0.0;
            require(static_cast<bool>(ls >> i >> v), where + ": expected 'h <i> <value>'");
            model.set_h(i, v);
        } else if (key == "J") {
            require(have_n, where + ": 'n' must come first");
            int a = 0, b = 0;
            double v = 0.0;
            require(static_cast<bool>(ls >> a >> b >> v), where + ": expected 'J <i> <j> <value>'");
            model.set_j(a, b, v);
        } else if (key == "constant") {
            double v = 0.0;
            require(static_cast<bool>(ls >> v), where + ": expected 'constant <value>'");
            model.set_constant(v);
        } else {
            throw PreconditionError(where + ": unknown key '" + key + "'");
        }
    }
    require(have_n, "IsingModel::parse: missing 'n'");
    return model;
}

IsingModel subset_sum_to_ising(long long m, const std::vector<long long>& ns) {
    require(!ns.empty(), "subset_sum_to_ising: empty integer list");
    const int n = static_cast<int>(ns.size());
    const double total = static_cast<double>(std::accumulate(ns.begin(), ns.end(), 0LL));
    const double a = 0.5 * total - static_cast<double>(m);
    IsingModel model(n);
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ni = static_cast<double>(ns[static_cast<std::size_t>(i)]);
        model.set_h(i, a * ni);
        sq += ni * ni;
        for (int k = i + 1; k < n; ++k) model.set_j(i, k, -0.5 * ni * static_cast<double>(ns[static_cast<std::size_t>(k)]));
    }
    model.set_constant(a * a + 0.25 * sq);
    return model;
}

IsingModel partition_to_ising(const std::vector<long long>& ns) {
    require(!ns.empty(), "partition_to_ising: empty integer list");
    const int n = static_cast<int>(ns.size());
    IsingModel model(n);
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ni = static_cast<double>(ns[static_cast<std::size_t>(i)]);
        sq += ni * ni;
        for (int k = i + 1; k < n; ++k) model.set_j(i, k, -2.0 * ni * static_cast<double>(ns[static_cast<std::size_t>(k)]));
    }
    model.set_constant(sq);
    return model;
}

IsingGround brute_force_ground(const IsingModel& model, double tol) {
    require(model.n() <= 20, "brute_force_ground: at most 20 spins");
    const std::uint64_t d = std::uint64_t{1} << model.n();
    IsingGround g;
    g.energy = std::numeric_limits<double>::infinity();
    for (std::uint64_t z = 0; z < d; ++z) {
        const double c = model.cost(z);
        if (c < g.energy - tol) {
            g.energy = c;
            g.states.assign(1, z);
        } else if (std::abs(c - g.energy) <= tol) {
            g.states.push_back(z);
        }
    }
    return g;
}

std::vector<int> selected_indices(std::uint64_t z, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if ((z >> (n - 1 - i)) & 1U) out.push_back(i);
    return out;
}

}  // namespace qlab
