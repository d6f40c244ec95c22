#include "qlab/ising/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/core/types.hpp"

namespace qlab {

namespace {

class Counter {
public:
    Counter(const std::function<double(const std::vector<double>&)>& f, PatternSearchResult& r, std::uint64_t budget)
        : f_(f), r_(r), budget_(budget) {}

    bool exhausted() const { return r_.evaluations >= budget_; }

    // Evaluates f at x, updating the incumbent on strict improvement.
    double eval(const std::vector<double>& x) {
        const double v = f_(x);
        ++r_.evaluations;
        if (r_.trace.empty() || v < r_.f) {
            r_.f = v;
            r_.x = x;
        }
        r_.trace.push_back(r_.f);
        return v;
    }

private:
    const std::function<double(const std::vector<double>&)>& f_;
    PatternSearchResult& r_;
    std::uint64_t budget_;
};

}  // namespace

PatternSearchResult pattern_search(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> x0, const std::vector<double>& lower,
                                   const std::vector<double>& upper, const PatternSearchOptions& opts) {
    require(opts.budget >= 1, "pattern_search: budget must be >= 1");
    require(x0.size() == lower.size() && x0.size() == upper.size(), "pattern_search: bound size mismatch");
    for (std::size_t i = 0; i < x0.size(); ++i) {
        require(lower[i] < upper[i], "pattern_search: empty interval");
        x0[i] = std::clamp(x0[i], lower[i], upper[i]);
    }
    PatternSearchResult r;
    Counter c(f, r, opts.budget);
    c.eval(x0);
    constexpr double kInvPhi = 0.6180339887498949;

    for (int sweep = 0; sweep < opts.max_sweeps && !c.exhausted(); ++sweep) {
        const double start = r.f;
        for (std::size_t i = 0; i < x0.size() && !c.exhausted(); ++i) {
            std::vector<double> x = r.x;
            const double width = (upper[i] - lower[i]) / opts.scan_points;
            double best_t = x[i];
            double best_v = r.f;
            for (int k = 0; k < opts.scan_points && !c.exhausted(); ++k) {
                x[i] = lower[i] + (k + 0.5) * width;
                const double v = c.eval(x);
                if (v < best_v) {
                    best_v = v;
                    best_t = x[i];
                }
            }
            double a = std::max(lower[i], best_t - width);
            double b = std::min(upper[i], best_t + width);
            x = r.x;
            double t1 = b - kInvPhi * (b - a), t2 = a + kInvPhi * (b - a);
            double f1 = 0.0, f2 = 0.0;
            if (!c.exhausted()) {
                x[i] = t1;
                f1 = c.eval(x);
            }
            if (!c.exhausted()) {
                x[i] = t2;
                f2 = c.eval(x);
            }
            for (int g = 0; g < opts.golden_iters && !c.exhausted(); ++g) {
                x = r.x;
                if (f1 < f2) {
                    b = t2;
                    t2 = t1;
                    f2 = f1;
                    t1 = b - kInvPhi * (b - a);
                    x[i] = t1;
                    f1 = c.eval(x);
                } else {
                    a = t1;
                    t1 = t2;
                    f1 = f2;
                    t2 = a + kInvPhi * (b - a);
                    x[i] = t2;
                    f2 = c.eval(x);
                }
            }
        }
        if (start - r.f < opts.tol) break;
    }
    return r;
}

}  // namespace qlab
