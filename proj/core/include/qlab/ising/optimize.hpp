// optimize.hpp - derivative-free coordinate pattern search

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace qlab {

struct PatternSearchOptions {
    std::uint64_t budget = 500;  // objective evaluations, including the initial point
    int scan_points = 8;         // coarse samples per coordinate sweep
    int golden_iters = 12;       // refinement steps around the best coarse sample
    int max_sweeps = 50;
    double tol = 1e-10;          // stop when a full sweep improves by less than this
};

struct PatternSearchResult {
    std::vector<double> x;
    double f = 0.0;
    std::uint64_t evaluations = 0;
    std::vector<double> trace;  // best-so-far after every evaluation
};

// Minimizes f over the box [lower, upper]. Each sweep scans one coordinate on a
// uniform grid over its whole interval, then narrows the best bracket by
// golden-section search. A move is accepted only if it strictly improves f.
PatternSearchResult pattern_search(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> x0, const std::vector<double>& lower,
                                   const std::vector<double>& upper, const PatternSearchOptions& opts = {});

}  // namespace qlab
