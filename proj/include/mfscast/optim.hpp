#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mfs {

struct SimplexResult {
    std::vector<double> x;
    double fmin = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Nelder-Mead minimization (GSL nmsimplex2). The objective may return
// non-finite values for out-of-range points; they are treated as very large.
SimplexResult minimize_simplex(const std::function<double(std::span<const double>)>& objective,
                               std::span<const double> x0, std::span<const double> steps,
                               int max_iterations = 2000, double size_tolerance = 1e-8);

}  // namespace mfs
