#pragma once

#include <functional>
#include <span>
#include <vector>

namespace aep {

struct SimplexOptions {
    std::vector<double> initial_step;  // per coordinate; empty means 0.1 everywhere
    double size_tol = 1e-6;            // stop once the simplex size drops below this
    int max_iterations = 20000;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead minimization.
SimplexResult minimize_simplex(const std::function<double(std::span<const double>)>& objective,
                               std::vector<double> start, const SimplexOptions& options = {});

}  // namespace aep
