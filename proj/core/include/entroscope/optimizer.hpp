#pragma once
// Box-constrained quasi-Newton minimizer: projected BFGS with central-
// difference gradients and a backtracking Armijo line search. Variables are
// rescaled to the unit cube internally, so the finite-difference step is
// relative to each parameter's box width.
//
// Small and dense on purpose — the fitting problems here have a handful of
// parameters, and restarts deal with the non-convexity.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace entroscope {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct MinimizeOptions {
    int max_iterations = 200;
    double f_tolerance = 1e-8;   // relative objective-decrease stop
    double g_tolerance = 1e-6;   // projected-gradient infinity-norm stop
    double fd_step = 1e-5;       // central-difference step in scaled coordinates
};

struct MinimizeResult {
    std::vector<double> x;
    double fx = 0.0;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
};

// Minimizes f over the box [lo, hi], starting from x0 (projected into the
// box). lo, hi and x0 must have equal sizes; every lo[i] < hi[i] unless the
// coordinate is fixed (lo[i] == hi[i]).
MinimizeResult minimize_box(const ObjectiveFn& f,
                            std::span<const double> lo,
                            std::span<const double> hi,
                            std::span<const double> x0,
                            const MinimizeOptions& options = {});

}  // namespace entroscope
