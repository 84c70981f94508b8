#pragma once

#include <cstddef>
#include <functional>

namespace energia::quad {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t intervals = 0;
};

// Globally adaptive Gauss-Kronrod 7/15 on [a, b]: the interval with the
// largest error estimate is bisected until the total estimate drops below
// abs_tol.  Handles integrable endpoint singularities (square-root type) by
// refinement; throws if the budget runs out before the tolerance is met.
Result adaptive_gauss_kronrod(const std::function<double(double)>& f, double a,
                              double b, double abs_tol,
                              std::size_t max_intervals = 200000);

// Composite 16-point Gauss-Legendre with panels panels; meant for smooth
// integrands where doubling panels until agreement gives machine accuracy.
double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       int panels);

}  // namespace energia::quad
