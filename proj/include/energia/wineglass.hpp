#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "energia/graph.hpp"

namespace energia::wineglass {

inline constexpr double kDefaultQuadTol = 1e-11;

enum class Kind { path, cycle };

// A "wine glass" gadget is a triangle {r, s, t} with a stem r-q; glass j
// stands on base vertices p_j and p_{j+1} through the edges q-p_j and
// q-p_{j+1}.  A path of k glasses keeps p_0..p_k distinct (5k+1 vertices),
// a cycle identifies p_k with p_0 (5k vertices).  Both have 6k edges,
// maximum degree 3 and matching number 2k.
Graph build(Kind kind, int k);

// Spectral transfer function of a glass: an adjacency eigenvalue x of the
// glass graph corresponds to eigenvalue transfer(x) of the bare base path
// or cycle.  Poles at x = -1 and x = 2.
double transfer(double x);
double transfer_derivative(double x);

// x^4 - x^3 - (y+5) x^2 + (y+3) x + (2y+4), the polynomial form of
// transfer(x) = y; returned as (c4, c3, c2, c1, c0).
std::array<double, 5> quartic_coefficients(double y);

// The four real roots of transfer(x) = y for y in [-2, 2], one per branch:
//   alpha in (-inf, -1),  beta in (-1, 0],  gamma in (0, 2),  delta in (2, inf).
// alpha and beta decrease strictly in y, gamma and delta increase.
struct RootQuartet {
    double y = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

RootQuartet transfer_roots(double y);

// Closed-form energies: 2k minus twice the sum of alpha + beta over the
// base spectrum (2 cos(j pi/(k+1)) for the path, 2 cos(2 pi j/k) for the
// cycle, all k terms summed verbatim).
double path_energy_closed(int k);
double cycle_energy_closed(int k);
double energy_closed(Kind kind, int k);

// E / (2k) for each requested k (matching number is 2k, so this is E/mu).
std::vector<std::pair<int, double>> ratio_convergence(Kind kind, std::span<const int> ks);

// The limit of E/(2k) as k grows, computed two ways:
//   value        - 1 - alpha(-2) + arccos-form integrals of transfer/2
//                  (adaptive quadrature; integrand has square-root endpoint
//                  singularities)
//   cosine_form  - 1 - (1/pi) * integral over [0, pi] of
//                  alpha(2 cos x) + beta(2 cos x)  (smooth integrand,
//                  composite Gauss)
struct RatioLimit {
    double value = 0.0;
    double cosine_form = 0.0;
    double alpha_at_minus2 = 0.0;
    double alpha_at_plus2 = 0.0;
    double beta_at_plus2 = 0.0;
    double quad_error_estimate = 0.0;
};

RatioLimit ratio_limit(double quad_tol = kDefaultQuadTol);

}  // namespace energia::wineglass
