#include "energia/wineglass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "energia/quadrature.hpp"

namespace energia::wineglass {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_base_eigenvalue(double y) {
    if (y < -2.0 - 1e-9 || y > 2.0 + 1e-9)
        throw std::invalid_argument("transfer_roots: y=" + std::to_string(y) +
                                    " outside [-2, 2]");
    return std::clamp(y, -2.0, 2.0);
}

// Polish a bracketed root of transfer(x) = y with Newton steps, falling
// back to bisection whenever a step leaves the bracket.  lo/hi satisfy
// sign(transfer(lo) - y) != sign(transfer(hi) - y); transfer is strictly
// monotone on each branch interval.
double refine_root(double y, double lo, double hi, double flo) {
    bool decreasing = flo > 0.0;  // value at lo above y => branch decreases
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (!(lo < mid && mid < hi)) break;
        double fm = transfer(mid) - y;
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == decreasing)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-9) break;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {
        double fx = transfer(x) - y;
        if (std::abs(fx) <= 1e-13) break;
        double step = fx / transfer_derivative(x);
        double next = x - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        double fn = transfer(next) - y;
        if ((fn > 0.0) == decreasing)
            lo = next;
        else
            hi = next;
        x = next;
    }
    return x;
}

// Bracket endpoints adjacent to the poles: walk toward the pole by halving
// until the function value passes y.
double approach_pole(double pole, double direction, double y, bool want_below) {
    double eps = 0.5;
    for (int it = 0; it < 200; ++it) {
        double x = pole + direction * eps;
        double v = transfer(x);
        if (want_below ? v < y : v > y) return x;
        eps *= 0.5;
    }
    throw std::runtime_error("transfer_roots: failed to bracket near pole");
}

double solve_alpha(double y) {
    // branch on (-inf, -1), strictly decreasing; transfer(-3) = 5.8 >= y
    double lo = -3.0;
    double hi = approach_pole(-1.0, -1.0, y, /*want_below=*/true);
    return refine_root(y, lo, hi, transfer(lo) - y);
}

double solve_beta(double y) {
    // branch on (-1, 0], strictly decreasing; transfer(0) = -2 <= y
    if (y == -2.0) return 0.0;  // exact endpoint root
    double lo = approach_pole(-1.0, 1.0, y, /*want_below=*/false);
    return refine_root(y, lo, 0.0, transfer(lo) - y);
}

}  // namespace

Graph build(Kind kind, int k) {
    if (k < 1) throw std::invalid_argument("wineglass: k must be at least 1");
    if (kind == Kind::cycle && k < 2)
        throw std::invalid_argument("wineglass: cycle form needs k >= 2");
    int bases = kind == Kind::path ? k + 1 : k;
    int n = bases + 4 * k;
    Graph g(n);
    for (int j = 0; j < k; ++j) {
        int q = bases + 4 * j;
        int r = q + 1, s = q + 2, t = q + 3;
        g.add_edge(q, j);
        g.add_edge(q, kind == Kind::path ? j + 1 : (j + 1) % k);
        g.add_edge(q, r);
        g.add_edge(r, s);
        g.add_edge(r, t);
        g.add_edge(s, t);
    }
    return g;
}

double transfer(double x) {
    if (x == -1.0 || x == 2.0)
        throw std::domain_error("transfer: pole at x=" + std::to_string(x));
    return x * x - 3.0 - 2.0 / ((x + 1.0) * (x - 2.0));
}

double transfer_derivative(double x) {
    if (x == -1.0 || x == 2.0)
        throw std::domain_error("transfer_derivative: pole at x=" + std::to_string(x));
    double a = (x + 1.0) * (x - 2.0);
    return 2.0 * x + (4.0 * x - 2.0) / (a * a);
}

std::array<double, 5> quartic_coefficients(double y) {
    return {1.0, -1.0, -(y + 5.0), y + 3.0, 2.0 * y + 4.0};
}

RootQuartet transfer_roots(double y) {
    y = clamp_base_eigenvalue(y);
    RootQuartet r;
    r.y = y;
    r.alpha = solve_alpha(y);
    r.beta = solve_beta(y);

    // deflate the quartic by (x - alpha)(x - beta) and solve the quadratic
    auto c = quartic_coefficients(y);
    double b2 = c[1] + r.alpha;                    // after division by (x - alpha)
    double b1 = c[2] + r.alpha * b2;
    double q1 = b2 + r.beta;                       // after division by (x - beta)
    double q0 = b1 + r.beta * q1;
    double disc = q1 * q1 - 4.0 * q0;
    if (disc < 0.0) throw std::runtime_error("transfer_roots: deflated discriminant negative");
    double sq = std::sqrt(disc);
    double root1 = q1 >= 0.0 ? (-q1 - sq) / 2.0 : (-q1 + sq) / 2.0;
    double root2 = q0 / root1;
    r.gamma = std::min(root1, root2);
    r.delta = std::max(root1, root2);
    // Newton polish on the transfer function itself
    for (double* x : {&r.gamma, &r.delta})
        for (int it = 0; it < 40; ++it) {
            double fx = transfer(*x) - y;
            if (std::abs(fx) <= 1e-13) break;
            *x -= fx / transfer_derivative(*x);
        }

    if (!(r.alpha < -1.0 && r.beta > -1.0 && r.beta <= 0.0 && r.gamma > 0.0 &&
          r.gamma < 2.0 && r.delta > 2.0))
        throw std::runtime_error("transfer_roots: branch intervals violated at y=" +
                                 std::to_string(y));
    return r;
}

namespace {

double family_energy(int k, bool cycle) {
    if (k < 1 || (cycle && k < 2))
        throw std::invalid_argument("energy_closed: invalid k");
    double sum = 0.0, comp = 0.0;
    for (int j = cycle ? 0 : 1; j < (cycle ? k : k + 1); ++j) {
        double angle = cycle ? 2.0 * kPi * j / k : kPi * j / (k + 1);
        RootQuartet r = transfer_roots(std::clamp(2.0 * std::cos(angle), -2.0, 2.0));
        double y = (r.alpha + r.beta) - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return 2.0 * k - 2.0 * sum;
}

}  // namespace

double path_energy_closed(int k) { return family_energy(k, false); }
double cycle_energy_closed(int k) { return family_energy(k, true); }

double energy_closed(Kind kind, int k) {
    return kind == Kind::path ? path_energy_closed(k) : cycle_energy_closed(k);
}

std::vector<std::pair<int, double>> ratio_convergence(Kind kind, std::span<const int> ks) {
    std::vector<std::pair<int, double>> out;
    out.reserve(ks.size());
    for (int k : ks) out.emplace_back(k, energy_closed(kind, k) / (2.0 * k));
    return out;
}

RatioLimit ratio_limit(double quad_tol) {
    if (!(quad_tol > 0.0)) throw std::invalid_argument("ratio_limit: quad_tol must be positive");
    RatioLimit out;
    RootQuartet at_minus2 = transfer_roots(-2.0);
    RootQuartet at_plus2 = transfer_roots(2.0);
    out.alpha_at_minus2 = at_minus2.alpha;
    out.alpha_at_plus2 = at_plus2.alpha;
    out.beta_at_plus2 = at_plus2.beta;

    auto arc = [](double x) {
        return std::acos(std::clamp(transfer(x) / 2.0, -1.0, 1.0));
    };
    quad::Result i1 =
        quad::adaptive_gauss_kronrod(arc, out.alpha_at_plus2, out.alpha_at_minus2, quad_tol / 2);
    quad::Result i2 = quad::adaptive_gauss_kronrod(arc, out.beta_at_plus2, 0.0, quad_tol / 2);
    out.value = 1.0 - out.alpha_at_minus2 + (i1.value + i2.value) / kPi;
    out.quad_error_estimate = (i1.error_estimate + i2.error_estimate) / kPi;

    auto both_branches = [](double x) {
        RootQuartet r = transfer_roots(std::clamp(2.0 * std::cos(x), -2.0, 2.0));
        return r.alpha + r.beta;
    };
    double prev = quad::composite_gauss(both_branches, 0.0, kPi, 8);
    for (int panels = 16;; panels *= 2) {
        double next = quad::composite_gauss(both_branches, 0.0, kPi, panels);
        if (std::abs(next - prev) <= quad_tol || panels >= 4096) {
            if (std::abs(next - prev) > quad_tol)
                throw std::runtime_error("ratio_limit: cosine-form quadrature did not settle");
            out.cosine_form = 1.0 - next / kPi;
            break;
        }
        prev = next;
    }
    return out;
}

}  // namespace energia::wineglass
