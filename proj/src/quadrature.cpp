#include "energia/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace energia::quad {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK abscissae/weights).
constexpr std::array<double, 8> kKronrodNodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr std::array<double, 4> kGaussWeights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double fc = f(mid);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double off = half * kKronrodNodes[i];
        double fsum = f(mid - off) + f(mid + off);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    // inf/NaN would otherwise poison the error accounting and end the
    // refinement loop looking converged
    if (!std::isfinite(kronrod) || !std::isfinite(err))
        throw std::runtime_error("quadrature: integrand evaluated to a non-finite value");
    return Panel{a, b, kronrod, err};
}

}  // namespace

Result adaptive_gauss_kronrod(const std::function<double(double)>& f, double a,
                              double b, double abs_tol, std::size_t max_intervals) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    if (a == b) return Result{0.0, 0.0, 0};
    std::priority_queue<Panel> panels;
    panels.push(evaluate_panel(f, a, b));
    double total_err = panels.top().err;
    std::size_t count = 1;
    while (total_err > abs_tol) {
        if (count >= max_intervals)
            throw std::runtime_error("adaptive quadrature failed to meet tolerance");
        Panel worst = panels.top();
        panels.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b))
            throw std::runtime_error("adaptive quadrature: interval width underflow");
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total_err += left.err + right.err - worst.err;
        panels.push(left);
        panels.push(right);
        ++count;
    }
    double value = 0.0, comp = 0.0;
    std::vector<Panel> all;
    all.reserve(count);
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    // accumulate small panels first to limit rounding noise
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
        double y = it->value - comp;
        double t = value + y;
        comp = (t - value) - y;
        value = t;
    }
    return Result{value, total_err, count};
}

namespace {

// Nodes/weights of n-point Gauss-Legendre, computed by Newton iteration on
// the Legendre polynomial (no tables needed; accurate to machine epsilon).
struct GaussRule {
    std::vector<double> nodes, weights;
};

GaussRule make_gauss_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            deriv = n * (x * p1 - p0) / (x * x - 1.0);
            double step = p1 / deriv;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& gauss16() {
    static const GaussRule rule = make_gauss_rule(16);
    return rule;
}

}  // namespace

double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       int panels) {
    if (panels < 1) throw std::invalid_argument("composite_gauss: need at least one panel");
    const GaussRule& rule = gauss16();
    double h = (b - a) / panels;
    double total = 0.0, comp = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h;
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        double y = 0.5 * h * sum - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

}  // namespace energia::quad
