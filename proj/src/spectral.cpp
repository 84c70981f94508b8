#include "energia/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace energia {

namespace {

// Householder reduction of a symmetric matrix (row-major, n x n) to
// tridiagonal form: diagonal in d, subdiagonal in e[0..n-2].
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                    std::vector<double>& e) {
    d.assign(n, 0.0);
    e.assign(std::max(n - 1, 0), 0.0);
    std::vector<double> u(n), w(n);
    for (int k = 0; k + 2 < n; ++k) {
        // eliminate column k below the subdiagonal
        double norm2 = 0.0;
        for (int i = k + 1; i < n; ++i) norm2 += a[i * n + k] * a[i * n + k];
        double norm = std::sqrt(norm2);
        double pivot = a[(k + 1) * n + k];
        if (norm == 0.0) continue;
        double alpha = pivot >= 0 ? -norm : norm;
        // u = x - alpha * e1, normalized
        double unorm2 = norm2 - 2 * alpha * pivot + alpha * alpha;
        if (unorm2 <= 0.0) continue;
        double inv = 1.0 / std::sqrt(unorm2);
        for (int i = k + 1; i < n; ++i) u[i] = a[i * n + k] * inv;
        u[k + 1] = (pivot - alpha) * inv;
        // w = B u over the trailing block, kappa = u' w
        double kappa = 0.0;
        for (int i = k + 1; i < n; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a[i * n + j] * u[j];
            w[i] = s;
            kappa += u[i] * s;
        }
        // B <- B - 2 u v' - 2 v u'  with v = w - kappa u
        for (int i = k + 1; i < n; ++i) {
            double vi = w[i] - kappa * u[i];
            for (int j = k + 1; j < n; ++j) {
                double vj = w[j] - kappa * u[j];
                a[i * n + j] -= 2.0 * (u[i] * vj + vi * u[j]);
            }
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + (k + 1)] = alpha;
        for (int i = k + 2; i < n; ++i) {
            a[i * n + k] = 0.0;
            a[k * n + i] = 0.0;
        }
    }
    for (int i = 0; i < n; ++i) d[i] = a[i * n + i];
    for (int i = 0; i + 1 < n; ++i) e[i] = a[(i + 1) * n + i];
}

// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues land in d.
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
    int n = static_cast<int>(d.size());
    if (n <= 1) return;
    e.push_back(0.0);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 50)
                throw std::runtime_error("eigensolver failed to converge after 50 sweeps");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            int i = m - 1;
            for (; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (r == 0.0 && i >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    e.pop_back();
}

}  // namespace

SpectralSummary eigenvalues_symmetric(const Graph& g) {
    int n = g.vertex_count();
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u)
        for (std::uint64_t m = g.neighbors(u); m != 0; m &= m - 1) {
            int v = std::countr_zero(m);
            a[u * n + v] = 1.0;
            a[v * n + u] = 1.0;  // defensive symmetrization
        }
    std::vector<double> d, e;
    tridiagonalize(a, n, d, e);
    ql_implicit(d, e);
    std::sort(d.begin(), d.end(), std::greater<>());

    double trace = 0.0, frob = 0.0, energy = 0.0;
    for (double x : d) {
        trace += x;
        frob += x * x;
        energy += std::abs(x);
    }
    double scale = std::max(1.0, static_cast<double>(2 * g.edge_count()));
    if (std::abs(trace) > 1e-8 * scale ||
        std::abs(frob - 2.0 * g.edge_count()) > 1e-8 * scale)
        throw std::runtime_error("eigensolver sanity check failed (trace/Frobenius drift)");
    return SpectralSummary{std::move(d), energy};
}

double graph_energy(const Graph& g) { return eigenvalues_symmetric(g).energy; }

int eigenvalue_multiplicity(const SpectralSummary& s, double target, double cluster_tol) {
    int count = 0;
    for (double x : s.eigenvalues)
        if (std::abs(x - target) <= cluster_tol) ++count;
    return count;
}

}  // namespace energia
