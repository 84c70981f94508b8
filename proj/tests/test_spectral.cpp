#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "energia/graph.hpp"
#include "energia/spectral.hpp"
#include "oracle_helpers.hpp"

using energia::Graph;
using energia::SpectralSummary;
using energia::eigenvalues_symmetric;
using energia::graph_energy;

namespace {

void check_spectrum(const std::vector<double>& got, const std::vector<double>& want,
                    double tol) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        INFO("index ", i, ": got ", got[i], " want ", want[i]);
        CHECK(oracle::close(got[i], want[i], tol));
    }
}

Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        g.add_edge(i, 5 + i);                // spokes
    }
    return g;
}

}  // namespace

TEST_CASE("textbook spectra come out exactly") {
    // C3: {2, -1, -1}
    check_spectrum(eigenvalues_symmetric(oracle::cycle_graph(3)).eigenvalues, {2, -1, -1},
                   1e-12);
    // P3: {sqrt2, 0, -sqrt2}
    check_spectrum(eigenvalues_symmetric(oracle::path_graph(3)).eigenvalues,
                   {std::sqrt(2.0), 0.0, -std::sqrt(2.0)}, 1e-12);
    // C6: {2, 1, 1, -1, -1, -2}
    check_spectrum(eigenvalues_symmetric(oracle::cycle_graph(6)).eigenvalues,
                   {2, 1, 1, -1, -1, -2}, 1e-12);
    // K4: {3, -1, -1, -1}
    check_spectrum(eigenvalues_symmetric(oracle::complete_graph(4)).eigenvalues,
                   {3, -1, -1, -1}, 1e-12);
    // Petersen: 3 once, 1 five times, -2 four times
    check_spectrum(eigenvalues_symmetric(petersen()).eigenvalues,
                   {3, 1, 1, 1, 1, 1, -2, -2, -2, -2}, 1e-10);
    // K1 has the all-zero 1x1 adjacency matrix
    check_spectrum(eigenvalues_symmetric(Graph(1)).eigenvalues, {0}, 0.0);
}

TEST_CASE("path and cycle spectra match the cosine closed forms") {
    for (int n = 2; n <= 40; ++n)
        check_spectrum(eigenvalues_symmetric(oracle::path_graph(n)).eigenvalues,
                       oracle::path_spectrum(n), 1e-10);
    for (int n = 3; n <= 40; ++n)
        check_spectrum(eigenvalues_symmetric(oracle::cycle_graph(n)).eigenvalues,
                       oracle::cycle_spectrum(n), 1e-9);
}

TEST_CASE("known energies") {
    CHECK(oracle::close(graph_energy(oracle::cycle_graph(3)), 4.0, 1e-12));
    CHECK(oracle::close(graph_energy(oracle::path_graph(3)), 2.0 * std::sqrt(2.0), 1e-12));
    CHECK(oracle::close(graph_energy(oracle::cycle_graph(5)), 6.472135955, 1e-9));
    CHECK(oracle::close(graph_energy(oracle::cycle_graph(6)), 8.0, 1e-10));
    // star with m leaves has eigenvalues +-sqrt(m) and zeros
    CHECK(oracle::close(graph_energy(oracle::star_graph(4)), 4.0, 1e-10));
    CHECK(oracle::close(graph_energy(petersen()), 16.0, 1e-9));
    CHECK(graph_energy(Graph(1)) == 0.0);
}

TEST_CASE("spectral invariants hold on random graphs") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 1 + static_cast<int>(rng() % 24);
        Graph g = oracle::random_graph(n, 0.35, rng);
        SpectralSummary s = eigenvalues_symmetric(g);
        REQUIRE(static_cast<int>(s.eigenvalues.size()) == n);
        // sorted descending
        for (std::size_t i = 1; i < s.eigenvalues.size(); ++i)
            CHECK(s.eigenvalues[i - 1] >= s.eigenvalues[i]);
        // trace of an adjacency matrix is 0
        double sum = 0, sumsq = 0, abssum = 0;
        for (double ev : s.eigenvalues) {
            sum += ev;
            sumsq += ev * ev;
            abssum += std::abs(ev);
        }
        CHECK(oracle::close(sum, 0.0, 1e-8 * n));
        // Frobenius: sum of squares is twice the edge count
        CHECK(oracle::close(sumsq, 2.0 * g.edge_count(), 1e-8 * n));
        CHECK(oracle::close(s.energy, abssum, 1e-12));
    }
}

TEST_CASE("spectrum is invariant under relabeling") {
    std::mt19937 rng(1618);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 14);
        Graph g = oracle::random_graph(n, 0.4, rng);
        Graph h = g.relabeled(oracle::random_permutation(n, rng));
        check_spectrum(eigenvalues_symmetric(h).eigenvalues,
                       eigenvalues_symmetric(g).eigenvalues, 1e-9);
    }
}

TEST_CASE("eigenvalue multiplicity counts clustered values") {
    using energia::eigenvalue_multiplicity;
    SpectralSummary c6 = eigenvalues_symmetric(oracle::cycle_graph(6));
    CHECK(eigenvalue_multiplicity(c6, 2.0) == 1);
    CHECK(eigenvalue_multiplicity(c6, 1.0) == 2);
    CHECK(eigenvalue_multiplicity(c6, -1.0) == 2);
    CHECK(eigenvalue_multiplicity(c6, -2.0) == 1);
    CHECK(eigenvalue_multiplicity(c6, 0.0) == 0);

    SpectralSummary k4 = eigenvalues_symmetric(oracle::complete_graph(4));
    CHECK(eigenvalue_multiplicity(k4, -1.0) == 3);

    SpectralSummary pet = eigenvalues_symmetric(petersen());
    CHECK(eigenvalue_multiplicity(pet, 1.0) == 5);
    CHECK(eigenvalue_multiplicity(pet, -2.0) == 4);

    // values just inside / outside the cluster tolerance
    CHECK(eigenvalue_multiplicity(c6, 1.0 + 0.9e-6) == 2);
    CHECK(eigenvalue_multiplicity(c6, 1.0 + 2e-6, 1e-6) == 0);
    CHECK(eigenvalue_multiplicity(c6, 1.0 + 2e-6, 1e-5) == 2);
}
