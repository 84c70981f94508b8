#pragma once

#include <vector>

#include "energia/graph.hpp"

namespace energia {

inline constexpr double kDefaultClusterTol = 1e-6;

struct SpectralSummary {
    std::vector<double> eigenvalues;  // sorted descending
    double energy;                    // sum of absolute values
};

// Adjacency eigenvalues via Householder tridiagonalization and
// implicit-shift QL.  Absolute accuracy is far better than 1e-10 at the
// sizes we handle; the result is checked against the trace and Frobenius
// identities before it is returned.
SpectralSummary eigenvalues_symmetric(const Graph& g);

double graph_energy(const Graph& g);

// Number of eigenvalues within cluster_tol of target.
int eigenvalue_multiplicity(const SpectralSummary& s, double target,
                            double cluster_tol = kDefaultClusterTol);

}  // namespace energia
