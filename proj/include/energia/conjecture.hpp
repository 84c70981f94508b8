#pragma once

#include "energia/graph.hpp"

namespace energia {

inline constexpr double kDefaultScoreTol = 1e-7;

// Score of a graph under the energy/matching inequality:
//   finite          ->  E(G) - 2 * mu(G) * sqrt(max_degree)
//   minus infinity  ->  disconnected input (tagged, not a floating special,
//                       so reports serialize cleanly)
struct Score {
    bool finite = false;
    double value = 0.0;  // meaningful only when finite

    static Score neg_infinity() { return {false, 0.0}; }
    static Score of(double v) { return {true, v}; }

    // Total order with -inf below every finite value.
    bool operator<(const Score& o) const {
        if (finite != o.finite) return !finite;
        return finite && value < o.value;
    }
};

struct ConjectureVerdict {
    int n = 0;
    bool connected = false;
    double energy = 0.0;
    int mu = 0;
    int delta = 0;
    Score score;
    // energy > 2 mu sqrt(delta) + tol, for any connected graph
    bool raw_exceeds = false;
    // raw hit that also falls under the conjecture: 2 <= delta <= 5 and the
    // graph is none of C3, C5, C7
    bool is_conjecture_counterexample = false;
};

Score conjecture_score(const Graph& g);
bool raw_exceeds(const Graph& g, double tol = kDefaultScoreTol);
ConjectureVerdict verdict(const Graph& g, double tol = kDefaultScoreTol);

}  // namespace energia
