#include "energia/conjecture.hpp"

#include <cmath>

#include "energia/matching.hpp"
#include "energia/spectral.hpp"

namespace energia {

ConjectureVerdict verdict(const Graph& g, double tol) {
    ConjectureVerdict v;
    v.n = g.vertex_count();
    v.connected = g.is_connected();
    if (!v.connected) {
        v.score = Score::neg_infinity();
        return v;
    }
    v.energy = graph_energy(g);
    v.mu = matching_number(g);
    v.delta = g.max_degree();
    double bound = 2.0 * v.mu * std::sqrt(static_cast<double>(v.delta));
    v.score = Score::of(v.energy - bound);
    v.raw_exceeds = v.energy > bound + tol;
    bool excluded_cycle = g.is_cycle_of_length(3) || g.is_cycle_of_length(5) ||
                          g.is_cycle_of_length(7);
    v.is_conjecture_counterexample =
        v.raw_exceeds && v.delta >= 2 && v.delta <= 5 && !excluded_cycle;
    return v;
}

Score conjecture_score(const Graph& g) {
    if (!g.is_connected()) return Score::neg_infinity();
    double bound = 2.0 * matching_number(g) * std::sqrt(static_cast<double>(g.max_degree()));
    return Score::of(graph_energy(g) - bound);
}

bool raw_exceeds(const Graph& g, double tol) { return verdict(g, tol).raw_exceeds; }

}  // namespace energia
