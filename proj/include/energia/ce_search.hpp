#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "energia/conjecture.hpp"
#include "energia/graph.hpp"

namespace energia::ce {

// Independent per-edge Bernoulli sampling policy over graphs on n vertices.
// Probabilities are indexed by the pair (i, j), i < j, in lexicographic
// order, and always clamped to [p_floor, p_ceil] so no edge decision ever
// becomes irreversible.
struct Policy {
    int n = 0;
    std::vector<double> edge_probs;
    double p_floor = 0.01;
    double p_ceil = 0.99;
};

struct SearchConfig {
    int n = 10;
    int generations = 200;
    int population = 1000;
    double elite_frac = 0.10;
    double smoothing = 0.7;       // weight of the fresh elite frequencies
    std::uint64_t seed = 1;
    std::optional<int> delta_penalty;  // score -inf when max degree exceeds this
    int jobs = 1;
    double p_floor = 0.01;
    double p_ceil = 0.99;
    double p_init = 0.5;
};

struct GenerationStats {
    int generation = 0;
    double elite_mean = 0.0;   // mean score of the elite set (-inf if empty)
    double best = 0.0;         // best score in this generation (-inf if none finite)
    std::string best_g6;       // graph6 of this generation's best candidate
    bool any_finite = false;
    double finite_mean = 0.0;  // mean over all finite-scored candidates
    std::uint64_t finite_count = 0;
};

struct SearchTrace {
    std::vector<GenerationStats> generations;
    Score best_score;      // best over the whole run
    std::string best_g6;   // graph6 of the overall best candidate
};

// Connectivity score with an optional degree cap: disconnected samples (and
// samples whose maximum degree exceeds delta_penalty, when set) are tagged
// minus-infinity and can never enter the elite set.
Score score_with_penalty(const Graph& g, std::optional<int> delta_penalty);

// Classic cross-entropy loop: sample population graphs from the policy,
// keep the top elite_frac finite scorers, and pull each edge probability
// toward the elite frequencies by the smoothing weight.  Fully
// deterministic for a given seed at any job count (every candidate draws
// from its own counter-derived RNG stream).
SearchTrace run_search(const SearchConfig& config);

}  // namespace energia::ce
