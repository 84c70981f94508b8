#include "energia/ce_search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace energia::ce {

namespace {

// SplitMix64 finalizer; the per-candidate stream key mixes seed, generation
// and candidate index so any partition of the population across threads
// draws identical bits.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct Candidate {
    Graph graph{1};
    Score score;
};

Candidate sample_candidate(const Policy& policy, std::uint64_t seed, int generation,
                           int index, std::optional<int> delta_penalty) {
    SplitMix64 rng{mix64(mix64(seed ^ 0x6E756D6272657221ULL) ^
                         (static_cast<std::uint64_t>(generation) << 32 ^
                          static_cast<std::uint64_t>(index)))};
    Candidate c{Graph(policy.n), Score::neg_infinity()};
    std::size_t e = 0;
    for (int i = 0; i < policy.n; ++i)
        for (int j = i + 1; j < policy.n; ++j, ++e)
            if (rng.uniform() < policy.edge_probs[e]) c.graph.add_edge(i, j);
    c.score = score_with_penalty(c.graph, delta_penalty);
    return c;
}

void validate(const SearchConfig& cfg) {
    if (cfg.n < 2 || cfg.n > 62) throw std::invalid_argument("search: n must be in [2, 62]");
    if (cfg.generations < 1) throw std::invalid_argument("search: generations must be >= 1");
    if (cfg.population < 10) throw std::invalid_argument("search: population must be >= 10");
    if (!(cfg.elite_frac > 0.0 && cfg.elite_frac < 1.0))
        throw std::invalid_argument("search: elite_frac must be in (0, 1)");
    if (!(cfg.smoothing >= 0.0 && cfg.smoothing <= 1.0))
        throw std::invalid_argument("search: smoothing must be in [0, 1]");
    if (!(cfg.p_floor > 0.0 && cfg.p_floor <= cfg.p_ceil && cfg.p_ceil < 1.0))
        throw std::invalid_argument("search: need 0 < p_floor <= p_ceil < 1");
    if (!(cfg.p_init >= cfg.p_floor && cfg.p_init <= cfg.p_ceil))
        throw std::invalid_argument("search: p_init must lie in [p_floor, p_ceil]");
    if (cfg.jobs < 1) throw std::invalid_argument("search: jobs must be >= 1");
    if (cfg.delta_penalty && *cfg.delta_penalty < 1)
        throw std::invalid_argument("search: delta_penalty must be >= 1");
}

}  // namespace

Score score_with_penalty(const Graph& g, std::optional<int> delta_penalty) {
    if (delta_penalty && g.max_degree() > *delta_penalty) return Score::neg_infinity();
    return conjecture_score(g);
}

SearchTrace run_search(const SearchConfig& cfg) {
    validate(cfg);
    const int pairs = cfg.n * (cfg.n - 1) / 2;
    Policy policy{cfg.n, std::vector<double>(pairs, cfg.p_init), cfg.p_floor, cfg.p_ceil};
    const int elite_target = std::max(1, static_cast<int>(std::ceil(cfg.elite_frac * cfg.population)));

    SearchTrace trace;
    trace.best_score = Score::neg_infinity();

    std::vector<Candidate> pop(cfg.population);
    for (int gen = 0; gen < cfg.generations; ++gen) {
        if (cfg.jobs == 1) {
            for (int i = 0; i < cfg.population; ++i)
                pop[i] = sample_candidate(policy, cfg.seed, gen, i, cfg.delta_penalty);
        } else {
            std::vector<std::future<void>> futures;
            int chunk = (cfg.population + cfg.jobs - 1) / cfg.jobs;
            for (int j = 0; j < cfg.jobs; ++j) {
                int lo = j * chunk, hi = std::min(cfg.population, lo + chunk);
                if (lo >= hi) break;
                futures.push_back(std::async(std::launch::async, [&, lo, hi] {
                    for (int i = lo; i < hi; ++i)
                        pop[i] = sample_candidate(policy, cfg.seed, gen, i, cfg.delta_penalty);
                }));
            }
            for (auto& f : futures) f.get();
        }

        // rank finite scorers, best first; ties broken by candidate index
        std::vector<int> order;
        order.reserve(cfg.population);
        double finite_sum = 0.0;
        for (int i = 0; i < cfg.population; ++i)
            if (pop[i].score.finite) {
                order.push_back(i);
                finite_sum += pop[i].score.value;
            }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (pop[a].score.value != pop[b].score.value)
                return pop[a].score.value > pop[b].score.value;
            return a < b;
        });
        int elite_count = std::min<int>(elite_target, static_cast<int>(order.size()));

        GenerationStats stats;
        stats.generation = gen;
        stats.any_finite = !order.empty();
        stats.finite_count = order.size();
        stats.finite_mean = order.empty() ? 0.0 : finite_sum / static_cast<double>(order.size());
        if (elite_count > 0) {
            double elite_sum = 0.0;
            for (int i = 0; i < elite_count; ++i) elite_sum += pop[order[i]].score.value;
            stats.elite_mean = elite_sum / elite_count;
            stats.best = pop[order[0]].score.value;
            stats.best_g6 = encode_graph6(pop[order[0]].graph);
            if (trace.best_score < pop[order[0]].score) {
                trace.best_score = pop[order[0]].score;
                trace.best_g6 = stats.best_g6;
            }
            // pull probabilities toward elite edge frequencies
            std::vector<double> freq(pairs, 0.0);
            for (int i = 0; i < elite_count; ++i) {
                const Graph& g = pop[order[i]].graph;
                std::size_t e = 0;
                for (int a = 0; a < cfg.n; ++a)
                    for (int b = a + 1; b < cfg.n; ++b, ++e)
                        if (g.has_edge(a, b)) freq[e] += 1.0;
            }
            for (int e = 0; e < pairs; ++e) {
                double p = (1.0 - cfg.smoothing) * policy.edge_probs[e] +
                           cfg.smoothing * freq[e] / elite_count;
                policy.edge_probs[e] = std::clamp(p, policy.p_floor, policy.p_ceil);
            }
        }
        trace.generations.push_back(std::move(stats));
    }
    return trace;
}

}  // namespace energia::ce
