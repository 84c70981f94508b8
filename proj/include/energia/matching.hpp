#pragma once

#include <utility>
#include <vector>

#include "energia/graph.hpp"

namespace energia {

struct Matching {
    std::vector<std::pair<int, int>> edges;
    int size() const { return static_cast<int>(edges.size()); }
};

// Maximum matching on a general graph (Edmonds blossom algorithm).
Matching maximum_matching(const Graph& g);

inline int matching_number(const Graph& g) { return maximum_matching(g).size(); }

// Independent exponential-time check, branch and bound over the edge list.
// Refuses graphs with more than kBruteForceEdgeBudget edges.
inline constexpr int kBruteForceEdgeBudget = 24;
int matching_number_bruteforce(const Graph& g);

}  // namespace energia
