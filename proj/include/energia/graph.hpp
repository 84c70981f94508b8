#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace energia {

// Simple undirected graphs on up to 64 vertices, stored as one 64-bit
// neighbor mask per vertex.  Everything downstream (spectra, matchings,
// scans) works on this type; 64 vertices covers the whole graph6 short
// form (n <= 62) with room to spare.
inline constexpr int kMaxVertices = 64;

class Graph {
public:
    explicit Graph(int n);

    static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const;

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;

    // Neighbor bitmask of v (bit u set iff u~v).
    std::uint64_t neighbors(int v) const;

    int degree(int v) const;
    int max_degree() const;
    std::vector<int> degrees() const;

    bool is_connected() const;
    // True iff the graph is precisely the cycle C_m.
    bool is_cycle_of_length(int m) const;

    std::vector<std::pair<int, int>> edges() const;

    // Copy with vertex i renamed to perm[i].
    Graph relabeled(std::span<const int> perm) const;
    // Copy with one extra vertex adjacent to the vertices in neighbor_mask.
    Graph with_added_vertex(std::uint64_t neighbor_mask) const;

    bool operator==(const Graph& other) const;

private:
    void check_vertex(int v) const;

    int n_;
    std::array<std::uint64_t, kMaxVertices> adj_{};
};

// graph6 codec (short form, 1 <= n <= 62).  Upper-triangle bits in
// column-major order, packed big-endian into 6-bit groups offset by 63.
Graph decode_graph6(std::string_view record);
std::string encode_graph6(const Graph& g);

// Optional stream header some tools emit in front of graph6 data.
inline constexpr std::string_view kGraph6Header = ">>graph6<<";

// Canonical form: the lexicographically smallest graph6 string over the
// relabelings that respect an iterated degree-refinement coloring.  Equal
// codes <=> isomorphic graphs, and the code decodes back to a
// representative of the class.
struct CanonicalCode {
    std::string bytes;
    auto operator<=>(const CanonicalCode&) const = default;
};

inline constexpr int kDefaultCanonicalLimit = 16;

CanonicalCode canonical_code(const Graph& g, int limit = kDefaultCanonicalLimit);

}  // namespace energia
