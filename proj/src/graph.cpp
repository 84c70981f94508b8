#include "energia/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace energia {

namespace {

std::string bad_vertex_msg(int v, int n) {
    return "vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")";
}

}  // namespace

Graph::Graph(int n) : n_(n) {
    if (n < 1 || n > kMaxVertices)
        throw std::invalid_argument("vertex count must be in [1, " +
                                    std::to_string(kMaxVertices) + "], got " + std::to_string(n));
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument(bad_vertex_msg(v, n_));
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adj_[u] |= std::uint64_t{1} << v;
    adj_[v] |= std::uint64_t{1} << u;
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[u] >> v) & 1;
}

std::uint64_t Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

int Graph::degree(int v) const {
    check_vertex(v);
    return std::popcount(adj_[v]);
}

int Graph::edge_count() const {
    int total = 0;
    for (int v = 0; v < n_; ++v) total += std::popcount(adj_[v]);
    return total / 2;
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, std::popcount(adj_[v]));
    return best;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(n_);
    for (int v = 0; v < n_; ++v) d[v] = std::popcount(adj_[v]);
    return d;
}

bool Graph::is_connected() const {
    std::uint64_t seen = 1, frontier = 1;
    while (frontier != 0) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f != 0; f &= f - 1)
            next |= adj_[std::countr_zero(f)];
        frontier = next & ~seen;
        seen |= next;
    }
    return std::popcount(seen) == n_;
}

bool Graph::is_cycle_of_length(int m) const {
    if (n_ != m || m < 3) return false;
    for (int v = 0; v < n_; ++v)
        if (std::popcount(adj_[v]) != 2) return false;
    return is_connected();
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (std::uint64_t m = adj_[u] >> (u + 1) << (u + 1); m != 0; m &= m - 1)
            out.emplace_back(u, std::countr_zero(m));
    return out;
}

Graph Graph::relabeled(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw std::invalid_argument("permutation size does not match vertex count");
    std::vector<char> hit(n_, 0);
    for (int v : perm) {
        if (v < 0 || v >= n_ || hit[v]) throw std::invalid_argument("not a permutation");
        hit[v] = 1;
    }
    Graph out(n_);
    for (auto [u, v] : edges()) out.add_edge(perm[u], perm[v]);
    return out;
}

Graph Graph::with_added_vertex(std::uint64_t neighbor_mask) const {
    if (n_ + 1 > kMaxVertices) throw std::invalid_argument("vertex limit exceeded");
    if (neighbor_mask >> n_ != 0) throw std::invalid_argument("neighbor mask names missing vertices");
    Graph out(n_ + 1);
    out.adj_ = adj_;
    out.adj_[n_] = neighbor_mask;
    for (std::uint64_t m = neighbor_mask; m != 0; m &= m - 1)
        out.adj_[std::countr_zero(m)] |= std::uint64_t{1} << n_;
    return out;
}

bool Graph::operator==(const Graph& other) const {
    if (n_ != other.n_) return false;
    return std::equal(adj_.begin(), adj_.begin() + n_, other.adj_.begin());
}

// --- graph6 -----------------------------------------------------------------

Graph decode_graph6(std::string_view record) {
    if (record.empty()) throw std::invalid_argument("graph6: empty record");
    if (record.front() == 126)
        throw std::invalid_argument("graph6: long form (n > 62) not supported");
    for (char c : record) {
        unsigned char b = static_cast<unsigned char>(c);
        if (b < 63 || b > 126)
            throw std::invalid_argument("graph6: byte " + std::to_string(b) +
                                        " outside printable range [63, 126]");
    }
    int n = record.front() - 63;
    if (n < 1)
        throw std::invalid_argument("graph6: vertex count must be at least 1");
    std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::size_t expect = 1 + (nbits + 5) / 6;
    if (record.size() != expect)
        throw std::invalid_argument("graph6: record for n=" + std::to_string(n) + " must be " +
                                    std::to_string(expect) + " bytes, got " +
                                    std::to_string(record.size()));
    Graph g(n);
    std::size_t bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            int group = record[1 + bit / 6] - 63;
            if ((group >> (5 - bit % 6)) & 1) g.add_edge(i, j);
        }
    }
    // remaining pad bits of the final group must be zero
    for (; bit < (expect - 1) * 6; ++bit) {
        int group = record[1 + bit / 6] - 63;
        if ((group >> (5 - bit % 6)) & 1)
            throw std::invalid_argument("graph6: nonzero padding bits");
    }
    return g;
}

std::string encode_graph6(const Graph& g) {
    int n = g.vertex_count();
    if (n > 62) throw std::invalid_argument("graph6: short form requires n <= 62");
    std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::string out(1 + (nbits + 5) / 6, char(63));
    out[0] = static_cast<char>(63 + n);
    std::size_t bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if (g.has_edge(i, j)) out[1 + bit / 6] += 1 << (5 - bit % 6);
    return out;
}

// --- canonical form ---------------------------------------------------------

namespace {

// Iterated neighborhood refinement: start from degrees, repeatedly split
// color classes by the multiset of neighbor colors.  The resulting coloring
// is isomorphism-invariant, so restricting candidate orderings to ones that
// list color classes in order preserves the minimum below.
std::vector<int> refine_colors(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> color(n);
    for (int v = 0; v < n; ++v) color[v] = g.degree(v);
    // normalize to dense ids
    auto renumber = [&](std::vector<std::vector<int>> keys) {
        std::vector<std::vector<int>> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v)
            next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) -
                                       sorted.begin());
        return next;
    };
    {
        std::vector<std::vector<int>> keys(n);
        for (int v = 0; v < n; ++v) keys[v] = {color[v]};
        color = renumber(std::move(keys));
    }
    while (true) {
        std::vector<std::vector<int>> keys(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> nb;
            for (std::uint64_t m = g.neighbors(v); m != 0; m &= m - 1)
                nb.push_back(color[std::countr_zero(m)]);
            std::sort(nb.begin(), nb.end());
            keys[v].push_back(color[v]);
            keys[v].insert(keys[v].end(), nb.begin(), nb.end());
        }
        std::vector<int> next = renumber(std::move(keys));
        if (next == color) break;
        color = std::move(next);
    }
    return color;
}

struct CanonicalSearch {
    const Graph& g;
    int n;
    std::vector<int> color;        // invariant coloring
    std::vector<int> slot_color;   // color required at each position
    std::vector<int> placed;       // placed[pos] = original vertex
    std::vector<std::uint64_t> cur;   // cur[pos] = adjacency bits of placed[pos] vs earlier slots
    std::vector<std::uint64_t> best;  // best (minimal) column bits found so far
    std::uint64_t used = 0;
    bool have_best = false;

    explicit CanonicalSearch(const Graph& graph)
        : g(graph), n(graph.vertex_count()), color(refine_colors(graph)),
          placed(n), cur(n), best(n) {
        std::vector<int> sorted_colors = color;
        std::sort(sorted_colors.begin(), sorted_colors.end());
        slot_color = std::move(sorted_colors);
    }

    void descend(int pos) {
        if (pos == n) {
            if (!have_best ||
                std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end())) {
                best = cur;
                have_best = true;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if ((used >> v) & 1 || color[v] != slot_color[pos]) continue;
            // bit for slot 0 is most significant so that integer order on
            // columns equals lexicographic order on the upper-triangle string
            std::uint64_t column = 0;
            std::uint64_t nb = g.neighbors(v);
            for (int p = 0; p < pos; ++p)
                column |= ((nb >> placed[p]) & 1) << (62 - p);
            // Recheck against the current best every time: best may have been
            // replaced while a sibling subtree ran, so no flag is carried down.
            if (have_best && std::equal(cur.begin(), cur.begin() + pos, best.begin()) &&
                column > best[pos])
                continue;  // whole subtree is lexicographically above best
            placed[pos] = v;
            cur[pos] = column;
            used |= std::uint64_t{1} << v;
            descend(pos + 1);
            used &= ~(std::uint64_t{1} << v);
        }
    }
};

}  // namespace

CanonicalCode canonical_code(const Graph& g, int limit) {
    int n = g.vertex_count();
    if (n > limit)
        throw std::invalid_argument("canonical_code: n=" + std::to_string(n) +
                                    " exceeds limit " + std::to_string(limit));
    CanonicalSearch search(g);
    search.descend(0);
    // rebuild the winning relabeling as a graph and emit its graph6 string
    Graph out(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if ((search.best[j] >> (62 - i)) & 1) out.add_edge(i, j);
    return CanonicalCode{encode_graph6(out)};
}

}  // namespace energia
