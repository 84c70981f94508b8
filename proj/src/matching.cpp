#include "energia/matching.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace energia {

namespace {

// Classic array-based blossom implementation: repeatedly grow an alternating
// BFS tree from each free vertex, contracting odd cycles onto their base
// until an augmenting path appears.
class BlossomSolver {
public:
    explicit BlossomSolver(const Graph& graph)
        : g(graph), n(graph.vertex_count()), match(n, -1), parent(n), base(n),
          in_queue(n), in_blossom(n) {}

    std::vector<int> solve() {
        for (int v = 0; v < n; ++v)
            if (match[v] == -1) {
                int tail = find_augmenting_path(v);
                if (tail != -1) augment(tail);
            }
        return match;
    }

private:
    const Graph& g;
    int n;
    std::vector<int> match, parent, base;
    std::vector<char> in_queue, in_blossom;

    int lowest_common_base(int a, int b) {
        std::vector<char> seen(n, 0);
        while (true) {
            a = base[a];
            seen[a] = 1;
            if (match[a] == -1) break;
            a = parent[match[a]];
        }
        while (true) {
            b = base[b];
            if (seen[b]) return b;
            b = parent[match[b]];
        }
    }

    void mark_path(int v, int stop, int child) {
        while (base[v] != stop) {
            in_blossom[base[v]] = 1;
            in_blossom[base[match[v]]] = 1;
            parent[v] = child;
            child = match[v];
            v = parent[match[v]];
        }
    }

    // BFS from root; returns the free endpoint of an augmenting path, or -1.
    int find_augmenting_path(int root) {
        std::fill(in_queue.begin(), in_queue.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        std::iota(base.begin(), base.end(), 0);
        std::queue<int> q;
        q.push(root);
        in_queue[root] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (std::uint64_t m = g.neighbors(v); m != 0; m &= m - 1) {
                int to = std::countr_zero(m);
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
                    // odd cycle: contract the blossom onto its base
                    int stop = lowest_common_base(v, to);
                    std::fill(in_blossom.begin(), in_blossom.end(), 0);
                    mark_path(v, stop, to);
                    mark_path(to, stop, v);
                    for (int i = 0; i < n; ++i)
                        if (in_blossom[base[i]]) {
                            base[i] = stop;
                            if (!in_queue[i]) {
                                in_queue[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent[to] == -1) {
                    parent[to] = v;
                    if (match[to] == -1) return to;
                    in_queue[match[to]] = 1;
                    q.push(match[to]);
                }
            }
        }
        return -1;
    }

    void augment(int v) {
        while (v != -1) {
            int pv = parent[v];
            int next = match[pv];
            match[v] = pv;
            match[pv] = v;
            v = next;
        }
    }
};

struct BruteForce {
    std::vector<std::pair<int, int>> edge_list;
    int best = 0;

    void search(std::size_t idx, std::uint64_t used, int size) {
        int remaining = static_cast<int>(edge_list.size() - idx);
        if (size + remaining <= best) return;
        if (idx == edge_list.size()) {
            best = std::max(best, size);
            return;
        }
        auto [u, v] = edge_list[idx];
        if (!((used >> u) & 1) && !((used >> v) & 1))
            search(idx + 1, used | (std::uint64_t{1} << u) | (std::uint64_t{1} << v),
                   size + 1);
        search(idx + 1, used, size);
    }
};

}  // namespace

Matching maximum_matching(const Graph& g) {
    std::vector<int> match = BlossomSolver(g).solve();
    Matching out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (match[v] > v) out.edges.emplace_back(v, match[v]);
    return out;
}

int matching_number_bruteforce(const Graph& g) {
    BruteForce bf;
    bf.edge_list = g.edges();
    if (static_cast<int>(bf.edge_list.size()) > kBruteForceEdgeBudget)
        throw std::invalid_argument("matching_number_bruteforce: edge budget of " +
                                    std::to_string(kBruteForceEdgeBudget) + " exceeded");
    bf.search(0, 0, 0);
    return bf.best;
}

}  // namespace energia
