#pragma once

// Shared test fixtures: exhaustive enumeration of small connected graph
// structures (deduped up to vertex relabeling), deterministic pseudorandom
// weight/cost draws, and spanning-tree-enumeration oracles that stay
// independent of the library's Kruskal paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "mstup/graph.hpp"

namespace corpus {

struct EdgePair {
    int u = 0;
    int v = 0;
};

inline std::vector<EdgePair> all_pairs(int n) {
    std::vector<EdgePair> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    return pairs;
}

inline bool mask_connected(int n, const std::vector<EdgePair>& pairs, std::uint32_t mask) {
    mstup::UnionFind uf(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1u) uf.unite(pairs[i].u, pairs[i].v);
    return uf.components() == 1;
}

/// All connected simple graphs on exactly n labeled vertices with at most
/// max_edges edges, deduped up to vertex permutation. Cached per call shape.
inline const std::vector<std::vector<EdgePair>>& connected_structures(int n, int max_edges) {
    static std::map<std::pair<int, int>, std::vector<std::vector<EdgePair>>> cache;
    auto key = std::make_pair(n, max_edges);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;

    std::vector<EdgePair> pairs = all_pairs(n);
    const int p = static_cast<int>(pairs.size());
    std::vector<int> pair_index(n * n, -1);
    for (int i = 0; i < p; ++i) pair_index[pairs[i].u * n + pairs[i].v] = i;

    std::vector<std::vector<int>> perms;
    {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
    }
    auto canonical = [&](std::uint32_t mask) {
        std::uint32_t best = mask;
        for (const std::vector<int>& perm : perms) {
            std::uint32_t image = 0;
            for (int i = 0; i < p; ++i) {
                if (!(mask >> i & 1u)) continue;
                int a = perm[pairs[i].u], b = perm[pairs[i].v];
                if (a > b) std::swap(a, b);
                image |= 1u << pair_index[a * n + b];
            }
            best = std::min(best, image);
        }
        return best;
    };

    std::vector<std::vector<EdgePair>> out;
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        int m = __builtin_popcount(mask);
        if (m < n - 1 || m > max_edges) continue;
        if (!mask_connected(n, pairs, mask)) continue;
        if (canonical(mask) != mask) continue;
        std::vector<EdgePair> edges;
        for (int i = 0; i < p; ++i)
            if (mask >> i & 1u) edges.push_back(pairs[i]);
        out.push_back(std::move(edges));
    }
    return cache.emplace(key, std::move(out)).first->second;
}

struct Draw {
    std::vector<long long> weights;
    std::vector<long long> costs;
};

/// Deterministic weight/cost assignments (raw engine output modulo ranges,
/// so the stream is identical across standard libraries).
inline std::vector<Draw> draws(int m, int count, long long max_w, long long max_c, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<Draw> out;
    for (int k = 0; k < count; ++k) {
        Draw d;
        for (int i = 0; i < m; ++i) d.weights.push_back(static_cast<long long>(rng() % (max_w + 1)));
        for (int i = 0; i < m; ++i) d.costs.push_back(1 + static_cast<long long>(rng() % max_c));
        out.push_back(std::move(d));
    }
    return out;
}

inline mstup::WeightedGraph build(int n, const std::vector<EdgePair>& structure, const Draw& d) {
    std::vector<mstup::Edge> edges;
    for (std::size_t i = 0; i < structure.size(); ++i)
        edges.push_back({structure[i].u, structure[i].v, d.weights[i], d.costs[i], std::nullopt});
    return mstup::WeightedGraph(n, std::move(edges));
}

inline mstup::WeightedGraph build_unit(int n, const std::vector<EdgePair>& structure) {
    std::vector<mstup::Edge> edges;
    for (const EdgePair& e : structure) edges.push_back({e.u, e.v, 0, 1, std::nullopt});
    return mstup::WeightedGraph(n, std::move(edges));
}

/// Edge masks of all spanning trees (any weights).
inline std::vector<std::uint32_t> spanning_tree_masks(const mstup::WeightedGraph& g) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    std::vector<std::uint32_t> trees;
    std::vector<int> pick(n - 1);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == n - 1) {
            mstup::UnionFind uf(n);
            for (int i = 0; i < n - 1; ++i) uf.unite(g.edge(pick[i]).u, g.edge(pick[i]).v);
            if (uf.components() == 1) {
                std::uint32_t mask = 0;
                for (int i = 0; i < n - 1; ++i) mask |= 1u << pick[i];
                trees.push_back(mask);
            }
            return;
        }
        for (int id = start; id < m; ++id) {
            pick[depth] = id;
            self(self, id + 1, depth + 1);
        }
    };
    if (n == 1) return {0u};
    rec(rec, 0, 0);
    return trees;
}

/// Coverage by definition: minimum |T interseced S| over all minimum-weight
/// spanning trees, found by enumerating every spanning tree.
inline int st_coverage(std::uint32_t s_mask, const mstup::WeightedGraph& g,
                       const std::vector<long long>& units,
                       const std::vector<std::uint32_t>& trees) {
    long long best_weight = -1;
    for (std::uint32_t t : trees) {
        long long w = 0;
        for (int id = 0; id < g.edge_count(); ++id)
            if (t >> id & 1u) w += g.edge(id).weight + units[id];
        if (best_weight < 0 || w < best_weight) best_weight = w;
    }
    int best = g.vertex_count();
    for (std::uint32_t t : trees) {
        long long w = 0;
        for (int id = 0; id < g.edge_count(); ++id)
            if (t >> id & 1u) w += g.edge(id).weight + units[id];
        if (w == best_weight) best = std::min(best, __builtin_popcount(t & s_mask));
    }
    return best;
}

/// Minimum-cost edge set splitting the graph into at least k components,
/// by direct partition enumeration (vertex 0 pinned to part 0).
inline long long brute_kcut_cost(const mstup::WeightedGraph& g, int k) {
    long long best = -1;
    std::vector<int> label(g.vertex_count(), 0);
    auto evaluate = [&](int parts) {
        if (parts != k) return;
        long long cost = 0;
        for (const mstup::Edge& e : g.edges())
            if (label[e.u] != label[e.v]) cost += e.cost;
        if (best < 0 || cost < best) best = cost;
    };
    auto rec = [&](auto&& self, int v, int used) -> void {
        if (v == g.vertex_count()) {
            evaluate(used);
            return;
        }
        for (int l = 0; l <= used; ++l) {
            label[v] = l;
            self(self, v + 1, std::max(used, l + 1));
        }
    };
    rec(rec, 1, 1);
    return best;
}

}  // namespace corpus
