#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mstup/rational.hpp"
#include "mstup/union_find.hpp"

namespace mstup {

/// One undirected edge. `cap` bounds the total upgrade applied to the edge;
/// an empty cap means the edge can be raised without limit.
struct Edge {
    int u = 0;
    int v = 0;
    long long weight = 0;
    long long cost = 1;
    std::optional<long long> cap;
};

/// Connected multigraph with per-edge base weight and per-unit upgrade cost.
/// Edge ids are dense: edge i of the constructor list has id i.
class WeightedGraph {
public:
    WeightedGraph(int vertex_count, std::vector<Edge> edges)
        : n_(vertex_count), edges_(std::move(edges)) {
        if (n_ <= 0) throw std::invalid_argument("graph needs at least one vertex");
        UnionFind uf(n_);
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            std::string at = "edge " + std::to_string(i) + ": ";
            if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
                throw std::invalid_argument(at + "endpoint out of range");
            if (e.u == e.v) throw std::invalid_argument(at + "self-loops are not allowed");
            if (e.weight < 0) throw std::invalid_argument(at + "negative base weight");
            if (e.cost < 1) throw std::invalid_argument(at + "unit cost must be at least 1");
            if (e.cap && *e.cap < 0) throw std::invalid_argument(at + "negative upgrade cap");
            uf.unite(e.u, e.v);
        }
        if (uf.components() != 1) throw std::invalid_argument("graph must be connected");
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int id) const { return edges_.at(id); }
    const std::vector<Edge>& edges() const { return edges_; }

    long long cost_of(std::span<const int> edge_ids) const {
        long long total = 0;
        for (int id : edge_ids) total += edge(id).cost;
        return total;
    }

private:
    int n_;
    std::vector<Edge> edges_;
};

/// Per-edge upgrade amounts. Amounts are exact rationals; `integral` marks
/// solutions of the discrete solvers.
struct Perturbation {
    std::vector<Rat> amounts;
    bool integral = true;

    static Perturbation zero(const WeightedGraph& g) {
        Perturbation x;
        x.amounts.assign(g.edge_count(), Rat(0));
        x.integral = true;
        return x;
    }

    static Perturbation from_units(const WeightedGraph& g, const std::vector<long long>& units) {
        if (static_cast<int>(units.size()) != g.edge_count())
            throw std::invalid_argument("unit vector size does not match edge count");
        Perturbation x;
        x.amounts.reserve(units.size());
        for (long long u : units) x.amounts.emplace_back(u);
        x.integral = true;
        x.validate(g);
        return x;
    }

    Rat total_cost(const WeightedGraph& g) const {
        Rat total(0);
        for (int id = 0; id < g.edge_count(); ++id) total += amounts[id] * Rat(g.edge(id).cost);
        return total;
    }

    void validate(const WeightedGraph& g) const {
        if (static_cast<int>(amounts.size()) != g.edge_count())
            throw std::invalid_argument("perturbation size does not match edge count");
        for (int id = 0; id < g.edge_count(); ++id) {
            const Rat& a = amounts[id];
            std::string at = "edge " + std::to_string(id) + ": ";
            if (a < Rat(0)) throw std::invalid_argument(at + "negative upgrade amount");
            if (integral && !is_integer(a)) throw std::invalid_argument(at + "fractional amount in integral perturbation");
            if (g.edge(id).cap && a > Rat(*g.edge(id).cap))
                throw std::invalid_argument(at + "amount exceeds upgrade cap");
        }
    }
};

inline std::vector<Rat> lifted_weights(const WeightedGraph& g, const Perturbation& x) {
    std::vector<Rat> w;
    w.reserve(g.edge_count());
    for (int id = 0; id < g.edge_count(); ++id) w.push_back(Rat(g.edge(id).weight) + x.amounts[id]);
    return w;
}

namespace detail {

inline std::vector<int> ids_sorted_by(const std::vector<Rat>& weights,
                                      const std::vector<char>& in_s) {
    std::vector<int> order(weights.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (weights[a] != weights[b]) return weights[a] < weights[b];
        if (in_s[a] != in_s[b]) return in_s[a] < in_s[b];
        return a < b;
    });
    return order;
}

}  // namespace detail

/// Weight of a minimum spanning tree under w + x (Kruskal, ties by edge id).
inline Rat mst_weight(const WeightedGraph& g, const Perturbation& x) {
    x.validate(g);
    std::vector<Rat> w = lifted_weights(g, x);
    std::vector<int> order = detail::ids_sorted_by(w, std::vector<char>(w.size(), 0));
    UnionFind uf(g.vertex_count());
    Rat total(0);
    for (int id : order)
        if (uf.unite(g.edge(id).u, g.edge(id).v)) total += w[id];
    return total;
}

/// Integral fast path used by the brute-force oracles.
inline long long mst_weight_units(const WeightedGraph& g, const std::vector<long long>& units) {
    std::vector<int> order(units.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<long long> w(units.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = g.edge(static_cast<int>(i)).weight + units[i];
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return w[a] != w[b] ? w[a] < w[b] : a < b;
    });
    UnionFind uf(g.vertex_count());
    long long total = 0;
    for (int id : order)
        if (uf.unite(g.edge(id).u, g.edge(id).v)) total += w[id];
    return total;
}

namespace detail {

inline int coverage_of_weights(std::span<const int> s, const WeightedGraph& g,
                               const std::vector<Rat>& w) {
    std::vector<char> in_s(g.edge_count(), 0);
    for (int id : s) {
        if (id < 0 || id >= g.edge_count()) throw std::invalid_argument("coverage: edge id out of range");
        in_s[id] = 1;
    }
    std::vector<int> order = ids_sorted_by(w, in_s);
    UnionFind uf(g.vertex_count());
    int used = 0;
    for (int id : order)
        if (uf.unite(g.edge(id).u, g.edge(id).v) && in_s[id]) ++used;
    return used;
}

}  // namespace detail

/// Minimum number of edges of S used by any minimum spanning tree under
/// w + x. Kruskal with non-S edges preferred inside every weight class; the
/// matroid exchange property makes that count exact.
inline int coverage(std::span<const int> s, const WeightedGraph& g, const Perturbation& x) {
    return detail::coverage_of_weights(s, g, lifted_weights(g, x));
}

/// Same tie-broken Kruskal over integral weights, S given as a bitmask.
/// Fast path for exhaustive loops (oracles, property sweeps); m <= 63.
inline int coverage_units_mask(std::uint64_t s_mask, const WeightedGraph& g,
                               const std::vector<long long>& units) {
    const int m = g.edge_count();
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::vector<long long> w(m);
    for (int i = 0; i < m; ++i) w[i] = g.edge(i).weight + units[i];
    auto in_s = [&](int id) { return (s_mask >> id) & 1u; };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (w[a] != w[b]) return w[a] < w[b];
        if (in_s(a) != in_s(b)) return in_s(a) < in_s(b);
        return a < b;
    });
    UnionFind uf(g.vertex_count());
    int used = 0;
    for (int id : order)
        if (uf.unite(g.edge(id).u, g.edge(id).v) && in_s(id)) ++used;
    return used;
}

struct CompactedEdge {
    int u = 0;  // compacted vertex (contraction class) indices
    int v = 0;
    int original_id = 0;
    long long cost = 1;
};

/// Weight-class graph: edges heavier than the pivot deleted, lighter ones
/// contracted. Self-loops produced by contraction are dropped.
struct CompactedGraph {
    int vertex_count = 0;
    std::vector<int> vertex_class;  // original vertex -> compacted vertex
    std::vector<CompactedEdge> edges;
    Rat pivot;

    int component_count() const {
        UnionFind uf(vertex_count);
        for (const CompactedEdge& e : edges) uf.unite(e.u, e.v);
        return uf.components();
    }
};

inline CompactedGraph compact(const WeightedGraph& g, const Perturbation& x, const Rat& pivot) {
    std::vector<Rat> w = lifted_weights(g, x);
    if (std::find(w.begin(), w.end(), pivot) == w.end())
        throw std::invalid_argument("compact: pivot " + format_rat(pivot) + " is not a weight of the lifted graph");
    UnionFind uf(g.vertex_count());
    for (int id = 0; id < g.edge_count(); ++id)
        if (w[id] < pivot) uf.unite(g.edge(id).u, g.edge(id).v);

    CompactedGraph h;
    h.pivot = pivot;
    h.vertex_class.assign(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        int root = uf.find(v);
        if (h.vertex_class[root] == -1) h.vertex_class[root] = h.vertex_count++;
        h.vertex_class[v] = h.vertex_class[root];
    }
    for (int id = 0; id < g.edge_count(); ++id) {
        if (w[id] != pivot) continue;
        int cu = h.vertex_class[g.edge(id).u];
        int cv = h.vertex_class[g.edge(id).v];
        if (cu == cv) continue;  // contracted into a self-loop
        h.edges.push_back({cu, cv, id, g.edge(id).cost});
    }
    return h;
}

/// Increase in the number of connected components of h after deleting S
/// (original edge ids; every id must survive in h).
inline int components_increase(std::span<const int> s, const CompactedGraph& h) {
    std::vector<char> drop;
    if (!h.edges.empty()) {
        int max_id = 0;
        for (const CompactedEdge& e : h.edges) max_id = std::max(max_id, e.original_id);
        drop.assign(max_id + 1, 0);
    }
    for (int id : s) {
        bool present = false;
        for (const CompactedEdge& e : h.edges)
            if (e.original_id == id) { present = true; break; }
        if (!present)
            throw std::invalid_argument("components_increase: edge " + std::to_string(id) + " is not in the compacted graph");
        drop[id] = 1;
    }
    UnionFind uf(h.vertex_count);
    for (const CompactedEdge& e : h.edges)
        if (!drop[e.original_id]) uf.unite(e.u, e.v);
    return uf.components() - h.component_count();
}

/// Edges whose lifted weight is at most that of e (e itself included).
inline std::vector<int> sm_eq(int e, const WeightedGraph& g, const Perturbation& x) {
    if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("sm_eq: edge id out of range");
    std::vector<Rat> w = lifted_weights(g, x);
    std::vector<int> out;
    for (int id = 0; id < g.edge_count(); ++id)
        if (w[id] <= w[e]) out.push_back(id);
    return out;
}

}  // namespace mstup
