#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mstup/graph.hpp"
#include "mstup/rational.hpp"
#include "mstup/union_find.hpp"

namespace mstup {

/// Partition enumeration is exact but exponential (Bell numbers); components
/// beyond this size are rejected instead of silently approximated.
inline constexpr int kStrengthEnumLimit = 12;

namespace detail {

/// Visits every set partition of {0..k-1} as a restricted-growth label
/// vector: labels[i] <= 1 + max(labels[0..i-1]).
template <typename Visit>
void for_each_partition(int k, Visit&& visit) {
    std::vector<int> labels(k, 0);
    std::vector<int> max_before(k, 0);  // max label among positions < i
    while (true) {
        visit(static_cast<const std::vector<int>&>(labels));
        int i = k - 1;
        while (i > 0 && labels[i] == max_before[i] + 1) --i;
        if (i == 0) return;
        ++labels[i];
        for (int j = i + 1; j < k; ++j) {
            max_before[j] = std::max(max_before[j - 1], labels[j - 1]);
            labels[j] = 0;
        }
    }
}

struct ComponentEdge {
    int u = 0;
    int v = 0;
    int original_id = 0;
    long long cost = 1;
};

struct CutCandidate {
    std::vector<int> cut;  // original edge ids, sorted
    long long cost = 0;
    int cov = 0;           // components_increase of the cut
};

/// Enumerates all vertex partitions of a connected component and reports the
/// cut set of each one with its true coverage.
template <typename Visit>
void for_each_cut_candidate(int k, const std::vector<ComponentEdge>& edges, Visit&& visit) {
    if (k > kStrengthEnumLimit)
        throw std::runtime_error("strength enumeration is limited to " +
                                 std::to_string(kStrengthEnumLimit) + " vertices, got " + std::to_string(k));
    for_each_partition(k, [&](const std::vector<int>& labels) {
        CutCandidate c;
        UnionFind uf(k);
        for (const ComponentEdge& e : edges) {
            if (labels[e.u] != labels[e.v]) {
                c.cut.push_back(e.original_id);
                c.cost += e.cost;
            } else {
                uf.unite(e.u, e.v);
            }
        }
        c.cov = uf.components() - 1;
        if (c.cov <= 0) return;
        std::sort(c.cut.begin(), c.cut.end());
        c.cut.erase(std::unique(c.cut.begin(), c.cut.end()), c.cut.end());
        visit(std::move(c));
    });
}

/// Splits a compacted graph into connected components; each entry lists the
/// compacted vertices of one component.
inline std::vector<std::vector<int>> compacted_components(const CompactedGraph& h) {
    UnionFind uf(h.vertex_count);
    for (const CompactedEdge& e : h.edges) uf.unite(e.u, e.v);
    std::vector<std::vector<int>> by_root(h.vertex_count);
    for (int v = 0; v < h.vertex_count; ++v) by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<int>> comps;
    for (auto& group : by_root)
        if (!group.empty()) comps.push_back(std::move(group));
    return comps;
}

}  // namespace detail

/// Witness of a minimum inc_cost set: the vertex partition of the compacted
/// component containing S. Shores and set_S carry original vertex/edge ids.
struct PartitionCertificate {
    Rat pivot;
    std::vector<std::vector<int>> shores;   // original vertex sets, each sorted, ordered by first vertex
    std::vector<long long> shore_cut_costs; // c(delta(P_i)), aligned with shores
    std::vector<int> set_s;                 // original edge ids crossing the partition, sorted
    long long cut_cost = 0;
    int cov = 0;                            // == shores.size() - 1
    Rat inc_cost;                           // cut_cost / cov
};

/// Strength of a connected compacted graph: min over vertex partitions of
/// c(delta(P)) / (|P| - 1), with the attaining partition (compacted vertex
/// sets, connected shores).
inline std::pair<Rat, std::vector<std::vector<int>>> strength(const CompactedGraph& h) {
    if (h.vertex_count < 2) throw std::invalid_argument("strength: graph has fewer than 2 vertices");
    if (h.component_count() != 1) throw std::invalid_argument("strength: graph is not connected");

    std::vector<detail::ComponentEdge> edges;
    for (const CompactedEdge& e : h.edges) edges.push_back({e.u, e.v, e.original_id, e.cost});

    std::optional<detail::CutCandidate> best;
    detail::for_each_cut_candidate(h.vertex_count, edges, [&](detail::CutCandidate c) {
        Rat ratio(BigInt(c.cost), BigInt(c.cov));
        if (!best) { best = std::move(c); return; }
        Rat best_ratio(BigInt(best->cost), BigInt(best->cov));
        if (ratio < best_ratio || (ratio == best_ratio && c.cut < best->cut)) best = std::move(c);
    });
    // A connected graph on >= 2 vertices always has the all-singletons cut.

    int max_id = 0;
    for (const CompactedEdge& e : h.edges) max_id = std::max(max_id, e.original_id);
    std::vector<char> in_cut(max_id + 1, 0);
    for (int id : best->cut) in_cut[id] = 1;
    UnionFind uf(h.vertex_count);
    for (const CompactedEdge& e : h.edges)
        if (!in_cut[e.original_id]) uf.unite(e.u, e.v);
    std::vector<std::vector<int>> parts(h.vertex_count);
    for (int v = 0; v < h.vertex_count; ++v) parts[uf.find(v)].push_back(v);
    std::vector<std::vector<int>> partition;
    for (auto& p : parts)
        if (!p.empty()) partition.push_back(std::move(p));
    std::sort(partition.begin(), partition.end());
    return {Rat(BigInt(best->cost), BigInt(best->cov)), partition};
}

namespace detail {

inline PartitionCertificate make_certificate(const WeightedGraph& g, const CompactedGraph& h,
                                             const std::vector<int>& component,
                                             const CutCandidate& c) {
    PartitionCertificate cert;
    cert.pivot = h.pivot;
    cert.set_s = c.cut;
    cert.cut_cost = c.cost;
    cert.cov = c.cov;
    cert.inc_cost = Rat(BigInt(c.cost), BigInt(c.cov));

    std::vector<char> in_comp(h.vertex_count, 0);
    for (int v : component) in_comp[v] = 1;
    std::vector<char> in_cut(g.edge_count(), 0);
    for (int id : c.cut) in_cut[id] = 1;

    // Shores = connected components of the compacted component minus the cut.
    UnionFind uf(h.vertex_count);
    for (const CompactedEdge& e : h.edges)
        if (!in_cut[e.original_id]) uf.unite(e.u, e.v);
    std::vector<std::vector<int>> by_root(h.vertex_count);
    for (int orig = 0; orig < static_cast<int>(h.vertex_class.size()); ++orig) {
        int cls = h.vertex_class[orig];
        if (in_comp[cls]) by_root[uf.find(cls)].push_back(orig);
    }
    for (auto& shore : by_root) {
        if (shore.empty()) continue;
        std::sort(shore.begin(), shore.end());
        cert.shores.push_back(std::move(shore));
    }
    std::sort(cert.shores.begin(), cert.shores.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    cert.shore_cut_costs.assign(cert.shores.size(), 0);
    std::vector<int> shore_of(g.vertex_count(), -1);
    for (std::size_t i = 0; i < cert.shores.size(); ++i)
        for (int v : cert.shores[i]) shore_of[v] = static_cast<int>(i);
    for (int id : c.cut) {
        cert.shore_cut_costs[shore_of[g.edge(id).u]] += g.edge(id).cost;
        cert.shore_cut_costs[shore_of[g.edge(id).v]] += g.edge(id).cost;
    }
    if (static_cast<int>(cert.shores.size()) - 1 != cert.cov)
        throw std::logic_error("certificate shores do not match coverage");
    return cert;
}

}  // namespace detail

/// Builds the certificate witnessing a given single-class cut: the shores
/// are the components of the compacted component once the cut is removed.
/// The cut must have positive coverage within the pivot's weight class.
inline PartitionCertificate certificate_for_cut(const WeightedGraph& g, const Perturbation& x,
                                                const Rat& pivot, std::vector<int> cut) {
    std::sort(cut.begin(), cut.end());
    cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
    CompactedGraph h = compact(g, x, pivot);
    detail::CutCandidate cand;
    cand.cut = cut;
    cand.cost = g.cost_of(cut);
    cand.cov = components_increase(cut, h);
    if (cand.cov <= 0) throw std::invalid_argument("certificate_for_cut: the cut has zero coverage");
    for (const std::vector<int>& component : detail::compacted_components(h)) {
        std::vector<char> in_comp(h.vertex_count, 0);
        for (int v : component) in_comp[v] = 1;
        bool holds_cut = false;
        for (const CompactedEdge& e : h.edges)
            if (e.original_id == cut.front() && in_comp[e.u]) holds_cut = true;
        if (!holds_cut) continue;
        for (int id : cut) {
            bool inside = false;
            for (const CompactedEdge& e : h.edges)
                if (e.original_id == id && in_comp[e.u]) inside = true;
            if (!inside) throw std::invalid_argument("certificate_for_cut: cut spans several components");
        }
        return detail::make_certificate(g, h, component, cand);
    }
    throw std::invalid_argument("certificate_for_cut: cut edges are not in the pivot's weight class");
}

/// Min inc_cost set among cuts avoiding `excluded` edges (used once caps
/// saturate). Empty result means no liftable set remains.
inline std::optional<PartitionCertificate> min_inc_cost_set_excluding(
    const WeightedGraph& g, const Perturbation& x, const std::vector<char>& excluded) {
    x.validate(g);
    std::vector<Rat> w = lifted_weights(g, x);
    std::vector<Rat> pivots = w;
    std::sort(pivots.begin(), pivots.end());
    pivots.erase(std::unique(pivots.begin(), pivots.end()), pivots.end());

    std::optional<PartitionCertificate> best;
    for (const Rat& pivot : pivots) {
        CompactedGraph h = compact(g, x, pivot);
        for (const std::vector<int>& component : detail::compacted_components(h)) {
            if (component.size() < 2) continue;
            std::vector<int> local(h.vertex_count, -1);
            for (std::size_t i = 0; i < component.size(); ++i) local[component[i]] = static_cast<int>(i);
            std::vector<detail::ComponentEdge> edges;
            for (const CompactedEdge& e : h.edges)
                if (local[e.u] != -1 && local[e.v] != -1)
                    edges.push_back({local[e.u], local[e.v], e.original_id, e.cost});

            detail::for_each_cut_candidate(static_cast<int>(component.size()), edges,
                                           [&](detail::CutCandidate c) {
                for (int id : c.cut)
                    if (!excluded.empty() && excluded[id]) return;
                Rat ratio(BigInt(c.cost), BigInt(c.cov));
                if (best) {
                    if (ratio > best->inc_cost) return;
                    // Pivots are scanned in ascending order, so an equal ratio
                    // at a later pivot (or lex-larger set) never replaces.
                    if (ratio == best->inc_cost && (best->pivot < pivot || !(c.cut < best->set_s))) return;
                }
                best = detail::make_certificate(g, h, component, c);
            });
        }
    }
    return best;
}

/// Set S minimizing c(S)/coverage(S), witnessed by a partition of one
/// compacted component. Ties: smallest pivot, then lexicographically
/// smallest sorted edge-id set.
inline PartitionCertificate min_inc_cost_set(const WeightedGraph& g, const Perturbation& x) {
    auto best = min_inc_cost_set_excluding(g, x, {});
    if (!best) throw std::logic_error("connected graph with >= 2 vertices has a positive-coverage set");
    return *best;
}

/// Largest integral lift of cert.set_s that leaves its coverage unchanged;
/// empty optional means the coverage never changes (infinite tolerance).
/// Requires every lifted weight to be integral. The scan deliberately ignores
/// upgrade caps: tolerance is structural, the raise loop clamps separately.
inline std::optional<long long> tolerance(const PartitionCertificate& cert, const WeightedGraph& g,
                                          const Perturbation& x) {
    std::vector<Rat> w = lifted_weights(g, x);
    Rat max_w(0);
    for (const Rat& wi : w) {
        if (!is_integer(wi)) throw std::invalid_argument("tolerance requires integral lifted weights");
        max_w = std::max(max_w, wi);
    }
    const int base_cov = detail::coverage_of_weights(cert.set_s, g, w);
    // Past max_w - pivot + 1 the lifted set sits strictly above every other
    // edge and weight relations are frozen.
    long long limit = rat_to_long(max_w - cert.pivot) + 1;
    for (long long delta = 1; delta <= limit; ++delta) {
        for (int id : cert.set_s) w[id] += Rat(1);
        if (detail::coverage_of_weights(cert.set_s, g, w) != base_cov) return delta;
    }
    return std::nullopt;
}

}  // namespace mstup
