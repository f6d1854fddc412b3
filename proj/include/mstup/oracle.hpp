#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mstup/flows.hpp"
#include "mstup/graph.hpp"
#include "mstup/raise.hpp"
#include "mstup/rational.hpp"
#include "mstup/strength.hpp"

namespace mstup {

struct OracleGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr int kOracleVertexLimit = 8;
inline constexpr int kOracleEdgeLimit = 16;
inline constexpr long long kOracleSearchLimit = 8'000'000;

inline void check_search_space(const WeightedGraph& g, const std::vector<long long>& bounds) {
    if (g.vertex_count() > kOracleVertexLimit)
        throw OracleGuardError("brute force limited to " + std::to_string(kOracleVertexLimit) + " vertices");
    if (g.edge_count() > kOracleEdgeLimit)
        throw OracleGuardError("brute force limited to " + std::to_string(kOracleEdgeLimit) + " edges");
    long long product = 1;
    for (long long b : bounds) {
        product *= b + 1;
        if (product > kOracleSearchLimit)
            throw OracleGuardError("brute-force search space exceeds the guard");
    }
}

}  // namespace detail

/// Exhaustive targeted optimum: the cheapest integral upgrade raising the
/// MST weight by at least `target`. Per-edge search bound: lifting past the
/// heaviest weight plus the target never helps. Ties resolved
/// lexicographically by the amount vector.
inline Perturbation brute_targeted(const WeightedGraph& g, long long target) {
    if (target < 0) throw std::invalid_argument("brute_targeted: negative target");
    const int m = g.edge_count();
    long long w_max = 0;
    for (const Edge& e : g.edges()) w_max = std::max(w_max, e.weight);
    std::vector<long long> bounds(m);
    for (int id = 0; id < m; ++id) {
        long long b = w_max - g.edge(id).weight + target;
        if (g.edge(id).cap) b = std::min(b, *g.edge(id).cap);
        bounds[id] = b;
    }
    detail::check_search_space(g, bounds);

    const long long mst0 = mst_weight_units(g, std::vector<long long>(m, 0));
    std::vector<long long> units(m, 0);
    std::optional<std::vector<long long>> best;
    long long best_cost = 0;
    long long max_seen = 0;

    auto dfs = [&](auto&& self, int id, long long cost) -> void {
        if (best && cost > best_cost) return;
        if (id == m) {
            long long inc = mst_weight_units(g, units) - mst0;
            max_seen = std::max(max_seen, inc);
            if (inc >= target && (!best || cost < best_cost)) {
                best = units;
                best_cost = cost;
            }
            return;
        }
        for (long long a = 0; a <= bounds[id]; ++a) {
            units[id] = a;
            self(self, id + 1, cost + a * g.edge(id).cost);
        }
        units[id] = 0;
    };
    dfs(dfs, 0, 0);
    if (!best) throw UnreachableTargetError(Rat(max_seen));
    return Perturbation::from_units(g, *best);
}

/// Exhaustive budgeted optimum: max MST increase under the budget. Ties by
/// minimum cost, then lexicographically by the amount vector.
inline Perturbation brute_budgeted(const WeightedGraph& g, long long budget) {
    if (budget < 0) throw std::invalid_argument("brute_budgeted: negative budget");
    const int m = g.edge_count();
    std::vector<long long> bounds(m);
    for (int id = 0; id < m; ++id) {
        long long b = budget / g.edge(id).cost;
        if (g.edge(id).cap) b = std::min(b, *g.edge(id).cap);
        bounds[id] = b;
    }
    if (g.vertex_count() > detail::kOracleVertexLimit || g.edge_count() > detail::kOracleEdgeLimit)
        throw OracleGuardError("brute force limited to " + std::to_string(detail::kOracleVertexLimit) +
                               " vertices and " + std::to_string(detail::kOracleEdgeLimit) + " edges");
    {
        // Exact leaf count of the budget-pruned search, by a cheap DP.
        std::vector<long long> ways(budget + 1, 0);
        ways[0] = 1;
        for (int id = 0; id < m; ++id) {
            std::vector<long long> next(budget + 1, 0);
            for (long long b = 0; b <= budget; ++b) {
                if (ways[b] == 0) continue;
                for (long long x = 0; x <= bounds[id] && b + x * g.edge(id).cost <= budget; ++x) {
                    next[b + x * g.edge(id).cost] += ways[b];
                    if (next[b + x * g.edge(id).cost] > detail::kOracleSearchLimit)
                        throw OracleGuardError("brute-force search space exceeds the guard");
                }
            }
            ways = std::move(next);
        }
        long long total = 0;
        for (long long w : ways) total += w;
        if (total > detail::kOracleSearchLimit)
            throw OracleGuardError("brute-force search space exceeds the guard");
    }

    const long long mst0 = mst_weight_units(g, std::vector<long long>(m, 0));
    std::vector<long long> units(m, 0);
    std::vector<long long> best_units(m, 0);
    long long best_inc = 0;
    long long best_cost = 0;

    auto dfs = [&](auto&& self, int id, long long remaining) -> void {
        if (id == m) {
            long long inc = mst_weight_units(g, units) - mst0;
            long long cost = budget - remaining;
            if (inc > best_inc || (inc == best_inc && cost < best_cost)) {
                best_inc = inc;
                best_cost = cost;
                best_units = units;
            }
            return;
        }
        long long limit = std::min(bounds[id], remaining / g.edge(id).cost);
        for (long long a = 0; a <= limit; ++a) {
            units[id] = a;
            self(self, id + 1, remaining - a * g.edge(id).cost);
        }
        units[id] = 0;
    };
    dfs(dfs, 0, budget);
    return Perturbation::from_units(g, best_units);
}

/// Exhaustive strength: min over all vertex partitions (>= 2 parts) of
/// c(delta(P)) / (|P| - 1), with an attaining partition of compacted
/// vertices. Recursive enumeration, independent of the production search.
inline std::pair<Rat, std::vector<std::vector<int>>> brute_strength(const CompactedGraph& h) {
    if (h.vertex_count < 2) throw std::invalid_argument("brute_strength: fewer than 2 vertices");
    if (h.vertex_count > 8) throw OracleGuardError("brute_strength limited to 8 compacted vertices");

    std::vector<int> label(h.vertex_count, 0);
    std::optional<Rat> best;
    std::vector<std::vector<int>> best_partition;

    auto evaluate = [&](int parts) {
        if (parts < 2) return;
        long long cut_cost = 0;
        for (const CompactedEdge& e : h.edges)
            if (label[e.u] != label[e.v]) cut_cost += e.cost;
        Rat ratio(BigInt(cut_cost), BigInt(parts - 1));
        if (!best || ratio < *best) {
            best = ratio;
            best_partition.assign(parts, {});
            for (int v = 0; v < h.vertex_count; ++v) best_partition[label[v]].push_back(v);
        }
    };
    auto rec = [&](auto&& self, int v, int used) -> void {
        if (v == h.vertex_count) {
            evaluate(used);
            return;
        }
        for (int l = 0; l <= used; ++l) {
            label[v] = l;
            self(self, v + 1, std::max(used, l + 1));
        }
    };
    rec(rec, 1, 1);  // vertex 0 pinned to part 0
    return {*best, best_partition};
}

/// Re-runs the continuous greedy with an exhaustive candidate search per
/// weight class (brute_strength on each compacted component). Independent of
/// the production raise path; used to cross-check its optimality.
inline Rat oracle_continuous_increase(const WeightedGraph& g, const Rat& budget) {
    if (budget < Rat(0)) throw std::invalid_argument("negative budget");
    Perturbation x = Perturbation::zero(g);
    std::vector<char> saturated(g.edge_count(), 0);
    for (int id = 0; id < g.edge_count(); ++id)
        if (g.edge(id).cap && *g.edge(id).cap == 0) saturated[id] = 1;
    Rat balance = budget;
    Rat increase(0);

    const long long guard = detail::raise_iteration_guard(g);
    long long iterations = 0;
    while (balance > Rat(0)) {
        if (++iterations > guard) throw std::logic_error("oracle greedy did not terminate");

        // Cheapest liftable cut over every weight class and component.
        std::optional<Rat> best_ratio;
        std::vector<int> best_cut;
        Rat best_pivot;
        std::vector<Rat> w = lifted_weights(g, x);
        std::vector<Rat> pivots = w;
        std::sort(pivots.begin(), pivots.end());
        pivots.erase(std::unique(pivots.begin(), pivots.end()), pivots.end());
        for (const Rat& pivot : pivots) {
            CompactedGraph h = compact(g, x, pivot);
            for (const std::vector<int>& comp : detail::compacted_components(h)) {
                if (comp.size() < 2) continue;
                if (comp.size() > 8) throw OracleGuardError("oracle greedy limited to 8 compacted vertices");
                std::vector<int> local(h.vertex_count, -1);
                for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
                std::vector<CompactedEdge> sub_edges;
                for (const CompactedEdge& e : h.edges)
                    if (local[e.u] != -1 && local[e.v] != -1)
                        sub_edges.push_back({local[e.u], local[e.v], e.original_id, e.cost});

                std::vector<int> label(comp.size(), 0);
                auto consider = [&](int parts) {
                    if (parts < 2) return;
                    long long cut_cost = 0;
                    std::vector<int> cut;
                    for (const CompactedEdge& e : sub_edges)
                        if (label[e.u] != label[e.v]) {
                            cut.push_back(e.original_id);
                            cut_cost += e.cost;
                        }
                    std::sort(cut.begin(), cut.end());
                    cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
                    for (int id : cut)
                        if (saturated[id]) return;
                    Rat ratio(BigInt(cut_cost), BigInt(parts - 1));
                    if (!best_ratio || ratio < *best_ratio) {
                        best_ratio = ratio;
                        best_cut = cut;
                        best_pivot = pivot;
                    }
                };
                auto rec = [&](auto&& self, int v, int used) -> void {
                    if (v == static_cast<int>(comp.size())) {
                        consider(used);
                        return;
                    }
                    for (int l = 0; l <= used; ++l) {
                        label[v] = l;
                        self(self, v + 1, std::max(used, l + 1));
                    }
                };
                rec(rec, 1, 1);
            }
        }
        if (!best_ratio) break;

        const int cov = coverage(best_cut, g, x);
        const long long cut_cost = g.cost_of(best_cut);

        // Tolerance: first integral lift changing the coverage.
        std::vector<Rat> scan = lifted_weights(g, x);
        Rat max_w(0);
        for (const Rat& wi : scan) max_w = std::max(max_w, wi);
        long long span = rat_to_long(max_w - best_pivot) + 1;
        std::optional<long long> tol;
        for (long long delta = 1; delta <= span && !tol; ++delta) {
            for (int id : best_cut) scan[id] += Rat(1);
            if (detail::coverage_of_weights(best_cut, g, scan) != cov) tol = delta;
        }
        std::optional<long long> headroom;
        for (int id : best_cut) {
            if (!g.edge(id).cap) continue;
            long long room = *g.edge(id).cap - rat_to_long(x.amounts[id]);
            if (!headroom || room < *headroom) headroom = room;
        }
        std::optional<long long> structural;
        if (tol && headroom) structural = std::min(*tol, *headroom);
        else structural = tol ? tol : headroom;

        Rat amount = balance / Rat(cut_cost);
        if (structural && Rat(*structural) < amount) amount = Rat(*structural);
        for (int id : best_cut) {
            x.amounts[id] += amount;
            if (g.edge(id).cap && x.amounts[id] == Rat(*g.edge(id).cap)) saturated[id] = 1;
        }
        if (!is_integer(amount)) x.integral = false;
        balance -= amount * Rat(cut_cost);
        increase += amount * Rat(cov);
    }
    return increase;
}

struct StructureCheckReport {
    bool pass = true;
    std::vector<std::string> violations;
};

/// For a minimal-cost optimal upgrade, every raised edge left out of an MST
/// must tie the heaviest edge of the cycle it closes.
inline StructureCheckReport optimality_structure_check(const WeightedGraph& g, const Perturbation& x) {
    x.validate(g);
    StructureCheckReport report;
    std::vector<Rat> w = lifted_weights(g, x);
    std::vector<int> order = detail::ids_sorted_by(w, std::vector<char>(w.size(), 0));
    UnionFind uf(g.vertex_count());
    std::vector<char> in_tree(g.edge_count(), 0);
    for (int id : order)
        if (uf.unite(g.edge(id).u, g.edge(id).v)) in_tree[id] = 1;

    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count());  // (neighbor, edge id)
    for (int id = 0; id < g.edge_count(); ++id)
        if (in_tree[id]) {
            adj[g.edge(id).u].push_back({g.edge(id).v, id});
            adj[g.edge(id).v].push_back({g.edge(id).u, id});
        }

    for (int e0 = 0; e0 < g.edge_count(); ++e0) {
        if (in_tree[e0] || x.amounts[e0] == Rat(0)) continue;
        // Max lifted weight along the tree path between the endpoints.
        std::vector<int> parent_edge(g.vertex_count(), -1);
        std::vector<int> parent(g.vertex_count(), -1);
        std::vector<char> seen(g.vertex_count(), 0);
        std::vector<int> stack = {g.edge(e0).u};
        seen[g.edge(e0).u] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [to, id] : adj[v])
                if (!seen[to]) {
                    seen[to] = 1;
                    parent[to] = v;
                    parent_edge[to] = id;
                    stack.push_back(to);
                }
        }
        Rat cycle_max(0);
        for (int v = g.edge(e0).v; v != g.edge(e0).u; v = parent[v])
            cycle_max = std::max(cycle_max, w[parent_edge[v]]);
        if (w[e0] != cycle_max) {
            report.pass = false;
            report.violations.push_back("edge " + std::to_string(e0) + " has lifted weight " + format_rat(w[e0]) +
                                        " but its tree cycle peaks at " + format_rat(cycle_max));
        }
    }
    return report;
}

/// Attaches a clique to both endpoints of every edge: original edges keep
/// weight 0, every new edge weighs 1, all upgrade costs are 1. Weights,
/// costs and caps of the input are ignored; only its topology matters.
inline WeightedGraph gen_kcut_gadget(const WeightedGraph& base, int clique_size) {
    if (clique_size < 2) throw std::invalid_argument("gen_kcut_gadget: clique size must be at least 2");
    const int n = base.vertex_count();
    std::vector<Edge> edges;
    for (const Edge& e : base.edges()) edges.push_back({e.u, e.v, 0, 1, std::nullopt});
    for (int i = 0; i < base.edge_count(); ++i) {
        const int first = n + i * clique_size;
        for (int a = 0; a < clique_size; ++a)
            for (int b = a + 1; b < clique_size; ++b)
                edges.push_back({first + a, first + b, 1, 1, std::nullopt});
        for (int a = 0; a < clique_size; ++a) {
            edges.push_back({first + a, base.edge(i).u, 1, 1, std::nullopt});
            edges.push_back({first + a, base.edge(i).v, 1, 1, std::nullopt});
        }
    }
    return WeightedGraph(n + base.edge_count() * clique_size, std::move(edges));
}

/// Unit costs, zero weights, caps of one; only the topology of the input is
/// kept.
inline WeightedGraph gen_mmstu_instance(const WeightedGraph& base) {
    std::vector<Edge> edges;
    for (const Edge& e : base.edges()) edges.push_back({e.u, e.v, 0, 1, 1});
    return WeightedGraph(base.vertex_count(), std::move(edges));
}

/// Cheapest upgrade of the clique gadget reaching the target increase. Once
/// the cliques are larger than the spent budget, a cheapest solution never
/// raises a clique edge and never raises an edge twice (rerouting inside the
/// clique undoes either), so searching 0/1 lifts of the base edges is exact.
inline long long gadget_min_upgrade_cost(const WeightedGraph& base, long long target_increase,
                                         int clique_size) {
    if (base.edge_count() > 20) throw OracleGuardError("gadget search limited to 20 base edges");
    WeightedGraph gadget = gen_kcut_gadget(base, clique_size);
    const int m = base.edge_count();
    std::vector<long long> units(gadget.edge_count(), 0);
    const long long mst0 = mst_weight_units(gadget, units);
    for (int size = 0; size <= m; ++size) {
        std::vector<int> pick(size);
        auto rec = [&](auto&& self, int start, int depth) -> bool {
            if (depth == size) {
                std::fill(units.begin(), units.begin() + m, 0);
                for (int id : pick) units[id] = 1;
                return mst_weight_units(gadget, units) - mst0 >= target_increase;
            }
            for (int id = start; id < m; ++id) {
                pick[depth] = id;
                if (self(self, id + 1, depth + 1)) return true;
            }
            return false;
        };
        if (rec(rec, 0, 0)) return size;
    }
    throw std::invalid_argument("gadget target increase is unreachable");
}

/// Exhaustive budgeted flow-upgrade optimum (value only).
inline long long brute_mmf_value(const FlowNetwork& net, long long budget) {
    validate_network(net);
    if (net.arcs.size() > 8) throw OracleGuardError("brute flow upgrade limited to 8 arcs");
    std::vector<long long> x(net.arcs.size(), 0);
    long long best = 0;
    auto eval = [&]() {
        FlowNetwork raised = net;
        for (std::size_t i = 0; i < x.size(); ++i) raised.arcs[i].base += x[i];
        best = std::max(best, max_flow(raised).first);
    };
    auto dfs = [&](auto&& self, std::size_t i, long long remaining) -> void {
        if (i == x.size()) {
            eval();
            return;
        }
        long long limit = remaining / net.arcs[i].cost;
        if (net.arcs[i].cap) limit = std::min(limit, *net.arcs[i].cap);
        for (long long a = 0; a <= limit; ++a) {
            x[i] = a;
            self(self, i + 1, remaining - a * net.arcs[i].cost);
        }
        x[i] = 0;
    };
    dfs(dfs, 0, budget);
    return best;
}

/// Exhaustive budgeted path-lengthening optimum (value only).
inline long long brute_msp_value(const FlowNetwork& net, long long budget) {
    validate_network(net);
    if (net.arcs.size() > 8) throw OracleGuardError("brute path upgrade limited to 8 arcs");
    std::vector<long long> x(net.arcs.size(), 0);
    long long best = 0;
    auto dfs = [&](auto&& self, std::size_t i, long long remaining) -> void {
        if (i == x.size()) {
            best = std::max(best, detail::shortest_path_length(net, x));
            return;
        }
        long long limit = remaining / net.arcs[i].cost;
        if (net.arcs[i].cap) limit = std::min(limit, *net.arcs[i].cap);
        for (long long a = 0; a <= limit; ++a) {
            x[i] = a;
            self(self, i + 1, remaining - a * net.arcs[i].cost);
        }
        x[i] = 0;
    };
    dfs(dfs, 0, budget);
    return best;
}

}  // namespace mstup
