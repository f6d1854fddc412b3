#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace mstup {

/// Directed arc of an upgrade network. `base` is the capacity (flow
/// problems) or length (path problems); `cost` the price of one unit of
/// upgrade; `cap` the total upgrade bound, empty meaning unbounded.
struct Arc {
    int from = 0;
    int to = 0;
    long long base = 0;
    long long cost = 1;
    std::optional<long long> cap;
};

struct FlowNetwork {
    int node_count = 0;
    int source = 0;
    int sink = 0;
    std::vector<Arc> arcs;
};

inline void validate_network(const FlowNetwork& net) {
    if (net.node_count <= 0) throw std::invalid_argument("network needs at least one node");
    if (net.source == net.sink) throw std::invalid_argument("source and sink must differ");
    auto node_ok = [&](int v) { return v >= 0 && v < net.node_count; };
    if (!node_ok(net.source) || !node_ok(net.sink)) throw std::invalid_argument("source or sink out of range");
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        std::string at = "arc " + std::to_string(i) + ": ";
        if (!node_ok(a.from) || !node_ok(a.to)) throw std::invalid_argument(at + "endpoint out of range");
        if (a.base < 0) throw std::invalid_argument(at + "negative base value");
        if (a.cost < 1) throw std::invalid_argument(at + "unit cost must be at least 1");
        if (a.cap && *a.cap < 0) throw std::invalid_argument(at + "negative upgrade cap");
    }
}

namespace detail {

inline constexpr long long kInfiniteCap = std::numeric_limits<long long>::max() / 4;
inline constexpr long long kUnreachable = std::numeric_limits<long long>::max() / 4;

/// Residual graph with per-arc costs. Integral successive-shortest-path
/// min-cost flow; Bellman-Ford handles the negative reverse costs.
class ResidualGraph {
public:
    explicit ResidualGraph(int n) : n_(n), adj_(n) {}

    int add_arc(int from, int to, long long cap, long long cost) {
        int idx = static_cast<int>(arcs_.size());
        arcs_.push_back({from, to, cap, cost});
        arcs_.push_back({to, from, 0, -cost});
        adj_[from].push_back(idx);
        adj_[to].push_back(idx + 1);
        return idx;
    }

    long long flow_on(int idx) const { return arcs_[idx + 1].cap; }

    /// Max flow by BFS augmentation, ignoring costs.
    long long max_flow(int s, int t) {
        long long total = 0;
        while (true) {
            std::vector<int> parent_arc(n_, -1);
            std::vector<char> seen(n_, 0);
            std::queue<int> q;
            q.push(s);
            seen[s] = 1;
            while (!q.empty() && !seen[t]) {
                int v = q.front();
                q.pop();
                for (int idx : adj_[v]) {
                    if (arcs_[idx].cap <= 0 || seen[arcs_[idx].to]) continue;
                    seen[arcs_[idx].to] = 1;
                    parent_arc[arcs_[idx].to] = idx;
                    q.push(arcs_[idx].to);
                }
            }
            if (!seen[t]) return total;
            long long bottleneck = kInfiniteCap;
            for (int v = t; v != s; v = arcs_[parent_arc[v]].from)
                bottleneck = std::min(bottleneck, arcs_[parent_arc[v]].cap);
            for (int v = t; v != s; v = arcs_[parent_arc[v]].from) push(parent_arc[v], bottleneck);
            total += bottleneck;
        }
    }

    /// Cheapest residual s->v distances and a parent arc tree.
    void bellman(int s, std::vector<long long>& dist, std::vector<int>& parent_arc) const {
        dist.assign(n_, kUnreachable);
        parent_arc.assign(n_, -1);
        dist[s] = 0;
        for (int round = 0; round < n_; ++round) {
            bool changed = false;
            for (int idx = 0; idx < static_cast<int>(arcs_.size()); ++idx) {
                const ArcRec& a = arcs_[idx];
                if (a.cap <= 0 || dist[a.from] >= kUnreachable) continue;
                if (dist[a.from] + a.cost < dist[a.to]) {
                    dist[a.to] = dist[a.from] + a.cost;
                    parent_arc[a.to] = idx;
                    changed = true;
                }
            }
            if (!changed) break;
        }
    }

    /// Sends `amount` along the parent tree path into t.
    void augment_path(const std::vector<int>& parent_arc, int s, int t, long long amount) {
        for (int v = t; v != s; v = arcs_[parent_arc[v]].from) push(parent_arc[v], amount);
    }

    long long path_bottleneck(const std::vector<int>& parent_arc, int s, int t) const {
        long long b = kInfiniteCap;
        for (int v = t; v != s; v = arcs_[parent_arc[v]].from) b = std::min(b, arcs_[parent_arc[v]].cap);
        return b;
    }

    struct ResidualArcView {
        int from, to;
        long long cost;
    };

    std::vector<ResidualArcView> residual_arcs() const {
        std::vector<ResidualArcView> out;
        for (const ArcRec& a : arcs_)
            if (a.cap > 0) out.push_back({a.from, a.to, a.cost});
        return out;
    }

    int node_count() const { return n_; }

    /// Min-cost flow of exactly `demand`; false when the demand exceeds the
    /// max flow. Flows are then readable through flow_on.
    bool solve_demand(int s, int t, long long demand) {
        long long sent = 0;
        while (sent < demand) {
            std::vector<long long> dist;
            std::vector<int> parent_arc;
            bellman(s, dist, parent_arc);
            if (dist[t] >= kUnreachable) return false;
            long long amount = std::min(demand - sent, path_bottleneck(parent_arc, s, t));
            augment_path(parent_arc, s, t, amount);
            sent += amount;
        }
        return true;
    }

private:
    struct ArcRec {
        int from, to;
        long long cap;
        long long cost;
    };

    void push(int idx, long long amount) {
        arcs_[idx].cap -= amount;
        arcs_[idx ^ 1].cap += amount;
    }

    int n_;
    std::vector<ArcRec> arcs_;
    std::vector<std::vector<int>> adj_;
};

inline long long shortest_path_length(const FlowNetwork& net, const std::vector<long long>& extra) {
    std::vector<std::vector<std::pair<int, long long>>> adj(net.node_count);
    for (std::size_t i = 0; i < net.arcs.size(); ++i)
        adj[net.arcs[i].from].push_back({net.arcs[i].to, net.arcs[i].base + extra[i]});
    std::vector<long long> dist(net.node_count, kUnreachable);
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[net.source] = 0;
    pq.push({0, net.source});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        for (auto [to, len] : adj[v])
            if (d + len < dist[to]) {
                dist[to] = d + len;
                pq.push({dist[to], to});
            }
    }
    return dist[net.sink];
}

}  // namespace detail

/// Integral max flow with capacities `base`.
inline std::pair<long long, std::vector<long long>> max_flow(const FlowNetwork& net) {
    validate_network(net);
    detail::ResidualGraph rg(net.node_count);
    std::vector<int> idx;
    idx.reserve(net.arcs.size());
    for (const Arc& a : net.arcs) idx.push_back(rg.add_arc(a.from, a.to, a.base, 0));
    long long value = rg.max_flow(net.source, net.sink);
    std::vector<long long> flows;
    flows.reserve(idx.size());
    for (int i : idx) flows.push_back(rg.flow_on(i));
    return {value, flows};
}

/// Integral min-cost flow of exactly `demand` with capacities `base` and
/// per-unit flow costs `cost`. Throws when the demand is infeasible.
inline std::vector<long long> min_cost_flow(const FlowNetwork& net, long long demand) {
    validate_network(net);
    if (demand < 0) throw std::invalid_argument("min_cost_flow: negative demand");
    detail::ResidualGraph rg(net.node_count);
    std::vector<int> idx;
    idx.reserve(net.arcs.size());
    for (const Arc& a : net.arcs) idx.push_back(rg.add_arc(a.from, a.to, a.base, a.cost));
    if (!rg.solve_demand(net.source, net.sink, demand))
        throw std::invalid_argument("min_cost_flow: demand " + std::to_string(demand) + " exceeds the max flow");
    std::vector<long long> flows;
    flows.reserve(idx.size());
    for (int i : idx) flows.push_back(rg.flow_on(i));
    return flows;
}

struct UpgradeResult {
    std::vector<long long> amounts;
    long long value = 0;  // new max flow (mmf) or new shortest path length (msp)
};

/// Budgeted max-flow raise. Each arc splits into a free copy at its base
/// capacity and a paid copy priced at the upgrade cost; the largest flow
/// value whose cheapest attainment fits the budget is the answer, and the
/// paid flows are the upgrade amounts.
inline UpgradeResult mmf_upgrade(const FlowNetwork& net, long long budget) {
    validate_network(net);
    if (budget < 0) throw std::invalid_argument("mmf_upgrade: negative budget");

    auto paid_cap = [&](const Arc& a) {
        long long affordable = budget / a.cost;
        return a.cap ? std::min(*a.cap, affordable) : affordable;
    };

    UpgradeResult best;
    best.amounts.assign(net.arcs.size(), 0);
    best.value = max_flow(net).first;

    long long reachable;
    {
        detail::ResidualGraph probe(net.node_count);
        for (const Arc& a : net.arcs) {
            probe.add_arc(a.from, a.to, a.base, 0);
            probe.add_arc(a.from, a.to, paid_cap(a), a.cost);
        }
        reachable = probe.max_flow(net.source, net.sink);
    }

    for (long long target = best.value + 1; target <= reachable; ++target) {
        detail::ResidualGraph rg(net.node_count);
        std::vector<int> paid_idx;
        paid_idx.reserve(net.arcs.size());
        for (const Arc& a : net.arcs) {
            rg.add_arc(a.from, a.to, a.base, 0);
            paid_idx.push_back(rg.add_arc(a.from, a.to, paid_cap(a), a.cost));
        }
        if (!rg.solve_demand(net.source, net.sink, target)) break;
        long long spend = 0;
        for (std::size_t i = 0; i < net.arcs.size(); ++i)
            spend += rg.flow_on(paid_idx[i]) * net.arcs[i].cost;
        if (spend > budget) break;  // cheapest attainment grows with the target
        best.value = target;
        for (std::size_t i = 0; i < net.arcs.size(); ++i) best.amounts[i] = rg.flow_on(paid_idx[i]);
    }
    return best;
}

namespace detail {

struct LengthenPlan {
    long long cost = 0;
    std::vector<long long> amounts;
};

/// Cheapest lengthening making every source->sink path at least `floor_len`
/// long, via the blocking-flow dual: arc capacity = upgrade cost, flow above
/// it priced by the cap. Empty when no lengthening can reach floor_len.
inline std::optional<LengthenPlan> min_lengthening(const FlowNetwork& net, long long floor_len) {
    ResidualGraph rg(net.node_count);
    for (const Arc& a : net.arcs) {
        rg.add_arc(a.from, a.to, a.cost, a.base);
        if (a.cap) rg.add_arc(a.from, a.to, kInfiniteCap, a.base + *a.cap);
    }

    long long profit = 0;
    while (true) {
        std::vector<long long> dist;
        std::vector<int> parent_arc;
        rg.bellman(net.source, dist, parent_arc);
        if (dist[net.sink] >= floor_len || dist[net.sink] >= kUnreachable) break;
        long long bottleneck = rg.path_bottleneck(parent_arc, net.source, net.sink);
        if (bottleneck >= kInfiniteCap / 2) return std::nullopt;  // unbounded: target unreachable
        rg.augment_path(parent_arc, net.source, net.sink, bottleneck);
        profit += (floor_len - dist[net.sink]) * bottleneck;
    }

    // Distance labels feasible for every residual arc, pinned to 0 at the
    // source and floor_len at the sink (the t->s arc encodes the pin; the
    // labels start clamped at floor_len). The labels then price the arcs:
    // an arc is lengthened by however far its head label outruns tail + base.
    std::vector<long long> label(net.node_count, floor_len);
    label[net.source] = 0;
    auto arcs = rg.residual_arcs();
    bool stable = false;
    for (int round = 0; round <= 2 * net.node_count + 2 && !stable; ++round) {
        stable = true;
        for (const auto& a : arcs)
            if (label[a.from] + a.cost < label[a.to]) {
                label[a.to] = label[a.from] + a.cost;
                stable = false;
            }
        if (label[net.sink] - floor_len < label[net.source]) {
            label[net.source] = label[net.sink] - floor_len;
            stable = false;
        }
    }
    if (!stable || label[net.source] != 0 || label[net.sink] != floor_len)
        throw std::logic_error("lengthening labels lost their boundary pins");

    LengthenPlan plan;
    plan.amounts.assign(net.arcs.size(), 0);
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        long long raise = label[a.to] - label[a.from] - a.base;
        plan.amounts[i] = std::max(raise, 0LL);
        if (a.cap && plan.amounts[i] > *a.cap)
            throw std::logic_error("lengthening exceeded an arc cap");
        plan.cost += plan.amounts[i] * a.cost;
    }
    if (plan.cost != profit) throw std::logic_error("lengthening cost does not match its flow certificate");
    return plan;
}

}  // namespace detail

/// Budgeted shortest-path raise: sweep candidate path lengths upward and
/// keep the last one whose cheapest lengthening fits the budget.
inline UpgradeResult msp_upgrade(const FlowNetwork& net, long long budget) {
    validate_network(net);
    if (budget < 0) throw std::invalid_argument("msp_upgrade: negative budget");
    const std::vector<long long> zeros(net.arcs.size(), 0);
    long long base_len = detail::shortest_path_length(net, zeros);
    if (base_len >= detail::kUnreachable)
        throw std::invalid_argument("msp_upgrade: sink is unreachable from the source");

    UpgradeResult best;
    best.amounts = zeros;
    best.value = base_len;
    // Raising the shortest path by one unit costs at least one, so the
    // reachable lengths are bounded by base + budget.
    for (long long target = base_len + 1; target <= base_len + budget; ++target) {
        std::optional<detail::LengthenPlan> plan = detail::min_lengthening(net, target);
        if (!plan || plan->cost > budget) break;
        best.value = target;
        best.amounts = std::move(plan->amounts);
    }
    if (detail::shortest_path_length(net, best.amounts) != best.value)
        throw std::logic_error("lengthening plan does not realize the reported length");
    return best;
}

}  // namespace mstup
