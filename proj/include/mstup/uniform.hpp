#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mstup/approx.hpp"
#include "mstup/graph.hpp"
#include "mstup/rational.hpp"
#include "mstup/strength.hpp"

namespace mstup {

struct KnapsackItem {
    long long weight = 1;  // upgrade cost of one copy
    long long profit = 1;  // MST increase per copy
};

struct KnapsackSolution {
    std::vector<long long> multiplicities;
    long long profit = 0;
    long long weight = 0;
};

namespace detail {

inline constexpr long long kWeightInf = std::numeric_limits<long long>::max() / 4;
inline constexpr long long kProfitTableLimit = 2'000'000;

inline void validate_items(const std::vector<KnapsackItem>& items) {
    for (const KnapsackItem& it : items) {
        if (it.weight < 1) throw std::invalid_argument("knapsack item weight must be at least 1");
        if (it.profit < 1) throw std::invalid_argument("knapsack item profit must be at least 1");
    }
}

}  // namespace detail

/// Unbounded knapsack in time polynomial in the profits: a profit-indexed
/// least-weight table up to P = p_best * sum of the other profits, then
/// copies of the best-ratio item peeled on top of each table entry.
inline KnapsackSolution unbounded_knapsack(const std::vector<KnapsackItem>& items, long long capacity) {
    detail::validate_items(items);
    if (capacity < 0) throw std::invalid_argument("negative knapsack capacity");
    KnapsackSolution sol;
    sol.multiplicities.assign(items.size(), 0);
    if (items.empty() || capacity == 0) return sol;

    std::size_t best_ratio = 0;
    for (std::size_t i = 1; i < items.size(); ++i) {
        // p_i / w_i > p_r / w_r, ties to the lighter item.
        auto lhs = items[i].profit * items[best_ratio].weight;
        auto rhs = items[best_ratio].profit * items[i].weight;
        if (lhs > rhs || (lhs == rhs && items[i].weight < items[best_ratio].weight)) best_ratio = i;
    }
    long long table_profit = 0;
    for (std::size_t i = 0; i < items.size(); ++i)
        if (i != best_ratio) table_profit += items[i].profit;
    table_profit *= items[best_ratio].profit;
    if (table_profit > detail::kProfitTableLimit)
        throw std::runtime_error("knapsack profit table exceeds its size guard");

    std::vector<long long> least_weight(table_profit + 1, detail::kWeightInf);
    std::vector<int> pred(table_profit + 1, -1);
    least_weight[0] = 0;
    for (long long p = 1; p <= table_profit; ++p)
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (items[i].profit > p) continue;
            long long prev = least_weight[p - items[i].profit];
            if (prev >= detail::kWeightInf) continue;
            if (prev + items[i].weight < least_weight[p]) {
                least_weight[p] = prev + items[i].weight;
                pred[p] = static_cast<int>(i);
            }
        }

    long long best_profit = -1, best_base = 0, best_copies = 0;
    for (long long p = 0; p <= table_profit; ++p) {
        if (least_weight[p] > capacity) continue;
        long long copies = (capacity - least_weight[p]) / items[best_ratio].weight;
        long long total = p + copies * items[best_ratio].profit;
        if (total > best_profit) {
            best_profit = total;
            best_base = p;
            best_copies = copies;
        }
    }
    for (long long p = best_base; p > 0; p -= items[pred[p]].profit) ++sol.multiplicities[pred[p]];
    sol.multiplicities[best_ratio] += best_copies;
    sol.profit = best_profit;
    for (std::size_t i = 0; i < items.size(); ++i) sol.weight += sol.multiplicities[i] * items[i].weight;
    if (sol.weight > capacity) throw std::logic_error("knapsack reconstruction exceeded the capacity");
    return sol;
}

/// Least total weight reaching profit at least `target`.
inline KnapsackSolution profit_dp(const std::vector<KnapsackItem>& items, long long target) {
    detail::validate_items(items);
    if (target < 1) throw std::invalid_argument("profit_dp: target must be positive");
    if (items.empty()) throw std::invalid_argument("profit_dp: no items");
    std::vector<long long> least_weight(target + 1, detail::kWeightInf);
    std::vector<int> pred(target + 1, -1);
    least_weight[0] = 0;
    for (long long p = 1; p <= target; ++p)
        for (std::size_t i = 0; i < items.size(); ++i) {
            long long prev = least_weight[std::max(0LL, p - items[i].profit)];
            if (prev + items[i].weight < least_weight[p]) {
                least_weight[p] = prev + items[i].weight;
                pred[p] = static_cast<int>(i);
            }
        }
    KnapsackSolution sol;
    sol.multiplicities.assign(items.size(), 0);
    for (long long p = target; p > 0; p = std::max(0LL, p - items[pred[p]].profit)) {
        ++sol.multiplicities[pred[p]];
        sol.profit += items[pred[p]].profit;
        sol.weight += items[pred[p]].weight;
    }
    return sol;
}

/// Family of edge sets with multiplicities; `chain` marks total ordering by
/// inclusion, largest set first.
struct CutFamily {
    struct Entry {
        std::vector<int> edges;  // sorted original edge ids
        long long multiplicity = 1;
    };
    std::vector<Entry> entries;
    bool chain = false;
};

/// Exact minimum-cost edge set whose removal leaves at least `parts`
/// components. Partition enumeration; guarded at 12 vertices.
inline std::vector<int> min_i_cut(const WeightedGraph& g, int parts) {
    if (parts < 2 || parts > g.vertex_count())
        throw std::invalid_argument("min_i_cut: need 2 <= i <= vertex count");
    if (g.vertex_count() > kStrengthEnumLimit)
        throw std::runtime_error("min_i_cut enumeration is limited to " + std::to_string(kStrengthEnumLimit) + " vertices");
    std::optional<std::vector<int>> best;
    long long best_cost = 0;
    detail::for_each_partition(g.vertex_count(), [&](const std::vector<int>& labels) {
        int k = 1 + *std::max_element(labels.begin(), labels.end());
        if (k != parts) return;
        std::vector<int> cut;
        long long cost = 0;
        for (int id = 0; id < g.edge_count(); ++id)
            if (labels[g.edge(id).u] != labels[g.edge(id).v]) {
                cut.push_back(id);
                cost += g.edge(id).cost;
            }
        if (!best || cost < best_cost || (cost == best_cost && cut < *best)) {
            best = std::move(cut);
            best_cost = cost;
        }
    });
    return *best;
}

namespace detail {

inline bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline long long family_cost(const CutFamily& f, const WeightedGraph& g) {
    long long total = 0;
    for (const CutFamily::Entry& e : f.entries) total += e.multiplicity * g.cost_of(e.edges);
    return total;
}

}  // namespace detail

/// Replaces incomparable pairs by their intersection and union until the
/// family is a chain. The edge multiset (hence the total cost) is preserved;
/// by supermodularity of coverage the summed coverage cannot drop. Each swap
/// raises the sum of squared sizes, which bounds the loop.
inline CutFamily uncross(CutFamily family, const WeightedGraph& g) {
    const long long cost_before = detail::family_cost(family, g);
    std::map<std::vector<int>, long long> mult;
    for (CutFamily::Entry& e : family.entries) {
        std::sort(e.edges.begin(), e.edges.end());
        if (!e.edges.empty() && e.multiplicity > 0) mult[e.edges] += e.multiplicity;
    }

    long long total_copies = 0;
    for (auto& [_, m] : mult) total_copies += m;
    const long long guard = 16 + total_copies * total_copies *
                                     static_cast<long long>(g.edge_count()) * g.edge_count();
    long long iterations = 0;
    while (true) {
        if (++iterations > guard) throw std::logic_error("uncrossing did not terminate");
        bool swapped = false;
        for (auto i = mult.begin(); i != mult.end() && !swapped; ++i)
            for (auto j = std::next(i); j != mult.end() && !swapped; ++j) {
                if (detail::subset_of(i->first, j->first) || detail::subset_of(j->first, i->first)) continue;
                std::vector<int> inter, uni;
                std::set_intersection(i->first.begin(), i->first.end(), j->first.begin(), j->first.end(),
                                      std::back_inserter(inter));
                std::set_union(i->first.begin(), i->first.end(), j->first.begin(), j->first.end(),
                               std::back_inserter(uni));
                std::vector<int> a = i->first, b = j->first;
                if (--mult[a] == 0) mult.erase(a);
                if (--mult[b] == 0) mult.erase(b);
                if (!inter.empty()) ++mult[inter];
                ++mult[uni];
                swapped = true;
            }
        if (!swapped) break;
    }

    CutFamily out;
    out.chain = true;
    for (auto& [edges, m] : mult) out.entries.push_back({edges, m});
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() > b.edges.size();
        return a.edges < b.edges;
    });
    if (detail::family_cost(out, g) != cost_before)
        throw std::logic_error("uncrossing changed the family cost");
    return out;
}

namespace detail {

inline void require_uniform(const WeightedGraph& g) {
    for (const Edge& e : g.edges())
        if (e.weight != g.edge(0).weight)
            throw std::invalid_argument(
                "solver requires uniform base weights; use the budgeted/targeted approximations for mixed weights");
}

inline void require_caps_at_least(const WeightedGraph& g, long long floor) {
    for (const Edge& e : g.edges())
        if (e.cap && *e.cap < floor)
            throw std::invalid_argument("uniform solvers reject caps below " + std::to_string(floor));
}

/// Cut items for MST increases 1..max_profit: item j is the cheapest edge
/// set creating j extra components, i.e. a minimum (j+1)-cut.
inline std::pair<std::vector<KnapsackItem>, std::vector<std::vector<int>>> cut_items(
    const WeightedGraph& g, long long max_profit) {
    std::vector<KnapsackItem> items;
    std::vector<std::vector<int>> cuts;
    long long top = std::min<long long>(max_profit, g.vertex_count() - 1);
    for (long long j = 1; j <= top; ++j) {
        std::vector<int> cut = min_i_cut(g, static_cast<int>(j) + 1);
        items.push_back({g.cost_of(cut), j});
        cuts.push_back(std::move(cut));
    }
    return {items, cuts};
}

inline DiscreteSolution lift_family(const WeightedGraph& g, const CutFamily& chain) {
    std::vector<long long> units(g.edge_count(), 0);
    for (const CutFamily::Entry& e : chain.entries)
        for (int id : e.edges) units[id] += e.multiplicity;
    return finish_solution(g, std::move(units));
}

inline DiscreteSolution uniform_budgeted_impl(const WeightedGraph& g, long long budget, long long max_profit) {
    require_uniform(g);
    require_caps_at_least(g, budget);
    auto [items, cuts] = cut_items(g, std::min(max_profit, budget));
    if (items.empty() || budget == 0) return finish_solution(g, std::vector<long long>(g.edge_count(), 0));
    KnapsackSolution ks = unbounded_knapsack(items, budget);
    CutFamily family;
    for (std::size_t i = 0; i < cuts.size(); ++i)
        if (ks.multiplicities[i] > 0) family.entries.push_back({cuts[i], ks.multiplicities[i]});
    DiscreteSolution sol = lift_family(g, uncross(family, g));
    if (sol.achieved_increase != ks.profit)
        throw std::logic_error("chain lift did not realize the knapsack profit");
    if (sol.cost > budget) throw std::logic_error("uniform budgeted solution exceeded the budget");
    return sol;
}

}  // namespace detail

/// Exact targeted solver for uniform starting weights: min-cut items, a
/// profit-indexed cost table, supermodular uncrossing into a chain, then
/// lifting the chain largest set first.
inline DiscreteSolution uniform_targeted_exact(const WeightedGraph& g, long long target) {
    if (target < 1) throw std::invalid_argument("uniform_targeted_exact: target must be positive");
    detail::require_uniform(g);
    detail::require_caps_at_least(g, target);
    auto [items, cuts] = detail::cut_items(g, target);
    KnapsackSolution dp = profit_dp(items, target);
    CutFamily family;
    for (std::size_t i = 0; i < cuts.size(); ++i)
        if (dp.multiplicities[i] > 0) family.entries.push_back({cuts[i], dp.multiplicities[i]});
    DiscreteSolution sol = detail::lift_family(g, uncross(family, g));
    if (sol.achieved_increase < target) throw std::logic_error("uniform targeted solution missed the target");
    if (sol.cost != dp.weight) throw std::logic_error("chain lift cost differs from the table cost");
    return sol;
}

/// Exact budgeted solver for uniform starting weights.
inline DiscreteSolution uniform_budgeted_exact(const WeightedGraph& g, long long budget) {
    if (budget < 0) throw std::invalid_argument("uniform_budgeted_exact: negative budget");
    return detail::uniform_budgeted_impl(g, budget, g.vertex_count() - 1);
}

/// Budgeted hybrid: the rounding approximation when its increase is already
/// at least 1/eps, otherwise the exact solver with profits capped at
/// 2 + 2/eps. Increase is at least (1/2 - eps) times the optimum.
inline DiscreteSolution uniform_halfeps_approx(const WeightedGraph& g, long long budget, const Rat& eps) {
    if (eps <= Rat(0)) throw std::invalid_argument("uniform_halfeps_approx: eps must be positive");
    detail::require_uniform(g);
    DiscreteSolution greedy = budgeted_approx(g, budget);
    if (Rat(greedy.achieved_increase) >= Rat(1) / eps) return greedy;
    long long bound = to_long(floor_rat(Rat(2) + Rat(2) / eps));
    DiscreteSolution exact = detail::uniform_budgeted_impl(g, budget, bound);
    return exact.achieved_increase >= greedy.achieved_increase ? exact : greedy;
}

/// Appendix-style heuristic: raise every edge of one global minimum cut as
/// far as the budget (and caps) allow. Reported with its measured increase;
/// no optimality claim.
inline DiscreteSolution mincut_lift_heuristic(const WeightedGraph& g, long long budget) {
    if (budget < 0) throw std::invalid_argument("mincut_lift_heuristic: negative budget");
    detail::require_uniform(g);
    std::vector<int> cut = min_i_cut(g, 2);
    long long lifts = budget / g.cost_of(cut);
    for (int id : cut)
        if (g.edge(id).cap) lifts = std::min(lifts, *g.edge(id).cap);
    std::vector<long long> units(g.edge_count(), 0);
    for (int id : cut) units[id] = lifts;
    return detail::finish_solution(g, std::move(units));
}

}  // namespace mstup
