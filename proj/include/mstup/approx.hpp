#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mstup/graph.hpp"
#include "mstup/raise.hpp"
#include "mstup/rational.hpp"

namespace mstup {

/// Rounding record of the discrete algorithms: the increase banked before
/// flooring, the floored residue, and the shore step that repaired it.
struct ApproxBreakdown {
    Rat floored_increase;        // increase realized once the final lift is floored
    Rat fractional_remainder;    // increase the continuous run took from the fractional part
    Rat residual_budget;         // budget freed by flooring the final lift
    long long shores_lifted = 0; // q: shores whose cuts were raised by one
};

struct DiscreteSolution {
    Perturbation perturbation;
    long long achieved_increase = 0;
    long long cost = 0;
    /// Fractional yardstick: the minimal fractional budget for targeted runs,
    /// the fractional optimum increase for budgeted runs.
    std::optional<Rat> continuous_bound;
    std::optional<ApproxBreakdown> breakdown;
};

namespace detail {

struct FlooredTrace {
    std::vector<long long> units;
    std::optional<LiftStep> fractional;  // the final lift when it was fractional
    Rat floored_increase{0};
};

inline FlooredTrace floor_trace(const WeightedGraph& g, const Trace& tr) {
    FlooredTrace ft;
    ft.units.assign(g.edge_count(), 0);
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const LiftStep& step = tr.steps[i];
        long long whole = to_long(floor_rat(step.amount));
        for (int id : step.certificate.set_s) ft.units[id] += whole;
        ft.floored_increase += Rat(whole) * Rat(step.certificate.cov);
        if (!is_integer(step.amount)) {
            if (i + 1 != tr.steps.size()) throw std::logic_error("fractional lift before the final step");
            ft.fractional = step;
        }
    }
    return ft;
}

/// Shore indices ordered by cut cost, ties by smallest contained vertex id.
inline std::vector<std::size_t> shores_by_cost(const PartitionCertificate& cert) {
    std::vector<std::size_t> order(cert.shores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cert.shore_cut_costs[a] != cert.shore_cut_costs[b])
            return cert.shore_cut_costs[a] < cert.shore_cut_costs[b];
        return cert.shores[a].front() < cert.shores[b].front();
    });
    return order;
}

/// Edges of set_s incident to any of the chosen shores: the union of their
/// cuts. Lifting the union (each edge once) makes the spend exactly its cost.
inline std::vector<int> shore_cut_union(const WeightedGraph& g, const PartitionCertificate& cert,
                                        const std::vector<std::size_t>& chosen) {
    std::vector<int> shore_of(g.vertex_count(), -1);
    for (std::size_t i = 0; i < cert.shores.size(); ++i)
        for (int v : cert.shores[i]) shore_of[v] = static_cast<int>(i);
    std::vector<char> is_chosen(cert.shores.size(), 0);
    for (std::size_t i : chosen) is_chosen[i] = 1;
    std::vector<int> edges;
    for (int id : cert.set_s)
        if (is_chosen[shore_of[g.edge(id).u]] || is_chosen[shore_of[g.edge(id).v]])
            edges.push_back(id);
    return edges;
}

inline DiscreteSolution finish_solution(const WeightedGraph& g, std::vector<long long> units) {
    DiscreteSolution sol;
    long long mst0 = mst_weight_units(g, std::vector<long long>(g.edge_count(), 0));
    sol.achieved_increase = mst_weight_units(g, units) - mst0;
    sol.cost = 0;
    for (int id = 0; id < g.edge_count(); ++id) sol.cost += units[id] * g.edge(id).cost;
    sol.perturbation = Perturbation::from_units(g, units);
    return sol;
}

}  // namespace detail

/// Discrete targeted raise: run the continuous greedy at the exact budget
/// that meets the target, floor the last fractional lift, then recover the
/// missing q units by lifting the q cheapest shore cuts of the last
/// certificate once. Cost <= 2(1 - 1/n) times the fractional budget.
inline DiscreteSolution targeted_approx(const WeightedGraph& g, long long target_increase) {
    if (target_increase <= 0) throw std::invalid_argument("targeted_approx: target must be positive");
    BreakpointCurve cv = curve(g);
    const Rat budget_for_target = invert_curve(cv, Rat(target_increase));
    Trace tr = raise_mst(g, budget_for_target);
    detail::FlooredTrace ft = detail::floor_trace(g, tr);

    ApproxBreakdown breakdown;
    breakdown.floored_increase = ft.floored_increase;
    std::vector<long long> units = ft.units;
    if (ft.fractional) {
        const PartitionCertificate& cert = ft.fractional->certificate;
        const Rat remainder = Rat(cert.cov) * frac_part(ft.fractional->amount);
        breakdown.fractional_remainder = remainder;
        breakdown.residual_budget = frac_part(ft.fractional->amount) * Rat(cert.cut_cost);
        // An integral target makes the continuous increase land on an
        // integer, so the missing amount is a whole number of shores.
        if (!is_integer(remainder))
            throw std::logic_error("internal consistency: fractional shore count for an integral target");
        long long q = rat_to_long(remainder);
        breakdown.shores_lifted = q;
        if (q > 0) {
            std::vector<std::size_t> order = detail::shores_by_cost(cert);
            order.resize(static_cast<std::size_t>(q));
            for (int id : detail::shore_cut_union(g, cert, order)) units[id] += 1;
        }
    }

    DiscreteSolution sol = detail::finish_solution(g, std::move(units));
    sol.continuous_bound = budget_for_target;
    sol.breakdown = breakdown;
    if (sol.achieved_increase < target_increase)
        throw std::logic_error("targeted rounding fell short of the target");
    return sol;
}

/// Discrete budgeted raise: floor the final fractional lift of the greedy
/// run, then lift the largest affordable prefix union of shore cuts once.
/// The increase is at least half the fractional optimum minus one.
inline DiscreteSolution budgeted_approx(const WeightedGraph& g, long long budget) {
    if (budget < 0) throw std::invalid_argument("budgeted_approx: negative budget");
    Trace tr = raise_mst(g, Rat(budget));
    detail::FlooredTrace ft = detail::floor_trace(g, tr);

    ApproxBreakdown breakdown;
    breakdown.floored_increase = ft.floored_increase;
    std::vector<long long> units = ft.units;
    if (ft.fractional) {
        const PartitionCertificate& cert = ft.fractional->certificate;
        breakdown.fractional_remainder = Rat(cert.cov) * frac_part(ft.fractional->amount);
        const Rat residual = frac_part(ft.fractional->amount) * Rat(cert.cut_cost);
        if (!is_integer(residual)) throw std::logic_error("residual budget must be integral for an integral budget");
        const long long r = rat_to_long(residual);
        breakdown.residual_budget = residual;

        std::vector<std::size_t> order = detail::shores_by_cost(cert);
        long long q = 0;
        std::vector<int> lifted;
        for (std::size_t take = 1; take <= order.size(); ++take) {
            std::vector<std::size_t> chosen(order.begin(), order.begin() + take);
            std::vector<int> candidate = detail::shore_cut_union(g, cert, chosen);
            if (g.cost_of(candidate) > r) break;  // union costs grow with every shore
            q = static_cast<long long>(take);
            lifted = std::move(candidate);
        }
        breakdown.shores_lifted = q;
        for (int id : lifted) units[id] += 1;
    } else {
        breakdown.residual_budget = Rat(budget) - tr.total_spent();  // nonzero only when caps ended the run
    }

    DiscreteSolution sol = detail::finish_solution(g, std::move(units));
    sol.continuous_bound = tr.increase;
    sol.breakdown = breakdown;
    if (Rat(sol.cost) > Rat(budget)) throw std::logic_error("budgeted rounding exceeded the budget");
    return sol;
}

}  // namespace mstup
