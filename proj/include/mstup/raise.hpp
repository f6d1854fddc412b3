#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mstup/graph.hpp"
#include "mstup/rational.hpp"
#include "mstup/strength.hpp"

namespace mstup {

/// One greedy iteration: the chosen certificate's set lifted by `amount`.
struct LiftStep {
    PartitionCertificate certificate;
    Rat amount;
    Rat budget_before;
    Rat budget_after;
    Rat mst_before;
    Rat mst_after;
};

struct Trace {
    std::vector<LiftStep> steps;
    Perturbation final_perturbation;
    Rat increase;
    /// Budgets b_0 = 0, ..., b_k at which some set finished rising to the
    /// next integral weight (the last entry may close a partial unit).
    std::vector<Rat> budget_breakpoints;
    Rat total_spent() const { return budget_breakpoints.empty() ? Rat(0) : budget_breakpoints.back(); }
};

struct CurvePoint {
    Rat budget;
    Rat mst_weight;
    Rat slope_after;  // coverage / c(S) of the certificate active from here
};

enum class CurveEnd {
    unbounded,  // last slope continues for every larger budget
    capped,     // all caps saturated at end_budget; flat afterwards
    truncated,  // emission stopped at a caller-supplied budget limit
};

/// The budget -> max attainable MST weight function, piecewise linear and
/// concave. points[i].slope_after is active on [points[i].budget, next).
struct BreakpointCurve {
    std::vector<CurvePoint> points;
    CurveEnd end = CurveEnd::unbounded;
    Rat end_budget;
    Rat end_mst;

    Rat base_mst() const { return points.front().mst_weight; }

    Rat value_at(const Rat& budget) const {
        if (budget < Rat(0)) throw std::invalid_argument("curve: negative budget");
        if (budget > end_budget) {
            if (end == CurveEnd::capped) return end_mst;
            if (end == CurveEnd::truncated)
                throw std::out_of_range("curve was truncated at budget " + format_rat(end_budget));
        }
        std::size_t i = 0;
        while (i + 1 < points.size() && points[i + 1].budget <= budget) ++i;
        return points[i].mst_weight + (budget - points[i].budget) * points[i].slope_after;
    }
};

struct UnreachableTargetError : std::runtime_error {
    Rat max_attainable;
    explicit UnreachableTargetError(Rat max)
        : std::runtime_error("target increase is unreachable; caps limit the increase to " + format_rat(max)),
          max_attainable(std::move(max)) {}
};

namespace detail {

inline long long raise_iteration_guard(const WeightedGraph& g) {
    long long w_max = 0;
    for (const Edge& e : g.edges()) w_max = std::max(w_max, e.weight);
    return 1000 + 100LL * g.edge_count() * (w_max + g.edge_count() + 2);
}

/// Tightest remaining cap headroom over the set, at an integral state.
inline std::optional<long long> cap_headroom(const WeightedGraph& g, const Perturbation& x,
                                             const std::vector<int>& set_s) {
    std::optional<long long> headroom;
    for (int id : set_s) {
        if (!g.edge(id).cap) continue;
        long long room = *g.edge(id).cap - rat_to_long(x.amounts[id]);
        if (!headroom || room < *headroom) headroom = room;
    }
    return headroom;
}

inline void apply_lift(Perturbation& x, std::vector<char>& saturated, const WeightedGraph& g,
                       const std::vector<int>& set_s, const Rat& amount) {
    for (int id : set_s) {
        x.amounts[id] += amount;
        if (g.edge(id).cap && x.amounts[id] == Rat(*g.edge(id).cap)) saturated[id] = 1;
    }
    if (!is_integer(amount)) x.integral = false;
}

inline std::vector<char> initially_saturated(const WeightedGraph& g) {
    std::vector<char> saturated(g.edge_count(), 0);
    for (int id = 0; id < g.edge_count(); ++id)
        if (g.edge(id).cap && *g.edge(id).cap == 0) saturated[id] = 1;
    return saturated;
}

}  // namespace detail

/// Greedy continuous raise: repeatedly lift the min inc_cost set by
/// min(tolerance, cap headroom, balance / c(S)) until the budget is spent or
/// every remaining cut contains a saturated edge. The resulting increase is
/// the continuous optimum for the budget.
inline Trace raise_mst(const WeightedGraph& g, const Rat& budget) {
    if (budget < Rat(0)) throw std::invalid_argument("raise_mst: negative budget");
    Trace tr;
    tr.final_perturbation = Perturbation::zero(g);
    Perturbation& x = tr.final_perturbation;
    std::vector<char> saturated = detail::initially_saturated(g);

    const Rat mst0 = mst_weight(g, Perturbation::zero(g));
    Rat mst = mst0;
    Rat balance = budget;
    Rat spent(0);

    const long long guard = detail::raise_iteration_guard(g);
    long long iterations = 0;
    while (balance > Rat(0)) {
        if (++iterations > guard) throw std::logic_error("raise_mst did not terminate within its iteration guard");
        std::optional<PartitionCertificate> cert = min_inc_cost_set_excluding(g, x, saturated);
        if (!cert) break;  // caps exhausted every liftable cut

        std::optional<long long> tol = tolerance(*cert, g, x);
        std::optional<long long> headroom = detail::cap_headroom(g, x, cert->set_s);
        std::optional<long long> structural;
        if (tol && headroom) structural = std::min(*tol, *headroom);
        else structural = tol ? tol : headroom;

        const Rat set_cost(cert->cut_cost);
        const Rat budget_bound = balance / set_cost;
        Rat amount = (structural && Rat(*structural) <= budget_bound) ? Rat(*structural) : budget_bound;

        LiftStep step;
        step.certificate = *cert;
        step.amount = amount;
        step.budget_before = spent;
        step.mst_before = mst;
        Rat spend = amount * set_cost;
        spent += spend;
        balance -= spend;
        mst += amount * Rat(cert->cov);
        step.budget_after = spent;
        step.mst_after = mst;

        detail::apply_lift(x, saturated, g, cert->set_s, amount);
        tr.steps.push_back(std::move(step));
        if (balance > Rat(0) && !is_integer(amount))
            throw std::logic_error("non-final lift amount must be integral");
    }

    tr.increase = mst - mst0;
    if (mst_weight(g, x) - mst0 != tr.increase)
        throw std::logic_error("trace increase does not match the recomputed MST weight");

    tr.budget_breakpoints.assign(1, Rat(0));
    Rat cum(0);
    for (const LiftStep& step : tr.steps) {
        const Rat unit_cost(step.certificate.cut_cost);
        long long units = to_long(floor_rat(step.amount));
        for (long long j = 0; j < units; ++j) {
            cum += unit_cost;
            tr.budget_breakpoints.push_back(cum);
        }
        Rat rem = frac_part(step.amount);
        if (rem > Rat(0)) {
            cum += rem * unit_cost;
            tr.budget_breakpoints.push_back(cum);
        }
    }
    if (cum != spent) throw std::logic_error("breakpoint chunking does not add up to the spent budget");
    return tr;
}

/// Emits the whole f_G curve: one breakpoint per change of the active
/// certificate, until the slope is eventually constant (no caps bind), every
/// cut is saturated, or the optional budget limit is hit.
inline BreakpointCurve curve(const WeightedGraph& g, std::optional<Rat> budget_limit = std::nullopt) {
    if (budget_limit && *budget_limit < Rat(0)) throw std::invalid_argument("curve: negative budget limit");
    BreakpointCurve c;
    Perturbation x = Perturbation::zero(g);
    std::vector<char> saturated = detail::initially_saturated(g);
    Rat mst = mst_weight(g, x);
    Rat spent(0);

    const long long guard = detail::raise_iteration_guard(g);
    long long iterations = 0;
    while (true) {
        if (++iterations > guard) throw std::logic_error("curve emission did not terminate within its iteration guard");
        if (budget_limit && spent >= *budget_limit) {
            c.end = CurveEnd::truncated;
            break;
        }
        std::optional<PartitionCertificate> cert = min_inc_cost_set_excluding(g, x, saturated);
        if (!cert) {
            c.end = CurveEnd::capped;
            break;
        }
        const Rat slope(BigInt(cert->cov), BigInt(cert->cut_cost));
        c.points.push_back({spent, mst, slope});

        std::optional<long long> tol = tolerance(*cert, g, x);
        std::optional<long long> headroom = detail::cap_headroom(g, x, cert->set_s);
        std::optional<long long> structural;
        if (tol && headroom) structural = std::min(*tol, *headroom);
        else structural = tol ? tol : headroom;
        if (!structural) {
            c.end = CurveEnd::unbounded;  // this certificate holds for every larger budget
            break;
        }

        Rat amount(*structural);
        const Rat set_cost(cert->cut_cost);
        if (budget_limit && spent + amount * set_cost > *budget_limit) {
            amount = (*budget_limit - spent) / set_cost;
            detail::apply_lift(x, saturated, g, cert->set_s, amount);
            spent += amount * set_cost;
            mst += amount * Rat(cert->cov);
            c.end = CurveEnd::truncated;
            break;
        }
        detail::apply_lift(x, saturated, g, cert->set_s, amount);
        spent += amount * set_cost;
        mst += amount * Rat(cert->cov);
    }

    if (c.points.empty()) c.points.push_back({Rat(0), mst, Rat(0)});
    c.end_budget = spent;
    c.end_mst = mst;
    return c;
}

/// Minimal budget whose curve value reaches base + target_increase. Throws
/// UnreachableTargetError when caps bound the increase below the target.
inline Rat invert_curve(const BreakpointCurve& c, const Rat& target_increase) {
    if (target_increase < Rat(0)) throw std::invalid_argument("invert_curve: negative target");
    if (target_increase == Rat(0)) return Rat(0);
    const Rat base = c.base_mst();
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const CurvePoint& p = c.points[i];
        if (p.slope_after == Rat(0)) continue;
        const bool last = i + 1 == c.points.size();
        if (last && c.end == CurveEnd::unbounded)
            return p.budget + (target_increase - (p.mst_weight - base)) / p.slope_after;
        const Rat seg_end = last ? c.end_budget : c.points[i + 1].budget;
        const Rat gain_at_end = p.mst_weight + (seg_end - p.budget) * p.slope_after - base;
        if (target_increase <= gain_at_end)
            return p.budget + (target_increase - (p.mst_weight - base)) / p.slope_after;
    }
    if (c.end == CurveEnd::truncated)
        throw std::out_of_range("curve was truncated below the requested target");
    throw UnreachableTargetError(c.end_mst - base);
}

}  // namespace mstup
