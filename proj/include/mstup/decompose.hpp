#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mstup/graph.hpp"
#include "mstup/raise.hpp"
#include "mstup/rational.hpp"

namespace mstup {

/// One proper lift of the decomposed optimal solution: every edge of
/// `lifted_set` rises by exactly `amount` while the budget moves from
/// `from_budget` to `to_budget`.
struct DecompSegment {
    Rat from_budget;
    Rat to_budget;
    std::vector<int> lifted_set;  // sorted edge ids
    Rat amount;
    int interval = 0;             // index i of the enclosing [b_i, b_{i+1}]
    bool second_phase = false;    // true once the global catch-up raise runs
};

/// Decomposition of a budget-matching final weight vector into proper lifts
/// aligned with a greedy trace: per-interval transition budgets beta_i,
/// catch-up offsets Delta_i, cap-event breakpoints and the lift segments.
struct DecompositionTrace {
    std::vector<Rat> breakpoints;          // b_0 = 0, ..., b_k = B
    std::vector<Rat> beta;                 // beta_0 .. beta_{k-1}
    std::vector<Rat> delta;                // Delta_0 .. Delta_k, non-decreasing
    std::vector<Rat> refined_breakpoints;  // all segment boundaries, ascending
    std::vector<DecompSegment> segments;
    std::vector<std::pair<Rat, std::vector<int>>> cap_events;  // budget -> edges reaching w*
};

struct DecompositionError : std::runtime_error {
    std::string invariant;
    DecompositionError(std::string which, const std::string& detail)
        : std::runtime_error("decomposition invariant '" + which + "' violated: " + detail),
          invariant(std::move(which)) {}
};

namespace detail {

struct DecompChunk {
    std::vector<int> set;
    long long set_cost = 0;
    std::vector<Rat> w_start;  // algorithm weights when the chunk begins
    Rat amount;                // in (0, 1]; 1 except possibly for the last chunk
};

/// Splits trace steps into unit lifts: between consecutive breakpoints the
/// active set rises to the next integral weight (or the budget runs out).
inline std::vector<DecompChunk> unit_chunks(const WeightedGraph& g, const Trace& trace) {
    std::vector<DecompChunk> chunks;
    std::vector<Rat> w;
    for (const Edge& e : g.edges()) w.push_back(Rat(e.weight));
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
        const LiftStep& step = trace.steps[s];
        if (step.amount <= Rat(0)) throw std::invalid_argument("trace step with non-positive amount");
        long long whole = to_long(floor_rat(step.amount));
        Rat rem = frac_part(step.amount);
        if (rem > Rat(0) && s + 1 != trace.steps.size())
            throw std::invalid_argument("fractional lift before the final trace step");
        for (long long j = 0; j < whole; ++j) {
            chunks.push_back({step.certificate.set_s, step.certificate.cut_cost, w, Rat(1)});
            for (int id : step.certificate.set_s) w[id] += Rat(1);
        }
        if (rem > Rat(0)) {
            chunks.push_back({step.certificate.set_s, step.certificate.cut_cost, w, rem});
            for (int id : step.certificate.set_s) w[id] += rem;
        }
    }
    return chunks;
}

/// c_{Delta,b}: total cost of raising every edge from its base weight to
/// min(w_star, state + Delta).
inline Rat catchup_cost(const WeightedGraph& g, const std::vector<Rat>& w_star,
                        const std::vector<Rat>& state, const Rat& delta) {
    Rat total(0);
    for (int id = 0; id < g.edge_count(); ++id) {
        Rat target = std::min(w_star[id], state[id] + delta);
        total += Rat(g.edge(id).cost) * (target - Rat(g.edge(id).weight));
    }
    return total;
}

/// Minimal Delta >= 0 with catchup_cost == budget. The cost is piecewise
/// linear and non-decreasing in Delta with breaks where edges hit w_star.
inline Rat minimal_delta(const WeightedGraph& g, const std::vector<Rat>& w_star,
                         const std::vector<Rat>& state, const Rat& budget) {
    Rat value = catchup_cost(g, w_star, state, Rat(0));
    if (value > budget)
        throw DecompositionError("budget-mismatch", "catch-up cost at zero offset already exceeds " + format_rat(budget));
    if (value == budget) return Rat(0);

    std::vector<Rat> thresholds;
    for (int id = 0; id < g.edge_count(); ++id) {
        Rat t = w_star[id] - state[id];
        if (t > Rat(0)) thresholds.push_back(t);
    }
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    Rat cur(0);
    for (const Rat& next : thresholds) {
        Rat slope(0);
        for (int id = 0; id < g.edge_count(); ++id)
            if (w_star[id] - state[id] > cur) slope += Rat(g.edge(id).cost);
        Rat value_next = value + slope * (next - cur);
        if (value_next >= budget) return cur + (budget - value) / slope;
        cur = next;
        value = value_next;
    }
    throw DecompositionError("budget-mismatch", "catch-up cost saturates below " + format_rat(budget));
}

}  // namespace detail

/// Decomposes the final weights `w_star` of a budget-matching solution into
/// a sequence of proper lifts aligned with the greedy trace, verifying that
/// the offsets are non-decreasing, that every segment lifts one fixed set
/// uniformly, and that the segment sets follow the two-phase shape (active
/// trace set minus capped edges, then everything uncapped). Throws
/// DecompositionError naming the violated invariant otherwise.
///
/// w_star is taken as given: only its spend and the structural invariants
/// are checked, not its optimality. Callers wanting the comparison argument
/// must supply weights from an optimal run.
inline DecompositionTrace decompose_and_verify(const WeightedGraph& g, const Trace& trace,
                                               const std::vector<Rat>& w_star) {
    if (static_cast<int>(w_star.size()) != g.edge_count())
        throw std::invalid_argument("w_star size does not match the edge count");
    for (int id = 0; id < g.edge_count(); ++id)
        if (w_star[id] < Rat(g.edge(id).weight))
            throw std::invalid_argument("w_star drops edge " + std::to_string(id) + " below its base weight");

    Rat star_cost(0);
    for (int id = 0; id < g.edge_count(); ++id)
        star_cost += Rat(g.edge(id).cost) * (w_star[id] - Rat(g.edge(id).weight));
    std::vector<detail::DecompChunk> chunks = detail::unit_chunks(g, trace);
    Rat total_budget(0);
    for (const detail::DecompChunk& c : chunks) total_budget += c.amount * Rat(c.set_cost);
    if (star_cost != total_budget)
        throw DecompositionError("budget-mismatch", "w_star spends " + format_rat(star_cost) +
                                                        " but the trace spends " + format_rat(total_budget));

    DecompositionTrace out;
    const std::size_t k = chunks.size();

    // States at the chunk boundaries and the breakpoints b_i.
    std::vector<std::vector<Rat>> states(k + 1);
    states[0] = std::vector<Rat>();
    for (const Edge& e : g.edges()) states[0].push_back(Rat(e.weight));
    out.breakpoints.assign(1, Rat(0));
    for (std::size_t i = 0; i < k; ++i) {
        states[i + 1] = states[i];
        for (int id : chunks[i].set) states[i + 1][id] += chunks[i].amount;
        out.breakpoints.push_back(out.breakpoints.back() + chunks[i].amount * Rat(chunks[i].set_cost));
    }

    for (std::size_t i = 0; i <= k; ++i)
        out.delta.push_back(detail::minimal_delta(g, w_star, states[i], out.breakpoints[i]));
    for (std::size_t i = 0; i + 1 <= k; ++i)
        if (out.delta[i + 1] < out.delta[i])
            throw DecompositionError("delta-monotonicity",
                                     "Delta_" + std::to_string(i + 1) + " = " + format_rat(out.delta[i + 1]) +
                                         " < Delta_" + std::to_string(i) + " = " + format_rat(out.delta[i]));
    for (std::size_t i = 0; i < k; ++i)
        out.beta.push_back(detail::catchup_cost(g, w_star, states[i + 1], out.delta[i]));

    // Decomposed weights at a point of interval i: phase 1 moves the chunk's
    // set from its start state by xi under the fixed offset Delta_i, phase 2
    // freezes the set and grows the offset.
    auto weights_phase1 = [&](std::size_t i, const Rat& xi) {
        std::vector<Rat> w(g.edge_count());
        for (int id = 0; id < g.edge_count(); ++id) {
            Rat walk = states[i][id];
            if (std::find(chunks[i].set.begin(), chunks[i].set.end(), id) != chunks[i].set.end()) walk += xi;
            w[id] = std::min(w_star[id], walk + out.delta[i]);
        }
        return w;
    };
    auto weights_phase2 = [&](std::size_t i, const Rat& offset) {
        std::vector<Rat> w(g.edge_count());
        for (int id = 0; id < g.edge_count(); ++id) w[id] = std::min(w_star[id], states[i + 1][id] + offset);
        return w;
    };
    auto capped_set = [&](const std::vector<Rat>& w) {
        std::vector<int> capped;
        for (int id = 0; id < g.edge_count(); ++id)
            if (w[id] == w_star[id]) capped.push_back(id);
        return capped;
    };

    auto emit_segment = [&](std::size_t i, bool second_phase, const std::vector<Rat>& w_from,
                            const std::vector<Rat>& w_to, const Rat& b_from, const Rat& b_to) {
        if (b_from == b_to) return;  // nothing is spent: the decomposition is frozen here
        // The lifted set read off the weights themselves.
        std::vector<int> moved;
        Rat amount(0);
        for (int id = 0; id < g.edge_count(); ++id) {
            if (w_to[id] == w_from[id]) continue;
            if (w_to[id] < w_from[id])
                throw DecompositionError("segment-not-a-lift", "edge " + std::to_string(id) + " decreases");
            if (moved.empty()) amount = w_to[id] - w_from[id];
            else if (w_to[id] - w_from[id] != amount)
                throw DecompositionError("segment-not-a-lift",
                                         "edges rise by different amounts in [" + format_rat(b_from) + ", " +
                                             format_rat(b_to) + "]");
            moved.push_back(id);
        }
        if (moved.empty())
            throw DecompositionError("segment-not-a-lift",
                                     "budget is spent but no edge moves in [" + format_rat(b_from) + ", " +
                                         format_rat(b_to) + "]");

        // The two-phase shape: active trace set minus capped edges, then all
        // uncapped edges.
        std::vector<int> expected;
        std::vector<int> capped = capped_set(w_from);
        if (!second_phase) {
            for (int id : chunks[i].set)
                if (!std::binary_search(capped.begin(), capped.end(), id)) expected.push_back(id);
        } else {
            for (int id = 0; id < g.edge_count(); ++id)
                if (!std::binary_search(capped.begin(), capped.end(), id)) expected.push_back(id);
        }
        std::sort(expected.begin(), expected.end());
        if (moved != expected)
            throw DecompositionError("segment-set-mismatch",
                                     "segment [" + format_rat(b_from) + ", " + format_rat(b_to) +
                                         "] does not lift the expected set");

        out.segments.push_back({b_from, b_to, moved, amount, static_cast<int>(i), second_phase});
        out.refined_breakpoints.push_back(b_from);
    };

    auto note_cap_events = [&](const std::vector<Rat>& w_before, const std::vector<Rat>& w_after,
                               const Rat& budget) {
        std::vector<int> fresh;
        for (int id = 0; id < g.edge_count(); ++id)
            if (w_after[id] == w_star[id] && w_before[id] != w_star[id]) fresh.push_back(id);
        if (!fresh.empty()) out.cap_events.push_back({budget, fresh});
    };

    for (std::size_t i = 0; i < k; ++i) {
        // Phase 1 breakpoints: chunk-set edges hitting w_star mid-lift.
        std::vector<Rat> xis = {Rat(0), chunks[i].amount};
        for (int id : chunks[i].set) {
            Rat xi = w_star[id] - out.delta[i] - states[i][id];
            if (xi > Rat(0) && xi < chunks[i].amount) xis.push_back(xi);
        }
        std::sort(xis.begin(), xis.end());
        xis.erase(std::unique(xis.begin(), xis.end()), xis.end());
        for (std::size_t j = 0; j + 1 < xis.size(); ++j) {
            std::vector<Rat> wa = weights_phase1(i, xis[j]);
            std::vector<Rat> wb = weights_phase1(i, xis[j + 1]);
            Rat ba = detail::catchup_cost(g, w_star, wa, Rat(0));
            Rat bb = detail::catchup_cost(g, w_star, wb, Rat(0));
            emit_segment(i, false, wa, wb, ba, bb);
            note_cap_events(wa, wb, bb);
        }

        // Phase 2 breakpoints: any edge hitting w_star while the offset grows.
        std::vector<Rat> offsets = {out.delta[i], out.delta[i + 1]};
        for (int id = 0; id < g.edge_count(); ++id) {
            Rat t = w_star[id] - states[i + 1][id];
            if (t > out.delta[i] && t < out.delta[i + 1]) offsets.push_back(t);
        }
        std::sort(offsets.begin(), offsets.end());
        offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
        for (std::size_t j = 0; j + 1 < offsets.size(); ++j) {
            std::vector<Rat> wa = weights_phase2(i, offsets[j]);
            std::vector<Rat> wb = weights_phase2(i, offsets[j + 1]);
            Rat ba = detail::catchup_cost(g, w_star, wa, Rat(0));
            Rat bb = detail::catchup_cost(g, w_star, wb, Rat(0));
            emit_segment(i, true, wa, wb, ba, bb);
            note_cap_events(wa, wb, bb);
        }
    }

    // The segments must chain through the budget and end exactly at w_star.
    Rat expected_from(0);
    for (const DecompSegment& seg : out.segments) {
        if (seg.from_budget != expected_from)
            throw DecompositionError("segment-chaining", "segment starts at " + format_rat(seg.from_budget) +
                                                             ", expected " + format_rat(expected_from));
        expected_from = seg.to_budget;
    }
    if (expected_from != total_budget && !(k == 0 && total_budget == Rat(0)))
        throw DecompositionError("decomposition-incomplete",
                                 "segments end at " + format_rat(expected_from) + " of " + format_rat(total_budget));
    if (k > 0) {
        std::vector<Rat> final_w = weights_phase2(k - 1, out.delta[k]);
        if (final_w != w_star)
            throw DecompositionError("decomposition-incomplete", "final weights differ from w_star");
        out.refined_breakpoints.push_back(total_budget);
    }
    return out;
}

}  // namespace mstup
