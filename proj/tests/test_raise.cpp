#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "mstup/raise.hpp"
#include "support/corpus.hpp"

using namespace mstup;

namespace {

WeightedGraph unit_triangle() {
    return WeightedGraph(3, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
}

WeightedGraph path3() {
    return WeightedGraph(4, {{0, 1, 0, 1, {}}, {1, 2, 0, 1, {}}, {2, 3, 0, 1, {}}});
}

void check_trace_consistency(const WeightedGraph& g, const Trace& tr, const Rat& budget) {
    Rat spent(0);
    Rat gained(0);
    for (const LiftStep& s : tr.steps) {
        CHECK(s.budget_before == spent);
        CHECK(s.budget_after - s.budget_before == s.amount * Rat(s.certificate.cut_cost));
        CHECK(s.mst_after - s.mst_before == s.amount * Rat(s.certificate.cov));
        spent = s.budget_after;
        gained += s.amount * Rat(s.certificate.cov);
    }
    CHECK(spent <= budget);
    CHECK(gained == tr.increase);
    CHECK(tr.budget_breakpoints.front() == Rat(0));
    CHECK(tr.budget_breakpoints.back() == spent);
    CHECK(std::is_sorted(tr.budget_breakpoints.begin(), tr.budget_breakpoints.end()));
    Rat recomputed = mst_weight(g, tr.final_perturbation) - mst_weight(g, Perturbation::zero(g));
    CHECK(recomputed == tr.increase);
}

}  // namespace

TEST_CASE("raise_mst on the worked examples") {
    Trace tp = raise_mst(path3(), Rat(4));
    CHECK(tp.increase == Rat(4));

    Trace tt = raise_mst(unit_triangle(), Rat(3));
    CHECK(tt.increase == Rat(2));

    Trace t0 = raise_mst(unit_triangle(), Rat(0));
    CHECK(t0.increase == Rat(0));
    CHECK(t0.steps.empty());
}

TEST_CASE("curve on the worked examples") {
    BreakpointCurve ct = curve(unit_triangle());
    CHECK(ct.end == CurveEnd::unbounded);
    REQUIRE(ct.points.size() == 1);
    CHECK(ct.points[0].budget == Rat(0));
    CHECK(ct.points[0].slope_after == Rat(2, 3));

    // Rising weight ladder: slope 1 for the first two budget units, 2/3 after.
    WeightedGraph fig(3, {{0, 1, 2, 1, {}}, {0, 2, 1, 1, {}}, {1, 2, 1, 1, {}}});
    BreakpointCurve cf = curve(fig);
    CHECK(cf.value_at(Rat(0)) == Rat(2));
    CHECK(cf.value_at(Rat(1)) == Rat(3));
    CHECK(cf.value_at(Rat(2)) == Rat(4));
    CHECK(cf.value_at(Rat(3)) == Rat(4) + Rat(2, 3));
    for (Rat b : {Rat(1), Rat(2), Rat(3), Rat(5, 2)})
        CHECK(cf.value_at(b) - cf.base_mst() == raise_mst(fig, b).increase);

    WeightedGraph two(2, {{0, 1, 0, 5, {}}});
    BreakpointCurve c2 = curve(two);
    CHECK(c2.end == CurveEnd::unbounded);
    CHECK(c2.points[0].slope_after == Rat(1, 5));

    WeightedGraph capped(2, {{0, 1, 0, 5, 1}});
    BreakpointCurve cc = curve(capped);
    CHECK(cc.end == CurveEnd::capped);
    CHECK(cc.end_budget == Rat(5));
    CHECK(cc.end_mst == Rat(1));
    CHECK(cc.value_at(Rat(100)) == Rat(1));
}

TEST_CASE("invert_curve on the worked examples") {
    BreakpointCurve ct = curve(unit_triangle());
    CHECK(invert_curve(ct, Rat(2)) == Rat(3));
    CHECK(invert_curve(ct, Rat(0)) == Rat(0));

    WeightedGraph capped(2, {{0, 1, 0, 5, 1}});
    BreakpointCurve cc = curve(capped);
    try {
        invert_curve(cc, Rat(2));
        FAIL("expected UnreachableTargetError");
    } catch (const UnreachableTargetError& e) {
        CHECK(e.max_attainable == Rat(1));
    }
}

TEST_CASE("raise_mst matches its curve and stays consistent on a sweep") {
    for (int n = 2; n <= 5; ++n) {
        for (const auto& structure : corpus::connected_structures(n, 7)) {
            const int m = static_cast<int>(structure.size());
            for (const corpus::Draw& d : corpus::draws(m, 2, 2, 3, 0xaaaa + n)) {
                WeightedGraph g = corpus::build(n, structure, d);
                BreakpointCurve cv = curve(g);
                for (int i = 0; i + 1 < static_cast<int>(cv.points.size()); ++i) {
                    REQUIRE(cv.points[i].slope_after >= cv.points[i + 1].slope_after);
                    REQUIRE(cv.points[i].budget < cv.points[i + 1].budget);
                }
                for (Rat b : {Rat(1), Rat(3), Rat(7, 2), Rat(6)}) {
                    Trace tr = raise_mst(g, b);
                    check_trace_consistency(g, tr, b);
                    REQUIRE(tr.increase == cv.value_at(b) - cv.base_mst());
                }
            }
        }
    }
}

TEST_CASE("permuting the edge order preserves the increase") {
    for (int n = 3; n <= 5; ++n) {
        const auto& structures = corpus::connected_structures(n, 7);
        const auto& structure = structures[structures.size() / 2];
        const int m = static_cast<int>(structure.size());
        corpus::Draw d = corpus::draws(m, 1, 2, 3, 0x1234 + n)[0];
        WeightedGraph g = corpus::build(n, structure, d);

        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        std::reverse(perm.begin(), perm.end());
        std::vector<Edge> shuffled;
        for (int i : perm) shuffled.push_back(g.edge(i));
        WeightedGraph g2(n, shuffled);

        for (Rat b : {Rat(2), Rat(5), Rat(9, 2)})
            CHECK(raise_mst(g, b).increase == raise_mst(g2, b).increase);
    }
}

TEST_CASE("caps clamp lifts and saturate edges") {
    // Two parallel edges, the cheap one capped: after the cap saturates the
    // expensive edge keeps the raise going at a worse slope.
    WeightedGraph g(2, {{0, 1, 0, 1, 2}, {0, 1, 0, 3, {}}});
    Trace tr = raise_mst(g, Rat(10));
    check_trace_consistency(g, tr, Rat(10));
    for (int id = 0; id < g.edge_count(); ++id)
        if (g.edge(id).cap) CHECK(tr.final_perturbation.amounts[id] <= Rat(*g.edge(id).cap));

    // All caps saturated: the run stops early with leftover budget.
    WeightedGraph hard(2, {{0, 1, 0, 2, 1}});
    Trace th = raise_mst(hard, Rat(100));
    CHECK(th.increase == Rat(1));
    CHECK(th.total_spent() == Rat(2));

    BreakpointCurve cv = curve(g, Rat(4));
    CHECK(cv.end == CurveEnd::truncated);
    CHECK(cv.value_at(Rat(4)) - cv.base_mst() == raise_mst(g, Rat(4)).increase);
}
