#include <catch2/catch_amalgamated.hpp>

#include "mstup/approx.hpp"
#include "mstup/oracle.hpp"
#include "support/corpus.hpp"

using namespace mstup;

namespace {

WeightedGraph unit_triangle() {
    return WeightedGraph(3, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
}

Rat oracle_increase(const WeightedGraph& g, const Perturbation& x) {
    return mst_weight(g, x) - mst_weight(g, Perturbation::zero(g));
}

}  // namespace

TEST_CASE("targeted_approx on the worked examples") {
    WeightedGraph tri = unit_triangle();

    DiscreteSolution t1 = targeted_approx(tri, 1);
    CHECK(t1.achieved_increase >= 1);
    CHECK(t1.cost == 2);
    CHECK(*t1.continuous_bound == Rat(3, 2));
    CHECK(t1.breakdown->shores_lifted == 1);

    DiscreteSolution t2 = targeted_approx(tri, 2);
    CHECK(t2.achieved_increase >= 2);
    CHECK(t2.cost == 3);  // lands exactly on a breakpoint, no shore step
    CHECK(t2.breakdown->shores_lifted == 0);

    WeightedGraph path(4, {{0, 1, 0, 1, {}}, {1, 2, 0, 1, {}}, {2, 3, 0, 1, {}}});
    DiscreteSolution t5 = targeted_approx(path, 5);
    CHECK(t5.achieved_increase >= 5);
    CHECK(t5.cost == 5);  // every fractional run is integral on a tree
}

TEST_CASE("budgeted_approx on the worked examples") {
    WeightedGraph tri = unit_triangle();

    DiscreteSolution b1 = budgeted_approx(tri, 1);
    CHECK(b1.achieved_increase == 0);  // the cheapest shore cut costs 2 > 1
    CHECK(b1.cost == 0);

    DiscreteSolution b2 = budgeted_approx(tri, 2);
    CHECK(b2.achieved_increase == 1);
    CHECK(b2.cost <= 2);

    DiscreteSolution b3 = budgeted_approx(tri, 3);
    CHECK(b3.achieved_increase == 2);
    CHECK(b3.cost <= 3);
}

TEST_CASE("targeted rounding keeps its guarantees on a sweep") {
    for (int n = 3; n <= 5; ++n) {
        for (const auto& structure : corpus::connected_structures(n, 6)) {
            const int m = static_cast<int>(structure.size());
            for (const corpus::Draw& d : corpus::draws(m, 2, 2, 3, 0x7a9 + n)) {
                WeightedGraph g = corpus::build(n, structure, d);
                for (long long target = 1; target <= 3; ++target) {
                    DiscreteSolution sol = targeted_approx(g, target);
                    REQUIRE(sol.achieved_increase >= target);
                    REQUIRE(sol.perturbation.integral);
                    // cost <= 2 (1 - 1/n) B_T
                    Rat bound = Rat(2) * (Rat(1) - Rat(1, g.vertex_count())) * *sol.continuous_bound;
                    REQUIRE(Rat(sol.cost) <= bound);
                    Perturbation best = brute_targeted(g, target);
                    REQUIRE(Rat(sol.cost) <=
                            Rat(2) * (Rat(1) - Rat(1, g.vertex_count())) * best.total_cost(g));
                }
            }
        }
    }
}

TEST_CASE("budgeted rounding keeps its guarantees on a sweep") {
    for (int n = 3; n <= 5; ++n) {
        for (const auto& structure : corpus::connected_structures(n, 6)) {
            const int m = static_cast<int>(structure.size());
            for (const corpus::Draw& d : corpus::draws(m, 2, 2, 3, 0x8b0 + n)) {
                WeightedGraph g = corpus::build(n, structure, d);
                for (long long budget = 0; budget <= 6; budget += 2) {
                    DiscreteSolution sol = budgeted_approx(g, budget);
                    REQUIRE(sol.cost <= budget);
                    REQUIRE(sol.perturbation.integral);
                    // achieved >= continuous/2 - 1 >= opt/2 - 1
                    REQUIRE(Rat(2 * sol.achieved_increase) >= *sol.continuous_bound - Rat(2));
                    Perturbation best = brute_budgeted(g, budget);
                    REQUIRE(Rat(2 * sol.achieved_increase) >= oracle_increase(g, best) - Rat(2));
                }
            }
        }
    }
}

TEST_CASE("rounding respects caps") {
    WeightedGraph g(3, {{0, 1, 0, 1, 1}, {0, 2, 0, 1, 2}, {1, 2, 0, 2, {}}});
    for (long long budget : {1LL, 3LL, 5LL, 9LL}) {
        DiscreteSolution sol = budgeted_approx(g, budget);
        sol.perturbation.validate(g);  // cap violations would throw
        REQUIRE(sol.cost <= budget);
    }
    DiscreteSolution t = targeted_approx(g, 1);
    t.perturbation.validate(g);

    // Caps make large targets unreachable.
    WeightedGraph capped(2, {{0, 1, 0, 5, 1}});
    CHECK_THROWS_AS(targeted_approx(capped, 2), UnreachableTargetError);
}
