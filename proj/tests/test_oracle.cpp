#include <catch2/catch_amalgamated.hpp>

#include "mstup/oracle.hpp"
#include "mstup/raise.hpp"
#include "support/corpus.hpp"

using namespace mstup;

namespace {

WeightedGraph appendix_triangle() {
    // AB heavy and expensive, AC/BC light and cheap.
    return WeightedGraph(3, {{0, 1, 2, 20, {}}, {0, 2, 1, 1, {}}, {1, 2, 1, 1, {}}});
}

}  // namespace

TEST_CASE("brute_targeted on the worked examples") {
    WeightedGraph tri(3, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
    CHECK(brute_targeted(tri, 1).total_cost(tri) == Rat(2));

    WeightedGraph path(4, {{0, 1, 0, 2, {}}, {1, 2, 0, 1, {}}, {2, 3, 0, 3, {}}});
    for (long long t = 1; t <= 4; ++t)
        CHECK(brute_targeted(path, t).total_cost(path) == Rat(t));  // tree: t times the cheapest edge

    WeightedGraph fig = appendix_triangle();
    Perturbation best = brute_targeted(fig, 3);
    CHECK(best.total_cost(fig) == Rat(4));
    // The end-state MSTs abandon the starting MST {AC, CB} as a pair.
    std::vector<long long> units;
    for (const Rat& a : best.amounts) units.push_back(rat_to_long(a));
    WeightedGraph lifted(3, {{0, 1, 2 + units[0], 20, {}}, {0, 2, 1 + units[1], 1, {}}, {1, 2, 1 + units[2], 1, {}}});
    auto trees = corpus::spanning_tree_masks(lifted);
    std::vector<long long> zeros(3, 0);
    long long mst_w = mst_weight_units(lifted, zeros);
    for (std::uint32_t t : trees) {
        long long w = 0;
        for (int id = 0; id < 3; ++id)
            if (t >> id & 1u) w += lifted.edge(id).weight;
        if (w == mst_w) CHECK(t != 0b110u);  // never {AC, BC} again
    }
}

TEST_CASE("brute_budgeted on the worked examples") {
    WeightedGraph tri(3, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
    auto inc = [&](const WeightedGraph& g, const Perturbation& x) {
        return mst_weight(g, x) - mst_weight(g, Perturbation::zero(g));
    };
    CHECK(inc(tri, brute_budgeted(tri, 3)) == Rat(2));
    CHECK(inc(tri, brute_budgeted(tri, 0)) == Rat(0));

    WeightedGraph path(4, {{0, 1, 0, 1, {}}, {1, 2, 0, 1, {}}, {2, 3, 0, 1, {}}});
    CHECK(inc(path, brute_budgeted(path, 4)) == Rat(4));
}

TEST_CASE("brute_strength on the worked examples") {
    WeightedGraph tri(3, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
    CompactedGraph ht = compact(tri, Perturbation::zero(tri), Rat(0));
    CHECK(brute_strength(ht).first == Rat(3, 2));

    WeightedGraph two(2, {{0, 1, 0, 5, {}}});
    CompactedGraph h2 = compact(two, Perturbation::zero(two), Rat(0));
    CHECK(brute_strength(h2).first == Rat(5));

    WeightedGraph star(4, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {0, 3, 0, 1, {}}});
    CompactedGraph hs = compact(star, Perturbation::zero(star), Rat(0));
    CHECK(brute_strength(hs).first == Rat(1));
}

TEST_CASE("oracle guards reject oversized instances") {
    std::vector<Edge> edges;
    for (int v = 1; v < 10; ++v) edges.push_back({0, v, 0, 1, {}});
    WeightedGraph big(10, edges);
    CHECK_THROWS_AS(brute_targeted(big, 2), OracleGuardError);
    CHECK_THROWS_AS(brute_budgeted(big, 4), OracleGuardError);
}

TEST_CASE("oracle greedy agrees with raise_mst on a small sweep") {
    for (int n = 2; n <= 4; ++n) {
        for (const auto& structure : corpus::connected_structures(n, 6)) {
            const int m = static_cast<int>(structure.size());
            for (const corpus::Draw& d : corpus::draws(m, 2, 2, 3, 0x404 + n)) {
                WeightedGraph g = corpus::build(n, structure, d);
                for (Rat b : {Rat(1), Rat(3), Rat(11, 2)})
                    REQUIRE(oracle_continuous_increase(g, b) == raise_mst(g, b).increase);
            }
        }
    }
}

TEST_CASE("structure check on the worked examples") {
    WeightedGraph fig = appendix_triangle();
    Perturbation best = brute_targeted(fig, 3);
    CHECK(optimality_structure_check(fig, best).pass);

    // Lifting only MST-interior edges passes vacuously.
    WeightedGraph path(4, {{0, 1, 0, 1, {}}, {1, 2, 0, 1, {}}, {2, 3, 0, 1, {}}});
    Perturbation x = Perturbation::zero(path);
    x.amounts[1] = Rat(3);
    CHECK(optimality_structure_check(path, x).pass);

    // A deliberately wasteful lift of an edge no MST uses violates the rule.
    WeightedGraph tri(3, {{0, 1, 1, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
    Perturbation bad = Perturbation::zero(tri);
    bad.amounts[0] = Rat(5);
    CHECK_FALSE(optimality_structure_check(tri, bad).pass);
}

TEST_CASE("structure check passes on oracle optima") {
    for (int n = 3; n <= 5; ++n) {
        for (const auto& structure : corpus::connected_structures(n, 6)) {
            const int m = static_cast<int>(structure.size());
            for (const corpus::Draw& d : corpus::draws(m, 2, 1, 2, 0xd00d + n)) {
                WeightedGraph g = corpus::build(n, structure, d);
                for (long long budget : {2LL, 4LL}) {
                    Perturbation best = brute_budgeted(g, budget);
                    REQUIRE(optimality_structure_check(g, best).pass);
                }
                Perturbation t = brute_targeted(g, 2);
                REQUIRE(optimality_structure_check(g, t).pass);
            }
        }
    }
}

TEST_CASE("k-cut gadget shape") {
    WeightedGraph tri(3, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
    WeightedGraph gadget = gen_kcut_gadget(tri, 2);
    CHECK(gadget.vertex_count() == 3 + 3 * 2);
    // Per base edge: one clique edge plus two attachments per clique vertex.
    CHECK(gadget.edge_count() == 3 + 3 * (1 + 4));
    std::vector<long long> zeros(gadget.edge_count(), 0);
    CHECK(mst_weight_units(gadget, zeros) == 6);  // one unit edge per added vertex

    CHECK_THROWS_AS(gen_kcut_gadget(tri, 1), std::invalid_argument);
}

TEST_CASE("mmstu instance recovers min cuts through the budget sweep") {
    WeightedGraph tri(3, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
    WeightedGraph inst = gen_mmstu_instance(tri);
    for (const Edge& e : inst.edges()) {
        CHECK(e.weight == 0);
        CHECK(e.cost == 1);
        CHECK(e.cap == 1);
    }
    auto inc = [&](long long b) {
        Perturbation best = brute_budgeted(inst, b);
        return rat_to_long(mst_weight(inst, best) - mst_weight(inst, Perturbation::zero(inst)));
    };
    CHECK(inc(0) == 0);
    CHECK(inc(1) == 0);
    CHECK(inc(2) == 1);  // smallest budget reaching k-1 = 1: the min 2-cut costs 2
    CHECK(inc(3) == 2);  // min 3-cut costs 3
}

TEST_CASE("gadget targeted search equals the base min k-cut") {
    WeightedGraph tri(3, {{0, 1, 0, 1, {}}, {0, 2, 0, 1, {}}, {1, 2, 0, 1, {}}});
    CHECK(gadget_min_upgrade_cost(tri, 1, 4) == corpus::brute_kcut_cost(tri, 2));
    CHECK(gadget_min_upgrade_cost(tri, 2, 4) == corpus::brute_kcut_cost(tri, 3));
}

TEST_CASE("oracles are order independent") {
    WeightedGraph g(4, {{0, 1, 1, 2, {}}, {1, 2, 0, 1, {}}, {2, 3, 2, 1, {}}, {0, 3, 0, 3, {}}});
    std::vector<Edge> reversed(g.edges().rbegin(), g.edges().rend());
    WeightedGraph g2(4, reversed);
    for (long long b : {2LL, 5LL}) {
        Perturbation a = brute_budgeted(g, b);
        Perturbation c = brute_budgeted(g2, b);
        CHECK(mst_weight(g, a) == mst_weight(g2, c));
        CHECK(a.total_cost(g) == c.total_cost(g2));
    }
    CHECK(brute_targeted(g, 2).total_cost(g) == brute_targeted(g2, 2).total_cost(g2));
}
