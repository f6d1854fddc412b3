#include <catch2/catch_amalgamated.hpp>

#include "mstup/flows.hpp"
#include "mstup/oracle.hpp"

using namespace mstup;

namespace {

/// All arc structures on n nodes (no self-loops), up to max_arcs arcs,
/// enumerated as index masks over the ordered pairs.
std::vector<std::vector<std::pair<int, int>>> arc_structures(int n, int max_arcs) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) pairs.push_back({u, v});
    std::vector<std::vector<std::pair<int, int>>> out;
    const int p = static_cast<int>(pairs.size());
    for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
        if (__builtin_popcount(mask) > max_arcs) continue;
        std::vector<std::pair<int, int>> arcs;
        for (int i = 0; i < p; ++i)
            if (mask >> i & 1u) arcs.push_back(pairs[i]);
        out.push_back(std::move(arcs));
    }
    return out;
}

}  // namespace

TEST_CASE("max_flow on the worked examples") {
    CHECK(max_flow({2, 0, 1, {{0, 1, 3, 1, {}}}}).first == 3);
    CHECK(max_flow({3, 0, 2, {{0, 1, 1, 1, {}}, {1, 2, 2, 1, {}}}}).first == 1);
    FlowNetwork diamond{4, 0, 3,
                        {{0, 1, 1, 1, {}}, {0, 2, 1, 1, {}}, {1, 3, 1, 1, {}}, {2, 3, 1, 1, {}}}};
    CHECK(max_flow(diamond).first == 2);
}

TEST_CASE("min_cost_flow on the worked examples") {
    FlowNetwork one{2, 0, 1, {{0, 1, 3, 2, {}}}};
    std::vector<long long> f = min_cost_flow(one, 3);
    CHECK(f[0] == 3);  // cost 6 = 3 * 2

    CHECK(min_cost_flow(one, 0) == std::vector<long long>{0});

    FlowNetwork par{2, 0, 1, {{0, 1, 1, 1, {}}, {0, 1, 5, 3, {}}}};
    std::vector<long long> g = min_cost_flow(par, 2);
    CHECK(g[0] == 1);
    CHECK(g[1] == 1);  // total cost 4

    CHECK_THROWS_AS(min_cost_flow(one, 5), std::invalid_argument);
}

TEST_CASE("network validation") {
    CHECK_THROWS_AS(validate_network({2, 0, 0, {}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_network({2, 0, 1, {{0, 3, 1, 1, {}}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_network({2, 0, 1, {{0, 1, 1, 0, {}}}}), std::invalid_argument);
}

TEST_CASE("mmf_upgrade on the worked examples") {
    UpgradeResult single = mmf_upgrade({2, 0, 1, {{0, 1, 1, 1, 3}}}, 2);
    CHECK(single.value == 3);
    CHECK(single.amounts == std::vector<long long>{2});

    UpgradeResult chain = mmf_upgrade({3, 0, 2, {{0, 1, 1, 1, {}}, {1, 2, 2, 1, {}}}}, 1);
    CHECK(chain.value == 2);
    CHECK(chain.amounts == std::vector<long long>{1, 0});

    UpgradeResult idle = mmf_upgrade({3, 0, 2, {{0, 1, 1, 1, {}}, {1, 2, 2, 1, {}}}}, 0);
    CHECK(idle.value == 1);
    CHECK(idle.amounts == std::vector<long long>{0, 0});
}

TEST_CASE("msp_upgrade on the worked examples") {
    UpgradeResult single = msp_upgrade({2, 0, 1, {{0, 1, 1, 1, 2}}}, 2);
    CHECK(single.value == 3);

    UpgradeResult par = msp_upgrade({2, 0, 1, {{0, 1, 1, 1, {}}, {0, 1, 1, 1, {}}}}, 2);
    CHECK(par.value == 2);  // one unit each; splitting unevenly leaves a short path

    UpgradeResult idle = msp_upgrade({2, 0, 1, {{0, 1, 1, 1, {}}, {0, 1, 1, 1, {}}}}, 0);
    CHECK(idle.value == 1);

    FlowNetwork unreachable{3, 0, 2, {{0, 1, 1, 1, {}}}};
    CHECK_THROWS_AS(msp_upgrade(unreachable, 1), std::invalid_argument);
}

TEST_CASE("upgrades are monotone in the budget") {
    FlowNetwork net{3, 0, 2, {{0, 1, 1, 1, 2}, {1, 2, 0, 2, {}}, {0, 2, 1, 3, 1}}};
    long long prev_flow = -1, prev_len = -1;
    for (long long b = 0; b <= 6; ++b) {
        long long flow = mmf_upgrade(net, b).value;
        CHECK(flow >= prev_flow);
        prev_flow = flow;
        long long len = msp_upgrade(net, b).value;
        CHECK(len >= prev_len);
        prev_len = len;
    }
}

TEST_CASE("upgrades match exhaustive enumeration on tiny networks") {
    // Spot sweep; the acceptance suite runs the full corpus.
    for (const auto& arcs : arc_structures(3, 4)) {
        FlowNetwork net;
        net.node_count = 3;
        net.source = 0;
        net.sink = 2;
        int salt = 0;
        for (auto [u, v] : arcs) {
            Arc a{u, v, (u + v + salt) % 3, 1 + (salt % 2), {}};
            if (salt % 3 == 0) a.cap = 2;
            net.arcs.push_back(a);
            ++salt;
        }
        const bool reachable =
            detail::shortest_path_length(net, std::vector<long long>(net.arcs.size(), 0)) < detail::kUnreachable;
        for (long long b : {0LL, 2LL, 3LL}) {
            CHECK(mmf_upgrade(net, b).value == brute_mmf_value(net, b));
            if (reachable) CHECK(msp_upgrade(net, b).value == brute_msp_value(net, b));
        }
    }
}

TEST_CASE("upgrade outputs respect caps and budgets") {
    FlowNetwork net{3, 0, 2, {{0, 1, 1, 2, 1}, {1, 2, 1, 1, 3}, {0, 2, 0, 1, 2}}};
    for (long long b = 0; b <= 5; ++b) {
        UpgradeResult up = mmf_upgrade(net, b);
        long long spend = 0;
        for (std::size_t i = 0; i < net.arcs.size(); ++i) {
            spend += up.amounts[i] * net.arcs[i].cost;
            if (net.arcs[i].cap) CHECK(up.amounts[i] <= *net.arcs[i].cap);
            CHECK(up.amounts[i] >= 0);
        }
        CHECK(spend <= b);

        UpgradeResult mu = msp_upgrade(net, b);
        spend = 0;
        for (std::size_t i = 0; i < net.arcs.size(); ++i) {
            spend += mu.amounts[i] * net.arcs[i].cost;
            if (net.arcs[i].cap) CHECK(mu.amounts[i] <= *net.arcs[i].cap);
            CHECK(mu.amounts[i] >= 0);
        }
        CHECK(spend <= b);
    }
}
