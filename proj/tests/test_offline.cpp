#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "nlpage/errors.hpp"
#include "nlpage/offline.hpp"

using namespace nlpage;
using namespace nlpage::testing;

TEST_CASE("alternating requests, one-page cache") {
    Instance inst = cardinality_instance(2, 1);
    OptResult opt = opt_dp(inst, make_trace({0, 1, 0, 1}));
    CHECK(opt.cost == 3);
    REQUIRE(opt.schedule.size() == 4);
    for (uint32_t t = 0; t < 4; ++t) CHECK(opt.schedule[t].count() == 1);
}

TEST_CASE("single request costs nothing") {
    Instance inst = cardinality_instance(3, 1);
    CHECK(opt_dp(inst, make_trace({2})).cost == 0);
}

TEST_CASE("each page once: exactly n - k evictions") {
    GapInstance gap = gen_gap_instance(9, 3);
    OptResult opt = opt_dp(gap.instance, gap.trace);
    CHECK(opt.cost == 6);
    OptResult bel = opt_belady_unit(gap.instance, gap.trace);
    CHECK(bel.cost == 6);
}

TEST_CASE("schedules are feasible, contain the request, and match the cost") {
    Lcg rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        RandomKind kind = trial % 2 ? RandomKind::linear : RandomKind::shared_atoms;
        auto [inst, trace] = gen_random(kind, 4 + rng.below(4), 300 + trial, GenParams{.trace_len = 16});
        OptResult opt = opt_dp(inst, trace);
        REQUIRE(opt.schedule.size() == trace.length());
        int64_t paid = 0;
        PageSet prev(inst.n());
        for (uint32_t t = 1; t <= trace.length(); ++t) {
            const PageSet& cur = opt.schedule[t - 1];
            CHECK(is_feasible(inst, cur));
            CHECK(cur.contains(trace.at(t)));
            PageSet arrived = prev.plus(trace.at(t));
            CHECK(cur.is_subset_of(arrived));  // pages enter only on request
            arrived.minus(cur).for_each([&](PageId p) { paid += inst.cost(p); });
            prev = cur;
        }
        CHECK(paid == opt.cost);
    }
}

TEST_CASE("belady agrees with the DP on unit-cost cardinality instances") {
    Lcg rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        uint32_t n = 3 + rng.below(5);
        Instance inst = cardinality_instance(n, 1 + rng.below(3));
        std::vector<PageId> reqs;
        for (int i = 0; i < 18; ++i) reqs.push_back(rng.below(n));
        RequestTrace trace{reqs};
        CHECK(opt_belady_unit(inst, trace).cost == opt_dp(inst, trace).cost);
    }
}

TEST_CASE("relabeling pages leaves the optimum unchanged") {
    Lcg rng(29);
    for (int trial = 0; trial < 15; ++trial) {
        auto [inst, trace] = gen_random(RandomKind::shared_atoms, 6, 808 + trial, GenParams{.trace_len = 14});
        // reverse page ids
        uint32_t n = inst.n();
        Instance rev = inst;
        std::reverse(rev.page_names.begin(), rev.page_names.end());
        std::reverse(rev.costs.begin(), rev.costs.end());
        auto& spec = std::get<SharedAtomsSpec>(rev.spec);
        std::reverse(spec.page_atoms.begin(), spec.page_atoms.end());
        RequestTrace rtrace = trace;
        for (auto& p : rtrace.requests) p = n - 1 - p;
        CHECK(opt_dp(inst, trace).cost == opt_dp(rev, rtrace).cost);
    }
}

TEST_CASE("DP never beats any feasible run and never undercuts the dual") {
    // exercised against the deterministic algorithm in test_deterministic;
    // here the trivial bound opt <= full-eviction cost
    auto [inst, trace] = gen_random(RandomKind::hypergraph, 6, 4242, GenParams{.trace_len = 12});
    OptResult opt = opt_dp(inst, trace);
    int64_t everything = 0;
    for (PageId p = 0; p < inst.n(); ++p) everything += inst.cost(p) * 12;
    CHECK(opt.cost <= everything);
}

TEST_CASE("unserviceable traces are reported") {
    // two unremovable pages that cannot share the cache
    Instance inst;
    inst.page_names = {"a", "b"};
    inst.costs = {Cost{1, true}, Cost{1, true}};
    inst.spec = CardinalitySpec{};
    inst.k = 1;
    CHECK_THROWS_AS(opt_dp(inst, make_trace({0, 1})), input_error);
}

TEST_CASE("guard on large instances") {
    Instance inst = cardinality_instance(20, 3, 2);  // weighted: no belady route
    std::vector<PageId> reqs(10, 0);
    CHECK_THROWS_AS(opt_dp(inst, RequestTrace{reqs}, 14), guard_error);
    CHECK_THROWS_AS(exact_opt(inst, RequestTrace{reqs}, 14), guard_error);
}

TEST_CASE("ratios") {
    CHECK(cost_ratio(Rat(3), 3) == Rat(1));
    CHECK(cost_ratio(Rat(0), 0) == Rat(1));
    CHECK(cost_ratio(Rat(9), 3) == Rat(3));
    CHECK_FALSE(cost_ratio(Rat(2), 0).has_value());
}
