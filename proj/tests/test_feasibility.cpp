#include <doctest.h>

#include "helpers.hpp"
#include "nlpage/errors.hpp"
#include "nlpage/feasibility.hpp"

using namespace nlpage;
using namespace nlpage::testing;

TEST_CASE("cardinality f counts members") {
    Instance inst = cardinality_instance(5, 3);
    CHECK(eval_f(inst, make_set(5, {0, 1, 2})) == 3);
    CHECK(eval_f(inst, PageSet(5)) == 0);
}

TEST_CASE("shared atoms: union of per-page memory") {
    Instance inst = shared_memory_example();
    // pages p2,p3 jointly hold three atoms
    CHECK(eval_f(inst, make_set(4, {1, 2})) == 3);
    CHECK(eval_f(inst, make_set(4, {1, 3})) == 4);
    CHECK(eval_f(inst, make_set(4, {0, 2})) == 2);
    CHECK(is_feasible(inst, make_set(4, {1, 2})));
    CHECK_FALSE(is_feasible(inst, make_set(4, {1, 3})));
    CHECK(is_feasible(inst, PageSet(4)));
}

TEST_CASE("hypergraph: cardinality plus induced edges") {
    HypergraphSpec spec;
    spec.page_count = 3;
    spec.edges = {{0, 1}, {0, 1, 2}};
    FeasibilitySpec f = spec;
    PageSet all = PageSet::full(3);
    CHECK(eval_f(f, all) == 5);  // 3 vertices + 2 induced edges
    CHECK(eval_f(f, make_set(3, {0, 1})) == 3);
    CHECK(eval_f(f, make_set(3, {1, 2})) == 2);
}

TEST_CASE("cover function g and its marginals") {
    Instance inst = cardinality_instance(5, 3);
    CHECK(eval_g(inst, PageSet(5)) == 0);
    CHECK(eval_g(inst, make_set(5, {1, 4})) == 2);  // g(S) = |S| for cardinality
    CHECK(marginal_g(inst.spec, 5, make_set(5, {1}), 2) == 1);

    auto [cover, trace] = reduce_set_cover(cover_example());
    (void)trace;
    // out-of-cache pages {e2,e3,S1} cover all four elements
    PageSet F = make_set(cover.n(), {1, 2, 4});
    CHECK(eval_g(cover, F) == 4);
    // S1 newly covers elements 1 and 4 on top of {e2,e3}
    CHECK(marginal_g(cover.spec, cover.n(), make_set(cover.n(), {1, 2}), 4) == 2);
    // with S2 already outside, S1 only adds element 1
    CHECK(marginal_g(cover.spec, cover.n(), make_set(cover.n(), {1, 2, 5}), 4) == 1);
    CHECK_THROWS_AS(marginal_g(cover.spec, cover.n(), F, 1), input_error);
}

TEST_CASE("monotonicity verification") {
    CHECK(verify_monotone(CardinalitySpec{}, 6));
    CHECK(verify_monotone(shared_memory_example().spec, 4));

    HypergraphSpec hg;
    hg.page_count = 5;
    hg.edges = {{0, 1}, {1, 2, 3}, {0, 4}};
    CHECK(verify_monotone(FeasibilitySpec(hg), 5));

    ExplicitTableSpec bad;
    bad.page_count = 2;
    bad.values = {0, 2, 1, 1};  // f({p1}) = 2 > f({p1,p2}) = 1
    CHECK_FALSE(verify_monotone(FeasibilitySpec(bad), 2));

    CHECK_THROWS_AS(verify_monotone(CardinalitySpec{}, 18, 16), guard_error);
}

TEST_CASE("structural curvature of the example families") {
    CHECK(verify_submodular_f(shared_memory_example().spec, 4));

    HypergraphSpec hg;
    hg.page_count = 6;
    hg.edges = {{0, 1}, {2, 3, 4}, {1, 5}, {0, 1, 2}};
    CHECK(verify_supermodular_f(FeasibilitySpec(hg), 6));
    CHECK(g_is_submodular(FeasibilitySpec(hg), 6));

    auto [cover, trace] = reduce_set_cover(cover_example());
    (void)trace;
    CHECK(verify_supermodular_f(cover.spec, cover.n()));
}

TEST_CASE("mask evaluator agrees with the set-based path") {
    std::vector<Instance> insts;
    insts.push_back(shared_memory_example());
    insts.push_back(cardinality_instance(5, 2));
    insts.push_back(reduce_set_cover(cover_example()).first);
    {
        HypergraphSpec hg;
        hg.page_count = 5;
        hg.edges = {{0, 1}, {1, 2, 3}, {0, 4}};
        Instance inst;
        inst.page_names = {"a", "b", "c", "d", "e"};
        inst.costs.assign(5, Cost{1, false});
        inst.spec = hg;
        inst.k = 4;
        insts.push_back(inst);
    }
    {
        LinearSpec lin;
        lin.sizes = {0, 2, 1, 2};
        Instance inst;
        inst.page_names = {"a", "b", "c", "d"};
        inst.costs.assign(4, Cost{1, false});
        inst.spec = lin;
        inst.k = 3;
        insts.push_back(inst);
    }
    for (const auto& inst : insts) {
        MaskEvaluator ev(inst.spec, inst.n());
        for (uint32_t m = 0; m <= ev.full_mask(); ++m) {
            PageSet s = PageSet::from_mask(m, inst.n());
            CHECK(ev.f(m) == eval_f(inst.spec, s));
            CHECK(ev.g(m) == eval_g(inst.spec, inst.n(), s));
        }
    }
}

TEST_CASE("explicit table rejects out-of-range subsets") {
    ExplicitTableSpec tb;
    tb.page_count = 2;
    tb.values = {0, 1, 1, 2};
    FeasibilitySpec f = tb;
    CHECK(eval_f(f, make_set(2, {0, 1})) == 2);
    CHECK_THROWS_AS(eval_f(f, make_set(3, {2})), input_error);
}
