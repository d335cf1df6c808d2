#include <doctest.h>

#include "helpers.hpp"
#include "nlpage/errors.hpp"
#include "nlpage/generators.hpp"
#include "nlpage/io.hpp"

using namespace nlpage;
using namespace nlpage::testing;

TEST_CASE("instances round-trip through JSON for every kind") {
    std::vector<std::pair<Instance, RequestTrace>> cases;
    cases.push_back({shared_memory_example(), make_trace({1, 2, 0, 3})});
    cases.push_back({cardinality_instance(5, 2), make_trace({0, 1, 2, 3, 4})});
    cases.push_back(reduce_set_cover(cover_example()));
    cases.push_back({gen_mu_vs_ell(4, 2), make_trace({0, 1, 2, 3})});
    cases.push_back({gen_restricted_hard(3), make_trace({0, 1, 2, 3})});
    {
        auto hg = gen_random(RandomKind::hypergraph, 6, 9);
        cases.push_back(hg);
    }
    for (const auto& [inst, trace] : cases) {
        std::string text = instance_to_json(inst);
        Instance back = parse_instance(text);
        CHECK(instance_to_json(back) == text);
        CHECK(back.n() == inst.n());
        CHECK(back.k == inst.k);
        for (uint64_t m = 0; m < (uint64_t(1) << std::min<uint32_t>(inst.n(), 12)); ++m)
            CHECK(eval_f(back.spec, PageSet::from_mask(m, inst.n())) ==
                  eval_f(inst.spec, PageSet::from_mask(m, inst.n())));
        for (PageId p = 0; p < inst.n(); ++p) CHECK(back.removable(p) == inst.removable(p));

        std::string ttext = trace_to_json(trace, inst);
        RequestTrace tback = parse_trace(ttext, back);
        CHECK(tback.requests == trace.requests);
    }
}

TEST_CASE("solution dumps round-trip") {
    Instance inst = shared_memory_example();
    SolutionDump dump;
    dump.kind = LpKind::relax;
    dump.ledger.kind = LpKind::relax;
    dump.x.set(1, 1, 1.0);
    dump.x.set(3, 2, 0.25);
    dump.ledger.entries.push_back({4, make_set(4, {1, 3}), 1.0});
    std::string text = solution_to_json(dump, inst);
    SolutionDump back = parse_solution(text, inst);
    CHECK(back.kind == LpKind::relax);
    CHECK(back.x.at(1, 1) == 1.0);
    CHECK(back.x.at(3, 2) == 0.25);
    REQUIRE(back.ledger.entries.size() == 1);
    CHECK(back.ledger.entries[0].set == make_set(4, {1, 3}));
}

TEST_CASE("malformed input is rejected with context") {
    CHECK_THROWS_AS(parse_instance("{"), input_error);
    CHECK_THROWS_AS(parse_instance("{}"), input_error);
    CHECK_THROWS_AS(parse_instance(R"({"pages":["a"],"costs":[1],"k":0,
        "spec":{"kind":"nope","payload":{}}})"),
                    input_error);
    // zero cost rejected
    CHECK_THROWS_AS(parse_instance(R"({"pages":["a"],"costs":[0],"k":1,
        "spec":{"kind":"cardinality","payload":{}}})"),
                    input_error);
    // page does not fit alone
    CHECK_THROWS_AS(parse_instance(R"({"pages":["a"],"costs":[1],"k":0,
        "spec":{"kind":"cardinality","payload":{}}})"),
                    input_error);
    Instance inst = cardinality_instance(2, 1);
    CHECK_THROWS_AS(parse_trace("[\"zzz\"]", inst), input_error);
    CHECK_THROWS_AS(parse_trace("[]", inst), input_error);
}

TEST_CASE("hex masks cover universes beyond 64 pages") {
    PageSet s(80);
    s.insert(0);
    s.insert(65);
    s.insert(79);
    PageSet back = PageSet::from_hex(s.to_hex(), 80);
    CHECK(back == s);
    CHECK(PageSet::from_hex("0x0", 80).empty());
}
