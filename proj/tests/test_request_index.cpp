#include <doctest.h>

#include "helpers.hpp"
#include "nlpage/types.hpp"

using namespace nlpage;
using namespace nlpage::testing;

TEST_CASE("request bookkeeping over (a, b, a)") {
    Instance inst = cardinality_instance(2, 1);
    RequestIndex ri = build_request_index(inst, make_trace({0, 1, 0}));
    CHECK(ri.n_p[0] == 2);
    CHECK(ri.n_p[1] == 1);
    CHECK(ri.r_of(0, 2) == 1);
    CHECK(ri.r_of(0, 3) == 2);
    CHECK(ri.r_of(1, 1) == 0);
    CHECK(ri.interval(0, 1) == std::pair<uint32_t, uint32_t>{1, 2});
    CHECK(ri.interval(0, 2) == std::pair<uint32_t, uint32_t>{3, 3});
    CHECK(ri.interval(1, 1) == std::pair<uint32_t, uint32_t>{2, 3});
}

TEST_CASE("single and repeated requests") {
    Instance inst = cardinality_instance(1, 1);
    RequestIndex single = build_request_index(inst, make_trace({0}));
    CHECK(single.interval(0, 1) == std::pair<uint32_t, uint32_t>{1, 1});

    RequestIndex twice = build_request_index(inst, make_trace({0, 0}));
    CHECK(twice.r_of(0, 1) == 1);
    CHECK(twice.r_of(0, 2) == 2);
    CHECK(twice.interval(0, 1) == std::pair<uint32_t, uint32_t>{1, 1});
    CHECK(twice.interval(0, 2) == std::pair<uint32_t, uint32_t>{2, 2});
}

TEST_CASE("intervals partition the times after first request") {
    Instance inst = cardinality_instance(3, 2);
    RequestTrace trace = make_trace({0, 1, 2, 1, 0, 1});
    RequestIndex ri = build_request_index(inst, trace);
    for (PageId p = 0; p < 3; ++p) {
        for (uint32_t t = 1; t <= trace.length(); ++t) {
            uint32_t j = ri.r_of(p, t);
            if (j == 0) continue;
            auto [lo, hi] = ri.interval(p, j);
            CHECK(lo <= t);
            CHECK(t <= hi);
        }
    }
    CHECK_THROWS(build_request_index(inst, RequestTrace{}));
}
