#ifndef NLPAGE_TESTS_HELPERS_HPP
#define NLPAGE_TESTS_HELPERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nlpage/generators.hpp"
#include "nlpage/types.hpp"

namespace nlpage::testing {

// the four-page shared-memory example: a(p1)={a2}, a(p2)={a1,a2,a3},
// a(p3)={a3}, a(p4)={a2,a3,a4}, cache threshold 3
inline Instance shared_memory_example() {
    Instance inst;
    inst.page_names = {"p1", "p2", "p3", "p4"};
    inst.costs.assign(4, Cost{1, false});
    SharedAtomsSpec spec;
    spec.atom_count = 4;
    spec.page_atoms = {{1}, {0, 1, 2}, {2}, {1, 2, 3}};
    inst.spec = spec;
    inst.k = 3;
    return inst;
}

// the elements {1..4} with sets S1={1,4}, S2={2,3,4} set cover example
inline SetCoverInstance cover_example(std::vector<uint32_t> requests = {0, 3}) {
    SetCoverInstance sc;
    sc.element_count = 4;
    sc.sets = {{0, 3}, {1, 2, 3}};
    sc.set_costs = {1, 1};
    sc.requests = std::move(requests);
    return sc;
}

inline Instance cardinality_instance(uint32_t n, int64_t k, int64_t cost = 1) {
    Instance inst;
    for (uint32_t p = 0; p < n; ++p) inst.page_names.push_back("p" + std::to_string(p + 1));
    inst.costs.assign(n, Cost{cost, false});
    inst.spec = CardinalitySpec{};
    inst.k = k;
    return inst;
}

inline PageSet make_set(uint32_t n, std::initializer_list<PageId> pages) {
    PageSet s(n);
    for (PageId p : pages) s.insert(p);
    return s;
}

inline RequestTrace make_trace(std::initializer_list<PageId> reqs) {
    return RequestTrace{std::vector<PageId>(reqs)};
}

// tiny deterministic generator for property-style loops
struct Lcg {
    uint64_t state;
    explicit Lcg(uint64_t seed) : state(seed * 2862933555777941757ULL + 3037000493ULL) {}
    uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    }
    uint32_t below(uint32_t bound) { return uint32_t(next() % bound); }
};

}  // namespace nlpage::testing

#endif
