#ifndef NLPAGE_GENERATORS_HPP
#define NLPAGE_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nlpage/deterministic.hpp"
#include "nlpage/lp.hpp"
#include "nlpage/types.hpp"

namespace nlpage {

/*
 * Constructive instance families and the online set cover reduction.
 */

// n unit-cost pages, cardinality feasibility, threshold k, each page
// requested once; together with the fractional solution x_p(1) = 1/k whose
// cost n/k certifies the integrality gap k - k^2/n of the relax LP
struct GapInstance {
    Instance instance;
    RequestTrace trace;
    PrimalVector<Rat> fractional_x;
};
GapInstance gen_gap_instance(uint32_t n, int64_t k);

// pages X (weight 0) and Y (weight 1, |Y| = k+1) under f(S) = |Y cap S| with
// threshold k: the only minimally infeasible set is Y, so width = k while
// mu = n + k
Instance gen_mu_vs_ell(uint32_t n, int64_t k);

// n+1 pages, k = 0, f(S) = 0 iff |S| <= n else 1: the feasible family of
// classic paging with capacity n, showing k alone carries no information
Instance gen_restricted_hard(uint32_t n);

struct SetCoverInstance {
    uint32_t element_count = 0;
    std::vector<std::vector<uint32_t>> sets;  // element ids per set
    std::vector<int64_t> set_costs;
    std::vector<uint32_t> requests;           // element ids, each in >= 1 set
};

// Pages = elements + sets, element pages unremovable, k = 0; a page set is
// cache-feasible iff every element is covered by an out-of-cache page. The
// trace requests every set page once, then replays the element requests, so
// the set pages evicted by any feasible paging run form a running set cover
// of equal cost.
std::pair<Instance, RequestTrace> reduce_set_cover(const SetCoverInstance& sc);

// set pages currently outside the cache; the extracted cover of a paging run
PageSet extract_cover(const Instance& inst, const PageSet& cache);

// adaptive lower-bound adversary: cardinality instance with ell+1 unit-cost
// pages and threshold ell, each request targeting a page the algorithm lacks
struct AdversaryTranscript {
    Instance instance;
    RequestTrace trace;
    Rat alg_cost{0};
};
RequestTrace drive_adversary(const Instance& inst, uint32_t horizon, OnlineAlgorithm& alg);
AdversaryTranscript gen_adversary_det(uint32_t ell, uint32_t horizon, DetConfig cfg = {});

enum class RandomKind { shared_atoms, hypergraph, set_cover, linear };
RandomKind random_kind_from_name(const std::string& name);
const char* random_kind_name(RandomKind kind);

struct GenParams {
    int64_t k = -1;          // -1 picks a threshold that leaves room to evict
    uint32_t trace_len = 32;
    double zipf = 0.0;       // 0 = uniform requests, larger = more locality
    int64_t cost_max = 4;
    uint32_t elements = 4;   // set_cover
    uint32_t sets = 3;       // set_cover
    uint32_t atoms = 0;      // shared_atoms, 0 = auto
    uint32_t edges = 0;      // hypergraph, 0 = auto
};

// seeded, reproducible instance + trace respecting every instance invariant
std::pair<Instance, RequestTrace> gen_random(RandomKind kind, uint32_t n, uint64_t seed,
                                             const GenParams& params = {});

// the raw set cover instance behind gen_random(set_cover, ...)
SetCoverInstance gen_random_set_cover(uint64_t seed, const GenParams& params);

}  // namespace nlpage

#endif
