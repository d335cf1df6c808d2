#ifndef NLPAGE_OFFLINE_HPP
#define NLPAGE_OFFLINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlpage/params.hpp"
#include "nlpage/rational.hpp"
#include "nlpage/types.hpp"

namespace nlpage {

struct OptResult {
    int64_t cost = 0;
    std::vector<PageSet> schedule;  // end-of-step caches, lexicographically
                                    // smallest bitmask sequence among optima
    std::string method;             // "dp" or "belady"
};

/*
 * Exact offline optimum by dynamic programming over feasible cache states.
 * Pages enter only when requested, the requested page must reside at the end
 * of its step, unremovable pages never leave, and cost is charged per
 * eviction. State space is 2^(removable pages); guarded.
 */
OptResult opt_dp(const Instance& inst, const RequestTrace& trace, uint32_t guard_n = kDefaultGuard);

// Farthest-in-future eviction count. Optimal for cardinality feasibility with
// unit costs and no unremovable pages (lazy schedules maximize final
// residency, so minimizing fetches minimizes evictions); usable at any n.
OptResult opt_belady_unit(const Instance& inst, const RequestTrace& trace);

// dispatch: belady when it is exact for the instance, else the DP
OptResult exact_opt(const Instance& inst, const RequestTrace& trace, uint32_t guard_n = kDefaultGuard);

// alg/opt; nullopt means undefined (opt = 0 with positive algorithm cost);
// both zero gives 1
std::optional<Rat> cost_ratio(const Rat& alg_cost, int64_t opt_cost);

}  // namespace nlpage

#endif
