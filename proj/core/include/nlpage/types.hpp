#ifndef NLPAGE_TYPES_HPP
#define NLPAGE_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nlpage/feasibility.hpp"
#include "nlpage/pageset.hpp"

namespace nlpage {

// Eviction cost of one page. Costs are positive integers; an infinite cost
// is modeled by the unremovable flag, and no algorithm ever evicts a
// flagged page.
struct Cost {
    int64_t value = 1;
    bool unremovable = false;
};

struct Instance {
    std::vector<std::string> page_names;  // index is the PageId
    std::vector<Cost> costs;
    FeasibilitySpec spec;
    int64_t k = 0;

    uint32_t n() const { return uint32_t(page_names.size()); }
    int64_t cost(PageId p) const { return costs[p].value; }
    bool removable(PageId p) const { return !costs[p].unremovable; }
    const std::string& name(PageId p) const { return page_names[p]; }
    PageId id_of(const std::string& name) const;  // input_error if unknown

    // checks page/cost/spec shape agreement, cost >= 1, f({p}) <= k for every
    // page, and (for n <= monotone_guard) monotonicity of f
    void validate(uint32_t monotone_guard = 12) const;
};

struct RequestTrace {
    std::vector<PageId> requests;  // requests[t-1] is the page requested at time t

    uint32_t length() const { return uint32_t(requests.size()); }
    PageId at(uint32_t t) const { return requests[t - 1]; }  // t in 1..length
};

/*
 * Bookkeeping for a trace: per-page request counts n_p, the running count
 * r(p,t) of requests for p up to time t, and the interval I(p,j) of times
 * between the j-th request for p and the one after it.
 */
struct RequestIndex {
    uint32_t T = 0;
    std::vector<uint32_t> n_p;                         // per page
    std::vector<std::vector<uint32_t>> r;              // r[p][t-1] for t in 1..T
    std::vector<std::vector<uint32_t>> request_times;  // per page, ascending

    uint32_t r_of(PageId p, uint32_t t) const { return t == 0 ? 0 : r[p][t - 1]; }

    // I(p,j) as an inclusive [first, last] time range; the last interval of a
    // page extends to the end of the trace
    std::pair<uint32_t, uint32_t> interval(PageId p, uint32_t j) const;
};

RequestIndex build_request_index(const Instance& inst, const RequestTrace& trace);

// convenience wrappers over the feasibility spec
inline int64_t eval_f(const Instance& inst, const PageSet& S) { return eval_f(inst.spec, S); }
inline int64_t eval_g(const Instance& inst, const PageSet& S) { return eval_g(inst.spec, inst.n(), S); }
inline bool is_feasible(const Instance& inst, const PageSet& S) { return eval_f(inst.spec, S) <= inst.k; }

}  // namespace nlpage

#endif
