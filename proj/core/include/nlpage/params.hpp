#ifndef NLPAGE_PARAMS_HPP
#define NLPAGE_PARAMS_HPP

#include <cstdint>
#include <optional>

#include "nlpage/types.hpp"

namespace nlpage {

// Default cap on subset-enumerating oracles. The CLI lets NLPAGE_MAX_N
// override it; nothing here ever enumerates past 20 pages.
inline constexpr uint32_t kDefaultGuard = 14;

/*
 * Width of the feasibility function: the maximum cardinality of a minimally
 * infeasible set, minus one. Undefined (nullopt) when no infeasible subset
 * exists; every trace is then servable with zero evictions.
 *
 * Exact by enumeration. Closed forms shortcut two families:
 *   - cardinality with n > k: width = k
 *   - linear whose positive sizes all equal s: zero-size pages belong to no
 *     minimally infeasible set, so the width is floor(k/s) when enough
 *     positive pages exist
 */
std::optional<int64_t> width_ell(const Instance& inst, uint32_t guard_n = kDefaultGuard);

// maximum cardinality of a feasible set; same fast paths as width_ell
int64_t mu(const Instance& inst, uint32_t guard_n = kDefaultGuard);

// cover demand N = f(P) - k, clamped at zero
int64_t cover_demand(const Instance& inst);

// max over removable pages of c_max/c_min; 1 when fewer than two removable
// pages exist
double cost_spread(const Instance& inst);

// minimum number of pages whose removal from S leaves a feasible remainder;
// brute force over subsets of S by ascending cardinality, cardinality fast
// path q(S) = max(0, |S|-k)
int64_t q_of(const Instance& inst, const PageSet& S, uint32_t guard_n = kDefaultGuard);

enum class PeelMode { greedy, exact };

/*
 * Shrink an infeasible S to a minimally infeasible Q containing `keep`.
 * Greedy mode drops pages in ascending id (rotated by `rotate`) while the
 * remainder stays infeasible; exact mode enumerates and returns the
 * minimum-cardinality choice (guarded). Throws invariant_error when S is
 * feasible and input_error when no minimally infeasible subset containing
 * `keep` exists.
 */
PageSet peel_min_infeasible(const Instance& inst, const PageSet& S, PageId keep,
                            PeelMode mode = PeelMode::greedy, uint32_t rotate = 0,
                            uint32_t guard_n = kDefaultGuard);

}  // namespace nlpage

#endif
