#ifndef NLPAGE_STRONGER_HPP
#define NLPAGE_STRONGER_HPP

#include <cstdint>
#include <optional>

#include "nlpage/lp.hpp"
#include "nlpage/types.hpp"

namespace nlpage {

struct StrongerConfig {
    double eps_event = 1e-9;
    double eps_feas = 1e-9;
    uint32_t guard_n = 14;
    // exponent constant of the growth rule; the proven bound uses ln(mu+1),
    // the pseudocode variant ln(n+1) stays selectable for experiments
    bool growth_uses_page_count = false;
};

struct StrongerReport {
    PrimalVector<double> x;
    DualLedger<double> ledger;  // kind = stronger
    TightnessTable<double> tightness;
    double cost_x = 0;
    double dual = 0;
    int64_t mu = 1;
    uint32_t raise_events = 0;
    uint32_t steps = 0;
};

// a violated q-constraint at time t none of whose non-requested members is
// fully evicted, by ascending (cardinality, bitmask); nullopt when feasible
struct StrongerSeparationView {
    const Instance& inst;
    const RequestIndex& ri;
    const PrimalVector<double>& x;
    uint32_t t;
    PageId pt;
};
std::optional<std::pair<PageSet, int64_t>> find_violated_q_constraint(const StrongerSeparationView& view,
                                                                      double eps_feas);

/*
 * Online solver for the q(S)-strengthened LP: raise y_t(S) of a violated set
 * while every page of S-p_t grows along the same exponential rule as the
 * cover solver; a raise ends when the constraint is met (bisection) or some
 * page reaches extent 1 (closed form, Y_p = c(p)). q values are memoized per
 * run.
 */
StrongerReport run_stronger(const Instance& inst, const RequestTrace& trace, StrongerConfig cfg = {});

}  // namespace nlpage

#endif
