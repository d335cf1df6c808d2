#ifndef NLPAGE_FRACTIONAL_HPP
#define NLPAGE_FRACTIONAL_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "nlpage/lp.hpp"
#include "nlpage/types.hpp"

namespace nlpage {

// mid-run view passed to the per-step hook after each time step settles
struct FracStepView {
    uint32_t t;
    const std::vector<uint32_t>& ordinal;  // r(p, t) per page
    const PrimalVector<double>& x;
    const PrimalVector<double>& z;
};

struct FracConfig {
    double eps_event = 1e-9;  // binary-search stop for constraint-satisfaction events
    double eps_feas = 1e-9;   // violation margin in the separation oracle
    uint32_t guard_n = 16;
    bool verify_each_step = false;  // re-check minimal-constraint feasibility per time step
    std::function<void(const FracStepView&)> on_step_end;
};

struct FracReport {
    PrimalVector<double> x;
    PrimalVector<double> z;        // rounding-friendly companion
    DualLedger<double> ledger;     // kind = cover; sets keyed by P\Q
    TightnessTable<double> tightness;
    double cost_x = 0;
    double cost_z = 0;
    double dual = 0;
    int64_t mu = 1;
    int64_t demand = 0;            // N
    uint32_t raise_events = 0;
    uint32_t steps = 0;
};

// A separation routine returns some violated set Q that contains every page
// of extent 1, or nullopt when x is feasible at time t. The default brute
// force scans supersets of the evicted set by ascending cardinality.
struct FracSeparationView {
    const Instance& inst;
    const RequestIndex& ri;
    const PrimalVector<double>& x;
    uint32_t t;
    PageId pt;
    int64_t demand_N;
};
using CoverSeparator = std::function<std::optional<PageSet>(const FracSeparationView&)>;

std::optional<PageSet> separate_cover_brute_force(const FracSeparationView& view, double eps_feas);

/*
 * Online multiplicative-growth solver for the cover LP. While a minimal
 * violated set Q exists for time t, the dual variable keyed by P\Q rises and
 * every page outside Q (other than p_t) grows as
 *
 *     x_p = (1/mu) * (exp(ln(mu+1) / c(p) * Y_p) - 1),
 *
 * so x_p reaches 1 exactly when Y_p = c(p). A raise ends at the first of:
 * the constraint becoming satisfied (bisection), or some x_p crossing 1/2,
 * which jumps x and z to 1 and invalidates Q. The companion z is re-synced
 * to 2x whenever it lags by 1/(4 N mu).
 */
FracReport run_fractional(const Instance& inst, const RequestTrace& trace, FracConfig cfg = {},
                          const CoverSeparator& separator = {});

}  // namespace nlpage

#endif
