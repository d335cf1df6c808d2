#ifndef NLPAGE_ROUNDING_HPP
#define NLPAGE_ROUNDING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nlpage/fractional.hpp"
#include "nlpage/types.hpp"

namespace nlpage {

// boosting factor alpha = ln(4 C N^2 mu^2); natural log (the analysis bounds
// the repair probability by e^{-alpha})
double compute_alpha(const Instance& inst, uint32_t guard_n = 16);

// The fractional run is deterministic, so Monte-Carlo ensembles share one
// trajectory: the boosted value z'_p(r(p,t)) = min(1, alpha * z_p) recorded
// after the fractional update of each step.
struct FracTrajectory {
    double alpha = 0;
    std::vector<std::vector<double>> zprime;  // [t-1][p]
    FracReport frac;                          // final fractional state
};

FracTrajectory compute_trajectory(const Instance& inst, const RequestTrace& trace, FracConfig cfg = {});

struct RoundReport {
    uint64_t seed = 0;
    int64_t total_cost = 0;
    std::vector<std::pair<uint32_t, PageId>> evictions;
    uint32_t repair_steps = 0;  // time steps whose repair loop ran
    std::vector<PageSet> cache_by_step;
};

// deterministic per-(seed, t, page) uniform draw in [0,1)
double trial_uniform(uint64_t seed, uint32_t t, PageId p);

// among removable pages outside F with positive cover marginal (and not
// `exclude`), the one maximizing g_F(p)/c(p), ties by ascending id
PageId repair_tiebreak(const Instance& inst, const PageSet& F,
                       std::optional<PageId> exclude = std::nullopt);

/*
 * Online randomized rounding of z': each page is evicted with probability
 * (z' - Delta)/(1 - Delta) so that its marginal missing-probability tracks
 * z', then pages with positive cover marginal are evicted until the demand
 * N is met again. Reproducible from the seed alone.
 */
RoundReport run_rounding(const Instance& inst, const RequestTrace& trace, uint64_t seed,
                         const FracTrajectory& traj, bool record_snapshots = false);
RoundReport run_rounding(const Instance& inst, const RequestTrace& trace, uint64_t seed,
                         FracConfig cfg = {});

}  // namespace nlpage

#endif
