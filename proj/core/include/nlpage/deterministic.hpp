#ifndef NLPAGE_DETERMINISTIC_HPP
#define NLPAGE_DETERMINISTIC_HPP

#include <cstdint>
#include <vector>

#include "nlpage/lp.hpp"
#include "nlpage/params.hpp"
#include "nlpage/types.hpp"

namespace nlpage {

// Minimal interface an adaptive adversary needs: feed a request, observe the
// resulting cache.
struct OnlineAlgorithm {
    virtual ~OnlineAlgorithm() = default;
    virtual void on_request(PageId p) = 0;
    virtual const PageSet& cache() const = 0;
};

struct DetConfig {
    PeelMode peel = PeelMode::greedy;
    uint32_t exact_guard_n = 12;     // cap for PeelMode::exact
    bool record_snapshots = true;
};

struct DetReport {
    PrimalVector<Rat> x;                               // integral
    DualLedger<Rat> ledger;                            // kind = relax
    TightnessTable<Rat> tightness;
    std::vector<std::pair<uint32_t, PageId>> evictions;  // (t, page)
    Rat total_cost{0};
    std::vector<PageSet> cache_by_step;                // end-of-step snapshots
    uint32_t steps = 0;
};

/*
 * The primal-dual eviction policy: on an infeasible cache, pick a minimally
 * infeasible Q containing the requested page and raise the dual variable
 * y_t(Q) until some page of Q-p_t reaches its cost; evict every tight page
 * and repeat until the cache is feasible again.
 *
 * All pages of Q-p_t accrue tightness at unit rate, so the continuous raise
 * collapses to one exact step of size min slack. Costs are integers, hence
 * every dual quantity stays integral; the rational type keeps comparisons
 * exact regardless.
 */
class DeterministicRun : public OnlineAlgorithm {
public:
    explicit DeterministicRun(const Instance& inst, DetConfig cfg = {});

    void on_request(PageId p) override;
    const PageSet& cache() const override { return cache_; }
    uint32_t now() const { return t_; }

    DetReport take_report();

private:
    const Instance& inst_;
    DetConfig cfg_;
    uint32_t t_ = 0;
    std::vector<uint32_t> ordinal_;  // j = r(p, t_) so far
    std::vector<Rat> tight_now_;     // Y_p(current ordinal)
    PageSet cache_;
    DetReport report_;
};

DetReport run_deterministic(const Instance& inst, const RequestTrace& trace, DetConfig cfg = {});

// exact check of c(x) <= ell * v(y)
bool competitive_certificate(const DetReport& report, int64_t ell, const Instance& inst);

}  // namespace nlpage

#endif
