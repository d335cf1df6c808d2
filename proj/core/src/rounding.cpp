#include "nlpage/rounding.hpp"

#include <cmath>

#include "nlpage/errors.hpp"
#include "nlpage/params.hpp"

namespace nlpage {

namespace {

uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double trial_uniform(uint64_t seed, uint32_t t, PageId p) {
    uint64_t h = mix64(seed ^ mix64((uint64_t(t) << 32) | uint64_t(p)));
    return double(h >> 11) * 0x1.0p-53;
}

double compute_alpha(const Instance& inst, uint32_t guard_n) {
    int64_t N = cover_demand(inst);
    if (N < 1) throw input_error("compute_alpha: zero cover demand, rounding unnecessary");
    int64_t mu_val = mu(inst, guard_n);
    double C = cost_spread(inst);
    return std::log(4.0 * C * double(N) * double(N) * double(mu_val) * double(mu_val));
}

FracTrajectory compute_trajectory(const Instance& inst, const RequestTrace& trace, FracConfig cfg) {
    FracTrajectory traj;
    const uint32_t n = inst.n();
    traj.zprime.assign(trace.length(), std::vector<double>(n, 0.0));
    if (cover_demand(inst) == 0) {
        traj.alpha = 0;
        traj.frac = run_fractional(inst, trace, cfg);
        return traj;
    }
    double alpha = traj.alpha = compute_alpha(inst, cfg.guard_n);

    // one deterministic fractional run; the hook snapshots the boosted
    // entries as each step settles, which is what the online rounding sees
    auto* rows = &traj.zprime;
    cfg.on_step_end = [rows, alpha, n](const FracStepView& view) {
        for (PageId p = 0; p < n; ++p) {
            uint32_t j = view.ordinal[p];
            if (j == 0) continue;
            (*rows)[view.t - 1][p] = std::min(1.0, alpha * view.z.at(p, j));
        }
    };
    traj.frac = run_fractional(inst, trace, cfg);
    return traj;
}

PageId repair_tiebreak(const Instance& inst, const PageSet& F, std::optional<PageId> exclude) {
    std::optional<PageId> best;
    int64_t best_marg = 0, best_cost = 1;
    for (PageId p = 0; p < inst.n(); ++p) {
        if (F.contains(p) || !inst.removable(p)) continue;
        if (exclude && p == *exclude) continue;
        int64_t marg = marginal_g(inst.spec, inst.n(), F, p);
        if (marg <= 0) continue;
        // maximize marg/cost, ties by ascending id (the ascending scan keeps
        // the first of equal ratios)
        if (!best || marg * best_cost > best_marg * inst.cost(p)) {
            best = p;
            best_marg = marg;
            best_cost = inst.cost(p);
        }
    }
    if (!best) throw invariant_error("repair_tiebreak: no removable page with positive cover marginal");
    return *best;
}

RoundReport run_rounding(const Instance& inst, const RequestTrace& trace, uint64_t seed,
                         const FracTrajectory& traj, bool record_snapshots) {
    const uint32_t n = inst.n();
    const int64_t N = cover_demand(inst);
    RoundReport rep;
    rep.seed = seed;
    PageSet cache(n);
    std::vector<double> delta(n, 0.0);  // current missing-probability of each page

    for (uint32_t t = 1; t <= trace.length(); ++t) {
        PageId pt = trace.at(t);
        cache.insert(pt);  // fetch if missing; fetches are free
        delta[pt] = 0.0;

        const auto& zrow = traj.zprime[t - 1];
        for (PageId p = 0; p < n; ++p) {
            double zp = zrow[p];
            double prob = 0.0;
            if (zp > delta[p] && delta[p] < 1.0) prob = (zp - delta[p]) / (1.0 - delta[p]);
            double u = trial_uniform(seed, t, p);
            if (prob > 0 && u < prob && cache.contains(p) && inst.removable(p) && p != pt) {
                cache.erase(p);
                rep.evictions.push_back({t, p});
                rep.total_cost += inst.cost(p);
            }
            delta[p] = zp;
        }

        // feasibility repair: grow the out-of-cache cover until the demand
        // is met again
        PageSet outside = cache.complement();
        if (eval_g(inst, outside) < N) {
            ++rep.repair_steps;
            uint32_t safety = 0;
            while (eval_g(inst, outside) < N) {
                if (++safety > n) throw invariant_error("run_rounding: repair loop stuck");
                PageId victim = repair_tiebreak(inst, outside, pt);
                cache.erase(victim);
                outside.insert(victim);
                rep.evictions.push_back({t, victim});
                rep.total_cost += inst.cost(victim);
            }
        }
        if (eval_f(inst.spec, cache) > inst.k)
            throw invariant_error("run_rounding: cache infeasible after repair");
        if (record_snapshots) rep.cache_by_step.push_back(cache);
    }
    return rep;
}

RoundReport run_rounding(const Instance& inst, const RequestTrace& trace, uint64_t seed, FracConfig cfg) {
    FracTrajectory traj = compute_trajectory(inst, trace, cfg);
    return run_rounding(inst, trace, seed, traj, false);
}

}  // namespace nlpage
