#include "nlpage/offline.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "nlpage/errors.hpp"
#include "nlpage/params.hpp"

namespace nlpage {

namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

}  // namespace

/*
 * Backward DP over end-of-step cache states.
 *
 * Unremovable pages never leave, so they are forced residents once
 * requested; the DP state is the mask of removable resident pages. The
 * transition from state m at t-1 fetches p_t and keeps any feasible
 * m' subset of m+p_t containing p_t, paying for the dropped pages. Since
 * removable costs are additive, the per-step minimization is a subset-min
 * zeta transform: g_t(m) = c(m+p_t) + min_{m' subset of m+p_t} h(m'),
 * h(m') = g_{t+1}(m') - c(m').
 */
OptResult opt_dp(const Instance& inst, const RequestTrace& trace, uint32_t guard_n) {
    const uint32_t n = inst.n();
    if (n > guard_n)
        throw guard_error("opt_dp: n = " + std::to_string(n) + " exceeds guard " + std::to_string(guard_n));
    const uint32_t T = trace.length();
    if (T == 0) throw input_error("opt_dp: empty trace");

    // removable pages get mask bits, ascending page id for lexicographic ties
    std::vector<PageId> rem;
    std::vector<int32_t> bit_of(n, -1);
    for (PageId p = 0; p < n; ++p)
        if (inst.removable(p)) {
            bit_of[p] = int32_t(rem.size());
            rem.push_back(p);
        }
    const uint32_t nr = uint32_t(rem.size());
    const uint32_t words = uint32_t(1) << nr;

    std::vector<int64_t> cost_of(words, 0);
    for (uint32_t m = 1; m < words; ++m) {
        uint32_t low = m & (m - 1);
        cost_of[m] = cost_of[low] + inst.cost(rem[__builtin_ctz(m ^ low)]);
    }

    MaskEvaluator ev(inst.spec, n);
    // forced unremovable residents after each step, and removable pages seen
    std::vector<uint32_t> forced_after(T + 1, 0), seen_after(T + 1, 0);
    for (uint32_t t = 1; t <= T; ++t) {
        PageId pt = trace.at(t);
        forced_after[t] = forced_after[t - 1];
        seen_after[t] = seen_after[t - 1];
        if (bit_of[pt] < 0)
            forced_after[t] |= uint32_t(1) << pt;
        else
            seen_after[t] |= uint32_t(1) << bit_of[pt];
    }
    auto page_mask_of = [&](uint32_t m, uint32_t forced) {
        uint32_t full = forced;
        while (m) {
            full |= uint32_t(1) << rem[__builtin_ctz(m)];
            m &= m - 1;
        }
        return full;
    };

    // future[t][m]: optimal cost of steps t+1..T starting from end-of-t
    // state m (removable part); stored per step for reconstruction
    std::vector<std::vector<int64_t>> future(T + 1, std::vector<int64_t>(words, kInf));
    future[T].assign(words, 0);

    std::vector<int64_t> h(words);
    for (uint32_t t = T; t >= 1; --t) {
        // h over end-of-t states; subset-min zeta; then pull into future[t-1]
        PageId pt = trace.at(t);
        int32_t pt_bit = bit_of[pt];
        for (uint32_t m = 0; m < words; ++m) {
            bool valid = (m & ~seen_after[t]) == 0 && (pt_bit < 0 || (m >> pt_bit) & 1) &&
                         future[t][m] < kInf &&
                         ev.f(page_mask_of(m, forced_after[t])) <= inst.k;
            h[m] = valid ? future[t][m] - cost_of[m] : kInf;
        }
        for (uint32_t b = 0; b < nr; ++b)
            for (uint32_t m = 0; m < words; ++m)
                if ((m >> b) & 1) h[m] = std::min(h[m], h[m ^ (uint32_t(1) << b)]);
        auto& prev = future[t - 1];
        for (uint32_t m = 0; m < words; ++m) {
            if ((m & ~seen_after[t - 1]) != 0) continue;
            uint32_t arrived = pt_bit < 0 ? m : m | (uint32_t(1) << pt_bit);
            if (h[arrived] >= kInf) continue;
            prev[m] = cost_of[arrived] + h[arrived];
        }
    }

    if (future[0][0] >= kInf)
        throw input_error("opt_dp: trace cannot be served (unremovable pages block feasibility)");

    OptResult out;
    out.cost = future[0][0];
    out.method = "dp";
    // forward reconstruction, smallest end-of-step mask first: yields the
    // lexicographically smallest schedule among optima
    uint32_t m = 0;
    for (uint32_t t = 1; t <= T; ++t) {
        PageId pt = trace.at(t);
        int32_t pt_bit = bit_of[pt];
        uint32_t arrived = pt_bit < 0 ? m : m | (uint32_t(1) << pt_bit);
        int64_t want = future[t - 1][m];
        uint32_t chosen = words;
        for (uint32_t cand = 0; cand < words; ++cand) {
            if ((cand & ~arrived) != 0) continue;
            if (pt_bit >= 0 && !((cand >> pt_bit) & 1)) continue;
            if (future[t][cand] >= kInf) continue;
            if (ev.f(page_mask_of(cand, forced_after[t])) > inst.k) continue;
            if (cost_of[arrived] - cost_of[cand] + future[t][cand] == want) {
                chosen = cand;
                break;
            }
        }
        if (chosen == words) throw invariant_error("opt_dp: reconstruction failed");
        out.schedule.push_back(PageSet(n));
        uint32_t full = page_mask_of(chosen, forced_after[t]);
        for (PageId p = 0; p < n; ++p)
            if ((full >> p) & 1) out.schedule.back().insert(p);
        m = chosen;
    }
    return out;
}

OptResult opt_belady_unit(const Instance& inst, const RequestTrace& trace) {
    if (!std::holds_alternative<CardinalitySpec>(inst.spec))
        throw input_error("opt_belady_unit: cardinality feasibility required");
    for (PageId p = 0; p < inst.n(); ++p)
        if (inst.cost(p) != 1 || !inst.removable(p))
            throw input_error("opt_belady_unit: unit removable costs required");

    const uint32_t T = trace.length();
    // next use of each position, precomputed right to left
    std::vector<uint32_t> next_use(T + 1, 0);
    std::vector<uint32_t> upcoming(inst.n(), T + 1);
    for (uint32_t t = T; t >= 1; --t) {
        next_use[t] = upcoming[trace.at(t)];
        upcoming[trace.at(t)] = t;
    }

    OptResult out;
    out.method = "belady";
    PageSet cache(inst.n());
    std::vector<uint32_t> use_at(inst.n(), T + 1);
    for (uint32_t t = 1; t <= T; ++t) {
        PageId pt = trace.at(t);
        if (!cache.contains(pt)) {
            if (int64_t(cache.count()) >= inst.k) {
                // evict the resident whose next request is farthest away,
                // ties by ascending page id
                PageId victim = inst.n();
                uint32_t far = 0;
                cache.for_each([&](PageId p) {
                    if (use_at[p] > far) {
                        far = use_at[p];
                        victim = p;
                    }
                });
                cache.erase(victim);
                ++out.cost;
            }
            cache.insert(pt);
        }
        use_at[pt] = next_use[t];
        out.schedule.push_back(cache);
    }
    return out;
}

OptResult exact_opt(const Instance& inst, const RequestTrace& trace, uint32_t guard_n) {
    bool belady_exact = std::holds_alternative<CardinalitySpec>(inst.spec);
    if (belady_exact)
        for (PageId p = 0; p < inst.n(); ++p)
            if (inst.cost(p) != 1 || !inst.removable(p)) { belady_exact = false; break; }
    if (belady_exact && inst.n() > guard_n) return opt_belady_unit(inst, trace);
    if (inst.n() <= guard_n) return opt_dp(inst, trace, guard_n);
    throw guard_error("exact_opt: n exceeds guard and no exact fast path applies");
}

std::optional<Rat> cost_ratio(const Rat& alg_cost, int64_t opt_cost) {
    if (opt_cost < 0) throw input_error("cost_ratio: negative optimum");
    if (opt_cost == 0) {
        if (alg_cost == Rat(0)) return Rat(1);
        return std::nullopt;  // undefined
    }
    return alg_cost / Rat(opt_cost);
}

}  // namespace nlpage
