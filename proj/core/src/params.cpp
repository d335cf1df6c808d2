#include "nlpage/params.hpp"

#include <algorithm>
#include <numeric>

#include "nlpage/errors.hpp"

namespace nlpage {

namespace {

// linear specs whose positive sizes are all equal reduce to counting: a
// minimally infeasible set holds cap+1 positive pages (zero-size pages can
// never appear in one), where cap = floor(k/s)
struct UniformLinear {
    int64_t size = 0;       // the common positive size
    uint32_t positive = 0;  // pages with that size
    uint32_t zero = 0;
};
std::optional<UniformLinear> uniform_linear(const Instance& inst) {
    const auto* lin = std::get_if<LinearSpec>(&inst.spec);
    if (!lin) return std::nullopt;
    UniformLinear u;
    for (int64_t s : lin->sizes) {
        if (s == 0) {
            ++u.zero;
        } else {
            if (u.size == 0) u.size = s;
            if (s != u.size) return std::nullopt;
            ++u.positive;
        }
    }
    return u;
}

void require_enumerable(const Instance& inst, uint32_t guard_n, const char* who) {
    if (inst.n() > guard_n)
        throw guard_error(std::string(who) + ": n = " + std::to_string(inst.n()) +
                          " exceeds brute-force guard " + std::to_string(guard_n));
}

}  // namespace

std::optional<int64_t> width_ell(const Instance& inst, uint32_t guard_n) {
    uint32_t n = inst.n();
    if (std::holds_alternative<CardinalitySpec>(inst.spec))
        return n > uint64_t(inst.k) ? std::optional<int64_t>(inst.k) : std::nullopt;
    if (auto u = uniform_linear(inst)) {
        int64_t cap = inst.k / u->size;  // positive pages fitting together
        if (int64_t(u->positive) > cap) return cap;
        return std::nullopt;  // all pages fit at once: no infeasible set
    }
    require_enumerable(inst, guard_n, "width_ell");
    MaskEvaluator ev(inst.spec, n);
    std::optional<int64_t> best;
    for (uint64_t mm = 1; mm <= ev.full_mask(); ++mm) {
        uint32_t m = uint32_t(mm);
        if (ev.f(m) <= inst.k) continue;
        bool minimal = true;
        for (uint32_t sub = m; sub; sub &= sub - 1) {
            uint32_t without = m & ~(sub & -sub);
            if (ev.f(without) > inst.k) { minimal = false; break; }
        }
        if (minimal) {
            int64_t cand = int64_t(__builtin_popcount(m)) - 1;
            if (!best || cand > *best) best = cand;
        }
    }
    return best;
}

int64_t mu(const Instance& inst, uint32_t guard_n) {
    uint32_t n = inst.n();
    if (std::holds_alternative<CardinalitySpec>(inst.spec))
        return std::min<int64_t>(n, inst.k);
    if (auto u = uniform_linear(inst)) {
        int64_t cap = inst.k / u->size;
        return int64_t(u->zero) + std::min<int64_t>(u->positive, cap);
    }
    require_enumerable(inst, guard_n, "mu");
    MaskEvaluator ev(inst.spec, n);
    int64_t best = 0;
    for (uint64_t m = 0; m <= ev.full_mask(); ++m)
        if (ev.f(uint32_t(m)) <= inst.k) best = std::max<int64_t>(best, __builtin_popcount(uint32_t(m)));
    return best;
}

int64_t cover_demand(const Instance& inst) {
    int64_t fP = eval_f(inst.spec, PageSet::full(inst.n()));
    return std::max<int64_t>(0, fP - inst.k);
}

double cost_spread(const Instance& inst) {
    int64_t lo = 0, hi = 0;
    for (PageId p = 0; p < inst.n(); ++p) {
        if (!inst.removable(p)) continue;
        int64_t c = inst.cost(p);
        if (lo == 0 || c < lo) lo = c;
        if (c > hi) hi = c;
    }
    return lo == 0 ? 1.0 : double(hi) / double(lo);
}

int64_t q_of(const Instance& inst, const PageSet& S, uint32_t guard_n) {
    if (eval_f(inst.spec, S) <= inst.k) return 0;
    if (std::holds_alternative<CardinalitySpec>(inst.spec))
        return std::max<int64_t>(0, int64_t(S.count()) - inst.k);
    auto members = S.to_vector();
    if (members.size() > guard_n)
        throw guard_error("q_of: |S| = " + std::to_string(members.size()) + " exceeds guard");
    // subsets of S by ascending cardinality; the first whose removal leaves a
    // feasible remainder wins
    uint32_t bits = uint32_t(members.size());
    int64_t best = bits;
    for (uint32_t rm = 1; rm < (uint32_t(1) << bits); ++rm) {
        int64_t card = __builtin_popcount(rm);
        if (card >= best) continue;
        PageSet rest = S;
        for (uint32_t i = 0; i < bits; ++i)
            if (rm & (uint32_t(1) << i)) rest.erase(members[i]);
        if (eval_f(inst.spec, rest) <= inst.k) best = card;
    }
    return best;
}

PageSet peel_min_infeasible(const Instance& inst, const PageSet& S, PageId keep, PeelMode mode,
                            uint32_t rotate, uint32_t guard_n) {
    if (!S.contains(keep)) throw input_error("peel_min_infeasible: keep not in S");
    if (eval_f(inst.spec, S) <= inst.k)
        throw invariant_error("peel_min_infeasible: S is feasible");

    if (mode == PeelMode::exact) {
        require_enumerable(inst, guard_n, "peel_min_infeasible(exact)");
        MaskEvaluator ev(inst.spec, inst.n());
        uint32_t smask = uint32_t(S.to_mask());
        uint32_t keep_bit = uint32_t(1) << keep;
        std::optional<uint32_t> best;
        for (uint32_t m = smask;; m = (m - 1) & smask) {
            if ((m & keep_bit) && ev.f(m) > inst.k) {
                bool minimal = true;
                for (uint32_t sub = m; sub; sub &= sub - 1)
                    if (ev.f(m & ~(sub & -sub)) > inst.k) { minimal = false; break; }
                if (minimal) {
                    if (!best || __builtin_popcount(m) < __builtin_popcount(*best) ||
                        (__builtin_popcount(m) == __builtin_popcount(*best) && m < *best))
                        best = m;
                }
            }
            if (m == 0) break;
        }
        if (!best) throw input_error("no minimally infeasible subset containing the requested page");
        return PageSet::from_mask(*best, inst.n());
    }

    // greedy: drop pages in (rotated) ascending id while the rest stays
    // infeasible; a page kept at its turn stays minimal later because
    // removing it from any smaller superset only shrinks f
    auto order = S.to_vector();
    if (rotate > 0 && !order.empty())
        std::rotate(order.begin(), order.begin() + (rotate % order.size()), order.end());
    PageSet Q = S;
    for (PageId p : order) {
        if (p == keep) continue;
        PageSet cand = Q.minus(p);
        if (eval_f(inst.spec, cand) > inst.k) Q = cand;
    }
    // the drops guarantee minimality for every page except keep
    if (eval_f(inst.spec, Q.minus(keep)) > inst.k)
        throw input_error("no minimally infeasible subset containing the requested page");
    return Q;
}

}  // namespace nlpage
