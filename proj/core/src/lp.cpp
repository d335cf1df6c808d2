#include "nlpage/lp.hpp"

#include <algorithm>
#include <vector>

#include "nlpage/errors.hpp"

namespace nlpage {

const char* lp_kind_name(LpKind k) {
    switch (k) {
        case LpKind::relax: return "relax";
        case LpKind::cover: return "cover";
        default: return "stronger";
    }
}

LpKind lp_kind_from_name(const std::string& name) {
    if (name == "relax") return LpKind::relax;
    if (name == "cover") return LpKind::cover;
    if (name == "stronger") return LpKind::stronger;
    throw input_error("unknown LP kind: " + name);
}

namespace {

template <typename V>
bool is_fully_evicted(const V& v, double tol) {
    if constexpr (std::is_same_v<V, Rat>) {
        (void)tol;
        return v >= V(1);
    } else {
        return v >= 1.0 - tol;
    }
}

// q(S) over masks with the recursion q(S) = 1 + min_p q(S-p) when infeasible
int64_t q_mask(const MaskEvaluator& ev, int64_t k, uint32_t mask, std::vector<int64_t>& memo) {
    int64_t& slot = memo[mask];
    if (slot >= 0) return slot;
    if (ev.f(mask) <= k) return slot = 0;
    int64_t best = __builtin_popcount(mask);
    for (uint32_t sub = mask; sub; sub &= sub - 1) {
        uint32_t without = mask & ~(sub & -sub);
        best = std::min(best, 1 + q_mask(ev, k, without, memo));
    }
    return slot = best;
}

// sorted-prefix check for cardinality instances of any size: the binding
// constraints at time t are the (k+1)-subsets of requested pages containing
// p_t, and their minimum left side is the sum of the k smallest extents
template <typename V>
std::optional<LpViolation> relax_cardinality_fast(const PrimalVector<V>& x, const Instance& inst,
                                                  const RequestTrace& trace, const RequestIndex& ri,
                                                  double tol) {
    for (uint32_t t = 1; t <= trace.length(); ++t) {
        PageId pt = trace.at(t);
        std::vector<std::pair<V, PageId>> extents;
        for (PageId p = 0; p < inst.n(); ++p) {
            if (p == pt) continue;
            uint32_t j = ri.r_of(p, t);
            if (j >= 1) extents.push_back({x.at(p, j), p});
        }
        if (int64_t(extents.size()) < inst.k) continue;  // no infeasible requested subset
        std::sort(extents.begin(), extents.end());
        V lhs(0);
        for (int64_t i = 0; i < inst.k; ++i) lhs += extents[i].first;
        if (lp_less(lhs, V(1), tol)) {
            LpViolation v;
            v.t = t;
            v.set = PageSet(inst.n());
            v.set.insert(pt);
            for (int64_t i = 0; i < inst.k; ++i) v.set.insert(extents[i].second);
            v.lhs = to_double(lhs);
            v.rhs = 1;
            v.what = "relax constraint violated";
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace

template <typename V>
std::optional<LpViolation> check_primal_relax(const PrimalVector<V>& x, const Instance& inst,
                                              const RequestTrace& trace, double tol, uint32_t guard_n) {
    RequestIndex ri = build_request_index(inst, trace);
    if (inst.n() > guard_n) {
        if (std::holds_alternative<CardinalitySpec>(inst.spec))
            return relax_cardinality_fast(x, inst, trace, ri, tol);
        throw guard_error("check_primal_relax: n exceeds guard and no fast path applies");
    }
    MaskEvaluator ev(inst.spec, inst.n());
    for (uint32_t t = 1; t <= trace.length(); ++t) {
        PageId pt = trace.at(t);
        uint32_t pt_bit = uint32_t(1) << pt;
        uint32_t req = 0;
        for (PageId p = 0; p < inst.n(); ++p)
            if (ri.r_of(p, t) >= 1) req |= uint32_t(1) << p;
        // sets with never-requested members hold trivially (extent 1 covers
        // the unit demand), so only S inside the requested pages matter;
        // among those it suffices to check S minimal in the family
        // {S infeasible, p_t in S}
        for (uint64_t mm = 0; mm <= ev.full_mask(); ++mm) {
            uint32_t m = uint32_t(mm);
            if ((m & req) != m || !(m & pt_bit)) continue;
            if (ev.f(m) <= inst.k) continue;
            bool minimal = true;
            for (uint32_t sub = m & ~pt_bit; sub; sub &= sub - 1)
                if (ev.f(m & ~(sub & -sub)) > inst.k) { minimal = false; break; }
            if (!minimal) continue;
            V lhs(0);
            for (uint32_t sub = m & ~pt_bit; sub; sub &= sub - 1)
                lhs += x.at(PageId(__builtin_ctz(sub)), ri.r_of(PageId(__builtin_ctz(sub)), t));
            if (lp_less(lhs, V(1), tol)) {
                LpViolation v;
                v.t = t;
                v.set = PageSet::from_mask(m, inst.n());
                v.lhs = to_double(lhs);
                v.rhs = 1;
                v.what = "relax constraint violated";
                return v;
            }
        }
    }
    return std::nullopt;
}

template <typename V>
std::optional<LpViolation> check_primal_cover(const PrimalVector<V>& x, const Instance& inst,
                                              const RequestTrace& trace, double tol, bool exhaustive,
                                              uint32_t guard_n) {
    if (inst.n() > guard_n) throw guard_error("check_primal_cover: n exceeds guard");
    RequestIndex ri = build_request_index(inst, trace);
    MaskEvaluator ev(inst.spec, inst.n());
    int64_t N = std::max<int64_t>(0, ev.f_all() - inst.k);
    for (uint32_t t = 1; t <= trace.length(); ++t) {
        PageId pt = trace.at(t);
        uint32_t evicted = 0;  // pages of extent 1, incl. never-requested
        std::vector<V> extent(inst.n(), V(0));
        for (PageId p = 0; p < inst.n(); ++p) {
            extent[p] = eviction_extent(x, ri, p, t);
            if (is_fully_evicted(extent[p], 1e-12)) evicted |= uint32_t(1) << p;
        }
        for (uint64_t mm = 0; mm <= ev.full_mask(); ++mm) {
            uint32_t m = uint32_t(mm);
            if (!exhaustive && (m & evicted) != evicted) continue;
            int64_t rhs = N - ev.g(m);
            if (rhs <= 0) continue;
            V lhs(0);
            for (PageId p = 0; p < inst.n(); ++p) {
                if (p == pt || (m & (uint32_t(1) << p))) continue;
                int64_t marg = ev.marginal_g(m, p);
                if (marg > 0) lhs += extent[p] * V(marg);
            }
            if (lp_less(lhs, V(rhs), tol)) {
                LpViolation v;
                v.t = t;
                v.set = PageSet::from_mask(m, inst.n());
                v.lhs = to_double(lhs);
                v.rhs = double(rhs);
                v.what = "cover constraint violated";
                return v;
            }
        }
    }
    return std::nullopt;
}

template <typename V>
std::optional<LpViolation> check_primal_stronger(const PrimalVector<V>& x, const Instance& inst,
                                                 const RequestTrace& trace, double tol, uint32_t guard_n) {
    if (inst.n() > guard_n) throw guard_error("check_primal_stronger: n exceeds guard");
    RequestIndex ri = build_request_index(inst, trace);
    MaskEvaluator ev(inst.spec, inst.n());
    std::vector<int64_t> qmemo(size_t(1) << inst.n(), -1);
    for (uint32_t t = 1; t <= trace.length(); ++t) {
        PageId pt = trace.at(t);
        uint32_t pt_bit = uint32_t(1) << pt;
        std::vector<V> extent(inst.n(), V(0));
        for (PageId p = 0; p < inst.n(); ++p) extent[p] = eviction_extent(x, ri, p, t);
        for (uint64_t mm = 0; mm <= ev.full_mask(); ++mm) {
            uint32_t m = uint32_t(mm);
            if (!(m & pt_bit)) continue;
            if (ev.f(m) <= inst.k) continue;
            int64_t q = q_mask(ev, inst.k, m, qmemo);
            V lhs(0);
            for (uint32_t sub = m & ~pt_bit; sub; sub &= sub - 1)
                lhs += extent[__builtin_ctz(sub)];
            if (lp_less(lhs, V(q), tol)) {
                LpViolation v;
                v.t = t;
                v.set = PageSet::from_mask(m, inst.n());
                v.lhs = to_double(lhs);
                v.rhs = double(q);
                v.what = "stronger constraint violated";
                return v;
            }
        }
    }
    return std::nullopt;
}

template std::optional<LpViolation> check_primal_relax<Rat>(const PrimalVector<Rat>&, const Instance&,
                                                            const RequestTrace&, double, uint32_t);
template std::optional<LpViolation> check_primal_relax<double>(const PrimalVector<double>&, const Instance&,
                                                               const RequestTrace&, double, uint32_t);
template std::optional<LpViolation> check_primal_cover<Rat>(const PrimalVector<Rat>&, const Instance&,
                                                            const RequestTrace&, double, bool, uint32_t);
template std::optional<LpViolation> check_primal_cover<double>(const PrimalVector<double>&, const Instance&,
                                                               const RequestTrace&, double, bool, uint32_t);
template std::optional<LpViolation> check_primal_stronger<Rat>(const PrimalVector<Rat>&, const Instance&,
                                                               const RequestTrace&, double, uint32_t);
template std::optional<LpViolation> check_primal_stronger<double>(const PrimalVector<double>&, const Instance&,
                                                                  const RequestTrace&, double, uint32_t);

}  // namespace nlpage
