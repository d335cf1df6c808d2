#ifndef NLPAGE_LP_HPP
#define NLPAGE_LP_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "nlpage/params.hpp"
#include "nlpage/rational.hpp"
#include "nlpage/types.hpp"

namespace nlpage {

/*
 * Three covering LPs share the same variable layout x_p(j), one variable per
 * page and request ordinal:
 *
 *   relax     sum_{p in S-p_t} x_p(r(p,t)) >= 1          for infeasible S
 *             containing p_t
 *   cover     sum_{p != p_t} x_p(r(p,t)) * g_S(p) >= N - g(S)  for all S
 *             (supermodular paging; g submodular)
 *   stronger  sum_{p in S-p_t} x_p(r(p,t)) >= q(S)       for infeasible S
 *             containing p_t
 *
 * The dual ledger records every increment of a dual variable y_t(S) so that
 * accumulated tightness Y_p(j) can be replayed from scratch. For the cover
 * LP the raised variable is keyed by the complement P\Q of the violated
 * constraint's set Q: pages inside the stored set are the ones whose
 * tightness grows, and the objective weight of the entry is the violated
 * constraint's demand N - g(Q).
 */

enum class LpKind { relax, cover, stronger };

const char* lp_kind_name(LpKind k);
LpKind lp_kind_from_name(const std::string& name);

template <typename V>
class PrimalVector {
public:
    using value_type = V;

    V at(PageId p, uint32_t j) const {
        auto it = values_.find({p, j});
        return it == values_.end() ? V(0) : it->second;
    }
    void set(PageId p, uint32_t j, V v) {
        if (j == 0) throw input_error("x_p(0) is pinned to zero");
        values_[{p, j}] = v;
    }
    const std::map<std::pair<PageId, uint32_t>, V>& entries() const { return values_; }
    bool empty() const { return values_.empty(); }

private:
    std::map<std::pair<PageId, uint32_t>, V> values_;
};

// Extent to which page p is out of the cache at time t as seen by the LP
// constraints: pages never requested by t cannot be resident, so they count
// as fully evicted even though no variable exists (and no cost is paid).
template <typename V>
V eviction_extent(const PrimalVector<V>& x, const RequestIndex& ri, PageId p, uint32_t t) {
    uint32_t j = ri.r_of(p, t);
    if (j == 0) return V(1);
    return x.at(p, j);
}

template <typename V>
struct DualEntry {
    uint32_t t = 0;
    PageSet set;
    V amount{0};
};

template <typename V>
struct DualLedger {
    LpKind kind = LpKind::relax;
    std::vector<DualEntry<V>> entries;
};

template <typename V>
class TightnessTable {
public:
    V at(PageId p, uint32_t j) const {
        auto it = y_.find({p, j});
        return it == y_.end() ? V(0) : it->second;
    }
    void add(PageId p, uint32_t j, V delta) { y_[{p, j}] += delta; }
    const std::map<std::pair<PageId, uint32_t>, V>& entries() const { return y_; }

private:
    std::map<std::pair<PageId, uint32_t>, V> y_;
};

template <typename V>
V primal_cost(const PrimalVector<V>& x, const Instance& inst) {
    V total(0);
    for (const auto& [key, v] : x.entries()) total += v * V(inst.cost(key.first));
    return total;
}

// the pages whose dual constraints an entry (t, S, amount) feeds: members of
// S other than p_t that have been requested by time t
template <typename V, typename F>
void for_each_charged_page(const DualEntry<V>& e, const RequestTrace& trace, const RequestIndex& ri, F f) {
    PageId pt = trace.at(e.t);
    e.set.for_each([&](PageId p) {
        if (p == pt) return;
        uint32_t j = ri.r_of(p, e.t);
        if (j >= 1) f(p, j);
    });
}

template <typename V>
TightnessTable<V> recompute_tightness(const DualLedger<V>& ledger, const RequestTrace& trace,
                                      const RequestIndex& ri) {
    TightnessTable<V> table;
    for (const auto& e : ledger.entries)
        for_each_charged_page(e, trace, ri, [&](PageId p, uint32_t j) { table.add(p, j, e.amount); });
    return table;
}

// dual objective value; for the cover LP the weight is the demand of the
// violated constraint, i.e. N - g on the complement of the stored set
template <typename V>
V dual_value(const DualLedger<V>& ledger, const Instance& inst) {
    V total(0);
    switch (ledger.kind) {
        case LpKind::relax:
            for (const auto& e : ledger.entries) total += e.amount;
            break;
        case LpKind::cover: {
            int64_t N = cover_demand(inst);
            for (const auto& e : ledger.entries) {
                int64_t w = N - eval_g(inst, e.set.complement());
                total += e.amount * V(w);
            }
            break;
        }
        case LpKind::stronger:
            for (const auto& e : ledger.entries)
                total += e.amount * V(q_of(inst, e.set, 20));
            break;
    }
    return total;
}

struct LpViolation {
    uint32_t t = 0;
    PageSet set;
    double lhs = 0;
    double rhs = 0;
    std::string what;
};

/*
 * Feasibility checkers. All enumerate subsets time-major, then by ascending
 * bitmask, and return the first violation. Exact comparison for rational
 * vectors, tolerance `tol` for doubles.
 */

template <typename V>
inline bool lp_less(const V& a, const V& b, double tol) {
    if constexpr (std::is_same_v<V, Rat>) {
        (void)tol;
        return a < b;
    } else {
        return a < b - tol;
    }
}

// LP `relax`: it suffices to check S infeasible with p_t in S such that every
// S-q (q != p_t) is feasible; constraints for supersets are dominated.
// Sets with never-requested members hold trivially (their extent is 1), so
// enumeration stays inside the requested pages. A sorted-prefix fast path
// covers cardinality instances of any size.
template <typename V>
std::optional<LpViolation> check_primal_relax(const PrimalVector<V>& x, const Instance& inst,
                                              const RequestTrace& trace, double tol = 0.0,
                                              uint32_t guard_n = 16);

// LP `cover`, minimal-constraint family: all S containing every page whose
// extent is 1 (Lemma-style restriction; implies full feasibility when g is
// submodular). With exhaustive=true checks every S instead.
template <typename V>
std::optional<LpViolation> check_primal_cover(const PrimalVector<V>& x, const Instance& inst,
                                              const RequestTrace& trace, double tol = 1e-9,
                                              bool exhaustive = false, uint32_t guard_n = 16);

// LP `stronger`: every infeasible S containing p_t must lose q(S) pages
template <typename V>
std::optional<LpViolation> check_primal_stronger(const PrimalVector<V>& x, const Instance& inst,
                                                 const RequestTrace& trace, double tol = 1e-9,
                                                 uint32_t guard_n = 14);

// replays the ledger and compares every Y_p(j) against c(p); unremovable
// pages have infinite cost and cannot violate
template <typename V>
std::optional<LpViolation> check_dual_feasible(const DualLedger<V>& ledger, const Instance& inst,
                                               const RequestTrace& trace, double tol = 0.0) {
    RequestIndex ri = build_request_index(inst, trace);
    TightnessTable<V> table = recompute_tightness(ledger, trace, ri);
    for (const auto& [key, y] : table.entries()) {
        auto [p, j] = key;
        if (!inst.removable(p)) continue;
        if (lp_less(V(inst.cost(p)), y, tol)) {
            LpViolation v;
            v.t = j;
            v.set = PageSet(inst.n());
            v.set.insert(p);
            v.lhs = to_double(y);
            v.rhs = double(inst.cost(p));
            v.what = "dual constraint Y_p(j) <= c(p) violated at page " + inst.name(p) +
                     ", ordinal " + std::to_string(j);
            return v;
        }
    }
    return std::nullopt;
}

struct WeakDualityReport {
    bool ok = true;
    double dual = 0;
    double primal = 0;
    double opt = 0;
    std::string note;
};

// dual <= primal when x is feasible for the same LP, and dual <= OPT always
// (for the relax and stronger LPs, whose printed duals are true LP duals)
template <typename V>
WeakDualityReport weak_duality_report(const V& dual, const V& primal, bool primal_feasible,
                                      std::optional<int64_t> opt_cost, double tol = 0.0) {
    WeakDualityReport r;
    r.dual = to_double(dual);
    r.primal = to_double(primal);
    if (primal_feasible && lp_less(primal, dual, tol)) {
        r.ok = false;
        r.note = "dual value exceeds feasible primal cost";
    }
    if (opt_cost) {
        r.opt = double(*opt_cost);
        if (lp_less(V(*opt_cost), dual, tol)) {
            r.ok = false;
            r.note = "dual value exceeds offline optimum";
        }
    }
    return r;
}

}  // namespace nlpage

#endif
