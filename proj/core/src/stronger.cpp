#include "nlpage/stronger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nlpage/errors.hpp"

namespace nlpage {

namespace {

// q(S) with memoization shared across a run (q depends only on S)
struct QCache {
    const MaskEvaluator& ev;
    int64_t k;
    std::vector<int64_t> memo;

    QCache(const MaskEvaluator& e, int64_t k_) : ev(e), k(k_), memo(size_t(1) << e.n(), -1) {}

    int64_t q(uint32_t mask) {
        int64_t& slot = memo[mask];
        if (slot >= 0) return slot;
        if (ev.f(mask) <= k) return slot = 0;
        int64_t best = __builtin_popcount(mask);
        for (uint32_t sub = mask; sub; sub &= sub - 1)
            best = std::min(best, 1 + q(mask & ~(sub & -sub)));
        return slot = best;
    }
};

std::vector<uint32_t> masks_by_cardinality(uint32_t n) {
    std::vector<uint32_t> order(size_t(1) << n);
    for (uint32_t m = 0; m < uint32_t(order.size()); ++m) order[m] = m;
    std::stable_sort(order.begin(), order.end(), [](uint32_t a, uint32_t b) {
        return __builtin_popcount(a) < __builtin_popcount(b);
    });
    return order;
}

// first violated q-constraint none of whose members (beyond p_t) is fully
// evicted, by ascending (cardinality, bitmask)
std::optional<std::pair<uint32_t, int64_t>> violated_q_set(const MaskEvaluator& ev, QCache& qc,
                                                           const std::vector<uint32_t>& order,
                                                           const std::vector<double>& extent, PageId pt,
                                                           int64_t k, double eps_feas) {
    uint32_t pt_bit = uint32_t(1) << pt;
    uint32_t eligible = pt_bit;
    for (PageId p = 0; p < ev.n(); ++p)
        if (p != pt && extent[p] < 1.0 - 1e-12) eligible |= uint32_t(1) << p;
    for (uint32_t m : order) {
        if (!(m & pt_bit) || (m & ~eligible)) continue;
        if (ev.f(m) <= k) continue;
        int64_t q = qc.q(m);
        double lhs = 0;
        for (uint32_t sub = m & ~pt_bit; sub; sub &= sub - 1)
            lhs += extent[__builtin_ctz(sub)];
        if (lhs < double(q) - eps_feas) return std::make_pair(m, q);
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<PageSet, int64_t>> find_violated_q_constraint(const StrongerSeparationView& view,
                                                                      double eps_feas) {
    const uint32_t n = view.inst.n();
    MaskEvaluator ev(view.inst.spec, n);
    QCache qc(ev, view.inst.k);
    std::vector<double> extent(n, 0.0);
    for (PageId p = 0; p < n; ++p) {
        uint32_t j = view.ri.r_of(p, view.t);
        extent[p] = (j == 0) ? 1.0 : view.x.at(p, j);
    }
    auto hit = violated_q_set(ev, qc, masks_by_cardinality(n), extent, view.pt, view.inst.k, eps_feas);
    if (!hit) return std::nullopt;
    return std::make_pair(PageSet::from_mask(hit->first, n), hit->second);
}

StrongerReport run_stronger(const Instance& inst, const RequestTrace& trace, StrongerConfig cfg) {
    const uint32_t n = inst.n();
    if (n > cfg.guard_n) throw guard_error("run_stronger: n exceeds guard");

    StrongerReport rep;
    rep.ledger.kind = LpKind::stronger;
    rep.mu = mu(inst, cfg.guard_n);
    rep.steps = trace.length();

    RequestIndex ri = build_request_index(inst, trace);
    MaskEvaluator ev(inst.spec, n);
    QCache qc(ev, inst.k);
    const std::vector<uint32_t> order = masks_by_cardinality(n);
    const double mu_d = double(std::max<int64_t>(1, rep.mu));
    // the analysis constant is ln(mu+1); ln(n+1) is the pseudocode variant
    const double log_base = std::log((cfg.growth_uses_page_count ? double(n) : mu_d) + 1.0);

    std::vector<uint32_t> ordinal(n, 0);
    std::vector<double> y_now(n, 0.0);
    std::vector<double> extent(n, 0.0);

    auto grown = [&](double cost, double y) {
        if (!std::isfinite(cost)) return 0.0;
        return std::min(1.0, (std::exp(log_base / cost * y) - 1.0) / mu_d);
    };
    auto refresh_extents = [&](uint32_t t) {
        for (PageId p = 0; p < n; ++p) {
            uint32_t j = ri.r_of(p, t);
            extent[p] = (j == 0) ? 1.0 : rep.x.at(p, j);
        }
    };

    for (uint32_t t = 1; t <= trace.length(); ++t) {
        PageId pt = trace.at(t);
        ++ordinal[pt];
        y_now[pt] = 0.0;

        uint32_t rounds = 0;
        for (;;) {
            if (++rounds > (1u << 20)) throw invariant_error("run_stronger: raise loop did not terminate");
            refresh_extents(t);
            auto found = violated_q_set(ev, qc, order, extent, pt, inst.k, cfg.eps_feas);
            if (!found) break;
            const uint32_t S = found->first;
            const int64_t q = found->second;
            if (q < 1) throw invariant_error("run_stronger: raised a constraint with q(S) < 1");

            struct Member {
                PageId page;
                double cost;
            };
            std::vector<Member> members;
            bool any_removable = false;
            for (uint32_t sub = S & ~(uint32_t(1) << pt); sub; sub &= sub - 1) {
                PageId p = PageId(__builtin_ctz(sub));
                double c = inst.removable(p) ? double(inst.cost(p))
                                             : std::numeric_limits<double>::infinity();
                any_removable |= inst.removable(p);
                members.push_back({p, c});
            }
            if (!any_removable)
                throw invariant_error("run_stronger: violated constraint with no growable page");

            auto lhs_at = [&](double delta) {
                double s = 0;
                for (const auto& m : members) s += grown(m.cost, y_now[m.page] + delta);
                return s;
            };
            // a page is fully evicted exactly at tightness c(p)
            double evict_delta = std::numeric_limits<double>::infinity();
            for (const auto& m : members)
                if (std::isfinite(m.cost))
                    evict_delta = std::min(evict_delta, std::max(0.0, m.cost - y_now[m.page]));

            const double target = double(q);
            double applied;
            bool at_evict = false;
            if (lhs_at(evict_delta) >= target) {
                double lo = 0.0, hi = evict_delta;
                for (int it = 0; it < 200 && hi - lo > cfg.eps_event * std::max(1.0, hi); ++it) {
                    double mid = 0.5 * (lo + hi);
                    (lhs_at(mid) >= target ? hi : lo) = mid;
                }
                applied = hi;
                at_evict = applied >= evict_delta;
            } else {
                applied = evict_delta;  // some page reaches extent 1 first
                at_evict = true;
            }

            if (applied > 0) {
                DualEntry<double> entry;
                entry.t = t;
                entry.set = PageSet::from_mask(S, n);
                entry.amount = applied;
                rep.ledger.entries.push_back(entry);
                ++rep.raise_events;
            }
            for (const auto& m : members) {
                // snap the event-defining pages to extent 1 so rounding noise
                // cannot stall the loop
                bool reaching = at_evict && std::isfinite(m.cost) &&
                                m.cost - y_now[m.page] <= applied + 1e-12;
                if (applied > 0) {
                    y_now[m.page] += applied;
                    rep.tightness.add(m.page, ordinal[m.page], applied);
                }
                if (std::isfinite(m.cost)) {
                    double xv = reaching ? 1.0 : grown(m.cost, y_now[m.page]);
                    if (xv >= 1.0 - 1e-12) xv = 1.0;
                    rep.x.set(m.page, ordinal[m.page], xv);
                }
            }
            if (applied <= 0 && !at_evict)
                throw invariant_error("run_stronger: zero raise on a violated constraint");
        }
    }

    rep.cost_x = to_double(primal_cost(rep.x, inst));
    rep.dual = dual_value(rep.ledger, inst);
    return rep;
}

}  // namespace nlpage
