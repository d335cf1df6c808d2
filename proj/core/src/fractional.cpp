#include "nlpage/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nlpage/errors.hpp"

namespace nlpage {

namespace {

// subsets of `domain` ordered by (cardinality, numeric value)
std::vector<uint32_t> submasks_by_cardinality(uint32_t domain) {
    std::vector<uint32_t> out;
    uint32_t m = domain;
    for (;;) {
        out.push_back(m);
        if (m == 0) break;
        m = (m - 1) & domain;
    }
    std::sort(out.begin(), out.end(), [](uint32_t a, uint32_t b) {
        int ca = __builtin_popcount(a), cb = __builtin_popcount(b);
        return ca != cb ? ca < cb : a < b;
    });
    return out;
}

// first violated cover constraint among sets containing every extent-1 page,
// by ascending cardinality; extents indexed by page
std::optional<uint32_t> violated_minimal_set(const MaskEvaluator& ev, const std::vector<double>& extent,
                                             PageId pt, int64_t N, double eps_feas) {
    uint32_t evicted = 0;
    for (PageId p = 0; p < ev.n(); ++p)
        if (extent[p] >= 1.0 - 1e-12) evicted |= uint32_t(1) << p;
    uint32_t domain = ev.full_mask() & ~evicted;
    for (uint32_t a : submasks_by_cardinality(domain)) {
        uint32_t S = evicted | a;
        int64_t demand = N - ev.g(S);
        if (demand <= 0) continue;
        double lhs = 0;
        for (PageId p = 0; p < ev.n(); ++p) {
            if (p == pt || ((S >> p) & 1)) continue;
            int64_t marg = ev.marginal_g(S, p);
            if (marg > 0) lhs += extent[p] * double(marg);
        }
        if (lhs < double(demand) - eps_feas) return S;
    }
    return std::nullopt;
}

struct Grower {
    PageId page;
    double y;          // current-interval tightness
    double cost;       // +inf for unremovable pages, which never grow
    int64_t marginal;  // g_Q(p)
};

double grown_x(const Grower& g, double delta, double mu, double log_mu1) {
    if (!std::isfinite(g.cost)) return 0.0;
    double v = (std::exp(log_mu1 / g.cost * (g.y + delta)) - 1.0) / mu;
    return std::min(1.0, v);
}

}  // namespace

std::optional<PageSet> separate_cover_brute_force(const FracSeparationView& view, double eps_feas) {
    const uint32_t n = view.inst.n();
    MaskEvaluator ev(view.inst.spec, n);
    std::vector<double> extent(n, 0.0);
    for (PageId p = 0; p < n; ++p) {
        uint32_t j = view.ri.r_of(p, view.t);
        extent[p] = (j == 0) ? 1.0 : view.x.at(p, j);
    }
    auto S = violated_minimal_set(ev, extent, view.pt, view.demand_N, eps_feas);
    if (!S) return std::nullopt;
    return PageSet::from_mask(*S, n);
}

FracReport run_fractional(const Instance& inst, const RequestTrace& trace, FracConfig cfg,
                          const CoverSeparator& separator) {
    const uint32_t n = inst.n();
    if (n > cfg.guard_n) throw guard_error("run_fractional: n exceeds guard");
    if (!g_is_submodular(inst.spec, n))
        throw input_error("run_fractional: cover function g is not submodular");

    FracReport rep;
    rep.ledger.kind = LpKind::cover;
    rep.demand = cover_demand(inst);
    rep.mu = mu(inst, cfg.guard_n);
    rep.steps = trace.length();
    if (rep.demand == 0) return rep;  // LP trivially feasible, nothing to raise

    RequestIndex ri = build_request_index(inst, trace);
    MaskEvaluator ev(inst.spec, n);
    const double mu_d = double(std::max<int64_t>(1, rep.mu));
    const double log_mu1 = std::log(mu_d + 1.0);
    const double half_tightness = std::log(mu_d / 2.0 + 1.0) / log_mu1;  // Y/c at x = 1/2
    const double z_gap = 1.0 / (4.0 * double(rep.demand) * mu_d);
    const PageSet all_pages = PageSet::full(n);

    std::vector<uint32_t> ordinal(n, 0);
    std::vector<double> y_now(n, 0.0);

    auto sync_companion = [&](PageId p) {
        double xv = rep.x.at(p, ordinal[p]);
        if (xv - rep.z.at(p, ordinal[p]) / 2.0 >= z_gap) rep.z.set(p, ordinal[p], 2.0 * xv);
        if (xv >= 0.5) {  // jump both to 1; the page becomes fully evicted
            rep.x.set(p, ordinal[p], 1.0);
            rep.z.set(p, ordinal[p], 1.0);
        }
    };

    for (uint32_t t = 1; t <= trace.length(); ++t) {
        PageId pt = trace.at(t);
        ++ordinal[pt];
        y_now[pt] = 0.0;

        uint32_t rounds = 0;
        for (;;) {
            if (++rounds > (1u << 20)) throw invariant_error("run_fractional: raise loop did not terminate");
            FracSeparationView view{inst, ri, rep.x, t, pt, rep.demand};
            std::optional<PageSet> found =
                separator ? separator(view) : separate_cover_brute_force(view, cfg.eps_feas);
            if (!found) break;

            uint32_t Q = uint32_t(found->to_mask());
            int64_t demand = rep.demand - ev.g(Q);
            if (demand <= 0) throw invariant_error("run_fractional: separator returned satisfied set");

            std::vector<Grower> growers;
            bool any_removable = false;
            for (PageId p = 0; p < n; ++p) {
                if (p == pt || ((Q >> p) & 1)) continue;
                if (ordinal[p] == 0 || rep.x.at(p, ordinal[p]) >= 1.0 - 1e-12)
                    throw invariant_error("run_fractional: separator set is not minimal for x");
                double c = inst.removable(p) ? double(inst.cost(p))
                                             : std::numeric_limits<double>::infinity();
                any_removable |= inst.removable(p);
                growers.push_back({p, y_now[p], c, ev.marginal_g(Q, p)});
            }
            if (!any_removable)
                throw invariant_error("run_fractional: violated constraint with no growable page");

            auto lhs_at = [&](double delta) {
                double s = 0;
                for (const auto& g : growers)
                    if (g.marginal > 0) s += grown_x(g, delta, mu_d, log_mu1) * double(g.marginal);
                return s;
            };

            // the first x = 1/2 crossing bounds the raise; x -> 1 cannot
            // precede it under the jump rule
            double jump_delta = std::numeric_limits<double>::infinity();
            for (const auto& g : growers) {
                if (!std::isfinite(g.cost)) continue;
                jump_delta = std::min(jump_delta, std::max(0.0, g.cost * half_tightness - g.y));
            }

            const double target = double(demand);
            double applied;
            bool at_jump = false;
            if (lhs_at(jump_delta) >= target) {
                // constraint satisfaction lands first: bisect to eps_event
                double lo = 0.0, hi = jump_delta;
                for (int it = 0; it < 200 && hi - lo > cfg.eps_event * std::max(1.0, hi); ++it) {
                    double mid = 0.5 * (lo + hi);
                    (lhs_at(mid) >= target ? hi : lo) = mid;
                }
                applied = hi;
                at_jump = applied >= jump_delta;
            } else {
                applied = jump_delta;  // a page reaches 1/2 and jumps to 1
                at_jump = true;
            }

            if (applied > 0) {
                DualEntry<double> entry;
                entry.t = t;
                entry.set = all_pages.minus(*found);  // keyed by the raised variable P\Q
                entry.amount = applied;
                rep.ledger.entries.push_back(entry);
                ++rep.raise_events;
            }
            for (const auto& g : growers) {
                // the pages defining the jump event cross 1/2 exactly now;
                // snap them past the threshold so rounding noise in the
                // recomputed x cannot stall the loop
                bool crossing = at_jump && std::isfinite(g.cost) &&
                                g.cost * half_tightness - g.y <= applied + 1e-12;
                if (applied > 0) {
                    y_now[g.page] += applied;
                    rep.tightness.add(g.page, ordinal[g.page], applied);
                    if (std::isfinite(g.cost))
                        rep.x.set(g.page, ordinal[g.page],
                                  crossing ? 0.5 : grown_x(g, applied, mu_d, log_mu1));
                } else if (crossing) {
                    rep.x.set(g.page, ordinal[g.page], 0.5);
                }
                sync_companion(g.page);
            }
        }

        if (cfg.on_step_end) cfg.on_step_end(FracStepView{t, ordinal, rep.x, rep.z});

        if (cfg.verify_each_step) {
            // the minimal constraints of the current time must hold for both
            // x and z once the raise loop exits
            std::vector<double> zext(n, 0.0), xext(n, 0.0);
            for (PageId p = 0; p < n; ++p) {
                uint32_t j = ri.r_of(p, t);
                zext[p] = (j == 0) ? 1.0 : rep.z.at(p, j);
                xext[p] = (j == 0) ? 1.0 : rep.x.at(p, j);
            }
            if (violated_minimal_set(ev, xext, pt, rep.demand, cfg.eps_feas))
                throw invariant_error("run_fractional: x violates a minimal constraint at t=" +
                                      std::to_string(t));
            if (violated_minimal_set(ev, zext, pt, rep.demand, cfg.eps_feas))
                throw invariant_error("run_fractional: z violates a minimal constraint at t=" +
                                      std::to_string(t));
        }
    }

    rep.cost_x = to_double(primal_cost(rep.x, inst));
    rep.cost_z = to_double(primal_cost(rep.z, inst));
    rep.dual = dual_value(rep.ledger, inst);
    return rep;
}

}  // namespace nlpage
