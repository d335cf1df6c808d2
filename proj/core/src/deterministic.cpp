#include "nlpage/deterministic.hpp"

#include <algorithm>

#include "nlpage/errors.hpp"

namespace nlpage {

DeterministicRun::DeterministicRun(const Instance& inst, DetConfig cfg)
    : inst_(inst), cfg_(cfg), ordinal_(inst.n(), 0), tight_now_(inst.n(), Rat(0)), cache_(inst.n()) {
    report_.ledger.kind = LpKind::relax;
}

void DeterministicRun::on_request(PageId p) {
    if (p >= inst_.n()) throw input_error("request for unknown page id");
    ++t_;
    ++ordinal_[p];
    tight_now_[p] = Rat(0);
    cache_.insert(p);

    uint32_t attempts = 0;
    while (eval_f(inst_.spec, cache_) > inst_.k) {
        PageSet Q = peel_min_infeasible(inst_, cache_, p, cfg_.peel, attempts, cfg_.exact_guard_n);

        // continuous raise collapses to one exact step: all removable pages
        // of Q-p_t gain tightness at unit rate, so the first eviction event
        // lands after exactly the minimum cost slack
        std::optional<Rat> delta;
        Q.for_each([&](PageId q) {
            if (q == p || !inst_.removable(q)) return;
            Rat slack = Rat(inst_.cost(q)) - tight_now_[q];
            if (!delta || slack < *delta) delta = slack;
        });
        if (!delta) {
            // every candidate is unremovable; retry the peel from a rotated
            // start before giving up
            if (++attempts >= std::max<uint32_t>(1, inst_.n()))
                throw input_error("cache infeasible but only unremovable pages are evictable");
            continue;
        }
        if (*delta <= Rat(0)) throw invariant_error("resident page already tight");

        DualEntry<Rat> entry;
        entry.t = t_;
        entry.set = Q;
        entry.amount = *delta;
        report_.ledger.entries.push_back(entry);
        Q.for_each([&](PageId q) {
            if (q == p) return;
            tight_now_[q] += *delta;
            report_.tightness.add(q, ordinal_[q], *delta);
        });

        Q.for_each([&](PageId q) {
            if (q == p || !inst_.removable(q)) return;
            if (tight_now_[q] == Rat(inst_.cost(q))) {
                report_.x.set(q, ordinal_[q], Rat(1));
                cache_.erase(q);
                report_.evictions.push_back({t_, q});
                report_.total_cost += Rat(inst_.cost(q));
            }
        });
        attempts = 0;
    }

    report_.steps = t_;
    if (cfg_.record_snapshots) report_.cache_by_step.push_back(cache_);
}

DetReport DeterministicRun::take_report() { return std::move(report_); }

DetReport run_deterministic(const Instance& inst, const RequestTrace& trace, DetConfig cfg) {
    DeterministicRun run(inst, cfg);
    for (uint32_t t = 1; t <= trace.length(); ++t) run.on_request(trace.at(t));
    return run.take_report();
}

bool competitive_certificate(const DetReport& report, int64_t ell, const Instance& inst) {
    Rat dual = dual_value(report.ledger, inst);
    return report.total_cost <= Rat(ell) * dual;
}

}  // namespace nlpage
