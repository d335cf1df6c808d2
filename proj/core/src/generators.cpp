#include "nlpage/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nlpage/errors.hpp"
#include "nlpage/params.hpp"

namespace nlpage {

namespace {

// thin wrappers over mt19937_64 so draws are reproducible across platforms
// (the std distributions are implementation-defined)
uint64_t draw_below(std::mt19937_64& rng, uint64_t bound) { return rng() % bound; }

uint32_t draw_range(std::mt19937_64& rng, uint32_t lo, uint32_t hi) {  // inclusive
    return lo + uint32_t(draw_below(rng, hi - lo + 1));
}

double draw_unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

// requests with optional Zipf locality over a shuffled page ranking
std::vector<PageId> draw_trace(std::mt19937_64& rng, const std::vector<PageId>& pool, uint32_t len,
                               double zipf) {
    std::vector<PageId> ranked = pool;
    for (size_t i = ranked.size(); i > 1; --i)
        std::swap(ranked[i - 1], ranked[draw_below(rng, i)]);
    std::vector<double> cdf(ranked.size());
    double acc = 0;
    for (size_t i = 0; i < ranked.size(); ++i) {
        acc += zipf > 0 ? 1.0 / std::pow(double(i + 1), zipf) : 1.0;
        cdf[i] = acc;
    }
    std::vector<PageId> out;
    out.reserve(len);
    for (uint32_t i = 0; i < len; ++i) {
        double u = draw_unit(rng) * acc;
        size_t idx = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (idx >= ranked.size()) idx = ranked.size() - 1;
        out.push_back(ranked[idx]);
    }
    return out;
}

std::vector<std::string> numbered_names(const std::string& prefix, uint32_t count, uint32_t from = 1) {
    std::vector<std::string> names;
    names.reserve(count);
    for (uint32_t i = 0; i < count; ++i) names.push_back(prefix + std::to_string(from + i));
    return names;
}

}  // namespace

GapInstance gen_gap_instance(uint32_t n, int64_t k) {
    if (k < 1 || int64_t(n) <= k) throw input_error("gen_gap_instance: need n > k >= 1");
    GapInstance out;
    out.instance.page_names = numbered_names("p", n);
    out.instance.costs.assign(n, Cost{1, false});
    out.instance.spec = CardinalitySpec{};
    out.instance.k = k;
    out.trace.requests.resize(n);
    for (uint32_t p = 0; p < n; ++p) out.trace.requests[p] = p;
    for (uint32_t p = 0; p < n; ++p) out.fractional_x.set(p, 1, Rat(1, k));
    return out;
}

Instance gen_mu_vs_ell(uint32_t n, int64_t k) {
    if (n < 1 || k < 1) throw input_error("gen_mu_vs_ell: need n, k >= 1");
    Instance inst;
    uint32_t y_count = uint32_t(k) + 1;
    inst.page_names = numbered_names("x", n);
    auto y_names = numbered_names("y", y_count);
    inst.page_names.insert(inst.page_names.end(), y_names.begin(), y_names.end());
    inst.costs.assign(n + y_count, Cost{1, false});
    LinearSpec lin;
    lin.sizes.assign(n, 0);
    lin.sizes.resize(n + y_count, 1);
    inst.spec = lin;
    inst.k = k;
    return inst;
}

Instance gen_restricted_hard(uint32_t n) {
    if (n < 1 || n > 19) throw input_error("gen_restricted_hard: need 1 <= n <= 19");
    Instance inst;
    inst.page_names = numbered_names("p", n + 1);
    inst.costs.assign(n + 1, Cost{1, false});
    ExplicitTableSpec table;
    table.page_count = n + 1;
    table.values.assign(size_t(1) << (n + 1), 0);
    for (uint32_t m = 0; m < table.values.size(); ++m)
        table.values[m] = uint32_t(__builtin_popcount(m)) <= n ? 0 : 1;
    inst.spec = table;
    inst.k = 0;
    return inst;
}

std::pair<Instance, RequestTrace> reduce_set_cover(const SetCoverInstance& sc) {
    if (sc.sets.size() != sc.set_costs.size())
        throw input_error("reduce_set_cover: sets/costs length mismatch");
    // every element needs a covering set: its page must fit alone in cache
    std::vector<bool> covered(sc.element_count, false);
    for (const auto& s : sc.sets)
        for (uint32_t e : s) {
            if (e >= sc.element_count) throw input_error("reduce_set_cover: element id out of range");
            covered[e] = true;
        }
    for (uint32_t e = 0; e < sc.element_count; ++e)
        if (!covered[e]) throw input_error("reduce_set_cover: element belongs to no set");
    for (uint32_t e : sc.requests)
        if (e >= sc.element_count) throw input_error("reduce_set_cover: requested element out of range");

    Instance inst;
    uint32_t nx = sc.element_count;
    uint32_t m = uint32_t(sc.sets.size());
    SetCoverDerivedSpec spec;
    spec.element_count = nx;
    // element pages first, then set pages
    inst.page_names = numbered_names("e", nx);
    for (uint32_t e = 0; e < nx; ++e) {
        SetCoverDerivedSpec::Role role;
        role.is_element = true;
        role.element = e;
        spec.roles.push_back(role);
        inst.costs.push_back(Cost{1, true});  // stands in for infinite cost
    }
    for (uint32_t s = 0; s < m; ++s) {
        SetCoverDerivedSpec::Role role;
        role.is_element = false;
        role.covers = sc.sets[s];
        for (uint32_t e : role.covers)
            if (e >= nx) throw input_error("reduce_set_cover: element id out of range");
        spec.roles.push_back(role);
        inst.page_names.push_back("S" + std::to_string(s + 1));
        if (sc.set_costs[s] < 1) throw input_error("reduce_set_cover: set costs must be >= 1");
        inst.costs.push_back(Cost{sc.set_costs[s], false});
    }
    inst.spec = spec;
    inst.k = 0;

    RequestTrace trace;
    for (uint32_t s = 0; s < m; ++s) trace.requests.push_back(nx + s);  // first all set pages
    for (uint32_t e : sc.requests) trace.requests.push_back(e);         // then the element requests
    return {inst, trace};
}

PageSet extract_cover(const Instance& inst, const PageSet& cache) {
    const auto* spec = std::get_if<SetCoverDerivedSpec>(&inst.spec);
    if (!spec) throw input_error("extract_cover: not a set-cover-derived instance");
    PageSet cover(inst.n());
    for (PageId p = 0; p < inst.n(); ++p)
        if (!spec->roles[p].is_element && !cache.contains(p)) cover.insert(p);
    return cover;
}

RequestTrace drive_adversary(const Instance& inst, uint32_t horizon, OnlineAlgorithm& alg) {
    RequestTrace trace;
    trace.requests.reserve(horizon);
    for (uint32_t t = 1; t <= horizon; ++t) {
        PageId missing = inst.n();
        for (PageId p = 0; p < inst.n(); ++p)
            if (!alg.cache().contains(p)) { missing = p; break; }
        if (missing == inst.n())
            throw invariant_error("adversary: algorithm holds every page feasibly");
        trace.requests.push_back(missing);
        alg.on_request(missing);
    }
    return trace;
}

AdversaryTranscript gen_adversary_det(uint32_t ell, uint32_t horizon, DetConfig cfg) {
    if (ell < 1) throw input_error("gen_adversary_det: need ell >= 1");
    AdversaryTranscript out;
    out.instance.page_names = numbered_names("p", ell + 1);
    out.instance.costs.assign(ell + 1, Cost{1, false});
    out.instance.spec = CardinalitySpec{};
    out.instance.k = ell;
    cfg.record_snapshots = false;
    DeterministicRun run(out.instance, cfg);
    out.trace = drive_adversary(out.instance, horizon, run);
    out.alg_cost = run.take_report().total_cost;
    return out;
}

RandomKind random_kind_from_name(const std::string& name) {
    if (name == "shared-atoms" || name == "shared_atoms") return RandomKind::shared_atoms;
    if (name == "hypergraph") return RandomKind::hypergraph;
    if (name == "set-cover" || name == "set_cover") return RandomKind::set_cover;
    if (name == "linear") return RandomKind::linear;
    throw input_error("unknown random instance kind: " + name);
}

const char* random_kind_name(RandomKind kind) {
    switch (kind) {
        case RandomKind::shared_atoms: return "shared-atoms";
        case RandomKind::hypergraph: return "hypergraph";
        case RandomKind::set_cover: return "set-cover";
        default: return "linear";
    }
}

SetCoverInstance gen_random_set_cover(uint64_t seed, const GenParams& params) {
    std::mt19937_64 rng(seed ^ 0x5e7c0ce2ULL);
    SetCoverInstance sc;
    sc.element_count = std::max<uint32_t>(1, params.elements);
    uint32_t m = std::max<uint32_t>(1, params.sets);
    for (uint32_t s = 0; s < m; ++s) {
        std::vector<uint32_t> elems;
        for (uint32_t e = 0; e < sc.element_count; ++e)
            if (draw_unit(rng) < 0.5) elems.push_back(e);
        if (elems.empty()) elems.push_back(uint32_t(draw_below(rng, sc.element_count)));
        sc.sets.push_back(elems);
        sc.set_costs.push_back(int64_t(draw_range(rng, 1, uint32_t(std::max<int64_t>(1, params.cost_max)))));
    }
    // every element joins some set so its page fits alone after the reduction
    for (uint32_t e = 0; e < sc.element_count; ++e) {
        bool covered = false;
        for (const auto& s : sc.sets)
            if (std::find(s.begin(), s.end(), e) != s.end()) { covered = true; break; }
        if (!covered) sc.sets[draw_below(rng, m)].push_back(e);
    }
    uint32_t len = std::max<uint32_t>(1, params.trace_len);
    std::vector<PageId> ids(sc.element_count);
    for (uint32_t e = 0; e < sc.element_count; ++e) ids[e] = e;
    for (PageId e : draw_trace(rng, ids, len, params.zipf)) sc.requests.push_back(e);
    return sc;
}

std::pair<Instance, RequestTrace> gen_random(RandomKind kind, uint32_t n, uint64_t seed,
                                             const GenParams& params) {
    std::mt19937_64 rng(seed);
    for (uint32_t attempt = 0; attempt < 64; ++attempt) {
        Instance inst;
        switch (kind) {
            case RandomKind::shared_atoms: {
                uint32_t atoms = params.atoms ? params.atoms : std::max<uint32_t>(2, n);
                SharedAtomsSpec spec;
                spec.atom_count = atoms;
                spec.page_atoms.resize(n);
                uint32_t biggest = 1;
                for (uint32_t p = 0; p < n; ++p) {
                    uint32_t cnt = draw_range(rng, 1, std::min(3u, atoms));
                    biggest = std::max(biggest, cnt);
                    for (uint32_t i = 0; i < cnt; ++i) {
                        uint32_t a = uint32_t(draw_below(rng, atoms));
                        auto& v = spec.page_atoms[p];
                        if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
                    }
                }
                inst.spec = spec;
                inst.k = params.k >= 0 ? params.k : draw_range(rng, biggest, biggest + 2);
                break;
            }
            case RandomKind::hypergraph: {
                HypergraphSpec spec;
                spec.page_count = n;
                uint32_t edges = params.edges ? params.edges : std::max<uint32_t>(1, n);
                for (uint32_t i = 0; i < edges && n >= 2; ++i) {
                    uint32_t sz = draw_range(rng, 2, std::min(3u, n));
                    std::vector<PageId> edge;
                    while (edge.size() < sz) {
                        PageId v = PageId(draw_below(rng, n));
                        if (std::find(edge.begin(), edge.end(), v) == edge.end()) edge.push_back(v);
                    }
                    std::sort(edge.begin(), edge.end());
                    spec.edges.push_back(edge);
                }
                inst.spec = spec;
                // f({p}) = 1 always; leave headroom below f(P)
                inst.k = params.k >= 0 ? params.k : draw_range(rng, 2, std::max(2u, n - 1));
                break;
            }
            case RandomKind::set_cover: {
                auto [rinst, rtrace] = reduce_set_cover(gen_random_set_cover(seed, params));
                rinst.validate();
                return {rinst, rtrace};
            }
            case RandomKind::linear: {
                LinearSpec spec;
                int64_t biggest = 1;
                for (uint32_t p = 0; p < n; ++p) {
                    int64_t sz = draw_range(rng, 1, 3);
                    biggest = std::max(biggest, sz);
                    spec.sizes.push_back(sz);
                }
                inst.spec = spec;
                inst.k = params.k >= 0 ? params.k : int64_t(draw_range(rng, uint32_t(biggest), uint32_t(biggest) + 3));
                break;
            }
        }
        inst.page_names = numbered_names("p", n);
        inst.costs.clear();
        for (uint32_t p = 0; p < n; ++p)
            inst.costs.push_back(Cost{int64_t(draw_range(rng, 1, uint32_t(std::max<int64_t>(1, params.cost_max)))), false});

        // every page must fit alone; otherwise redraw
        bool ok = true;
        for (PageId p = 0; p < n && ok; ++p) {
            PageSet single(n);
            single.insert(p);
            ok = eval_f(inst.spec, single) <= inst.k;
        }
        if (!ok) {
            if (params.k >= 0) throw input_error("gen_random: requested k violates f({p}) <= k");
            continue;
        }
        std::vector<PageId> pool(n);
        for (uint32_t p = 0; p < n; ++p) pool[p] = p;
        RequestTrace trace{draw_trace(rng, pool, std::max<uint32_t>(1, params.trace_len), params.zipf)};
        inst.validate();
        return {inst, trace};
    }
    throw input_error("gen_random: could not satisfy instance invariants after bounded retries");
}

}  // namespace nlpage
