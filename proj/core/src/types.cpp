#include "nlpage/types.hpp"

#include <unordered_map>

#include "nlpage/errors.hpp"

namespace nlpage {

PageId Instance::id_of(const std::string& name) const {
    for (PageId p = 0; p < n(); ++p)
        if (page_names[p] == name) return p;
    throw input_error("unknown page name: " + name);
}

void Instance::validate(uint32_t monotone_guard) const {
    if (page_names.empty()) throw input_error("instance has no pages");
    if (costs.size() != page_names.size()) throw input_error("costs/pages length mismatch");
    if (auto cnt = spec_page_count(spec); cnt && *cnt != n())
        throw input_error("spec page count disagrees with page list");
    {
        std::unordered_map<std::string, int> seen;
        for (const auto& name : page_names)
            if (++seen[name] > 1) throw input_error("duplicate page name: " + name);
    }
    for (PageId p = 0; p < n(); ++p) {
        if (costs[p].value < 1) throw input_error("page " + page_names[p] + " has cost < 1");
        PageSet single(n());
        single.insert(p);
        if (eval_f(spec, single) > k)
            throw input_error("page " + page_names[p] + " does not fit alone: f({p}) > k");
    }
    if (const auto* tb = std::get_if<ExplicitTableSpec>(&spec)) {
        if (tb->page_count > 20) throw input_error("explicit table capped at 20 pages");
        if (tb->values.size() != (size_t(1) << tb->page_count))
            throw input_error("explicit table needs 2^n values");
    }
    if (n() <= monotone_guard && !verify_monotone(spec, n(), monotone_guard))
        throw input_error("feasibility function is not monotone");
}

RequestIndex build_request_index(const Instance& inst, const RequestTrace& trace) {
    if (trace.requests.empty()) throw input_error("empty request trace");
    uint32_t n = inst.n();
    RequestIndex ri;
    ri.T = trace.length();
    ri.n_p.assign(n, 0);
    ri.r.assign(n, std::vector<uint32_t>(ri.T, 0));
    ri.request_times.assign(n, {});
    std::vector<uint32_t> count(n, 0);
    for (uint32_t t = 1; t <= ri.T; ++t) {
        PageId pt = trace.at(t);
        if (pt >= n) throw input_error("trace requests unknown page id");
        ++count[pt];
        ri.request_times[pt].push_back(t);
        for (PageId p = 0; p < n; ++p) ri.r[p][t - 1] = count[p];
    }
    ri.n_p = count;
    return ri;
}

std::pair<uint32_t, uint32_t> RequestIndex::interval(PageId p, uint32_t j) const {
    if (j == 0 || j > n_p[p]) throw input_error("interval: ordinal out of range");
    uint32_t first = request_times[p][j - 1];
    uint32_t last = (j < n_p[p]) ? request_times[p][j] - 1 : T;
    return {first, last};
}

}  // namespace nlpage
