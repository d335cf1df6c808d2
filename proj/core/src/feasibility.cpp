#include "nlpage/feasibility.hpp"

#include <algorithm>

#include "nlpage/errors.hpp"

namespace nlpage {

namespace {

// word count for an atom/element universe
uint32_t blocks_for(uint32_t universe) { return (universe + 63) / 64; }

struct FVisitor {
    const PageSet& S;

    int64_t operator()(const CardinalitySpec&) const { return S.count(); }

    int64_t operator()(const LinearSpec& spec) const {
        int64_t total = 0;
        S.for_each([&](PageId p) {
            if (p >= spec.sizes.size()) throw input_error("linear spec: page id out of range");
            total += spec.sizes[p];
        });
        return total;
    }

    int64_t operator()(const SharedAtomsSpec& spec) const {
        std::vector<uint64_t> acc(blocks_for(spec.atom_count), 0);
        S.for_each([&](PageId p) {
            if (p >= spec.page_atoms.size()) throw input_error("shared_atoms spec: page id out of range");
            for (uint32_t a : spec.page_atoms[p]) acc[a >> 6] |= uint64_t(1) << (a & 63);
        });
        int64_t total = 0;
        for (uint64_t w : acc) total += __builtin_popcountll(w);
        return total;
    }

    int64_t operator()(const HypergraphSpec& spec) const {
        int64_t total = S.count();
        for (const auto& edge : spec.edges) {
            bool inside = true;
            for (PageId v : edge)
                if (!S.contains(v)) { inside = false; break; }
            if (inside) ++total;
        }
        return total;
    }

    int64_t operator()(const SetCoverDerivedSpec& spec) const {
        // f(A) = n_elements - g(P \ A); coverage by out-of-cache pages
        std::vector<uint64_t> covered(blocks_for(spec.element_count), 0);
        for (PageId p = 0; p < spec.roles.size(); ++p) {
            if (S.contains(p)) continue;
            const auto& role = spec.roles[p];
            if (role.is_element) {
                covered[role.element >> 6] |= uint64_t(1) << (role.element & 63);
            } else {
                for (uint32_t e : role.covers) covered[e >> 6] |= uint64_t(1) << (e & 63);
            }
        }
        int64_t g = 0;
        for (uint64_t w : covered) g += __builtin_popcountll(w);
        return int64_t(spec.element_count) - g;
    }

    int64_t operator()(const ExplicitTableSpec& spec) const {
        uint64_t mask = S.to_mask();
        if (mask >= spec.values.size()) throw input_error("explicit table: subset out of range");
        return spec.values[mask];
    }
};

}  // namespace

std::optional<uint32_t> spec_page_count(const FeasibilitySpec& spec) {
    if (const auto* lin = std::get_if<LinearSpec>(&spec)) return uint32_t(lin->sizes.size());
    if (const auto* sa = std::get_if<SharedAtomsSpec>(&spec)) return uint32_t(sa->page_atoms.size());
    if (const auto* hg = std::get_if<HypergraphSpec>(&spec)) return hg->page_count;
    if (const auto* sc = std::get_if<SetCoverDerivedSpec>(&spec)) return uint32_t(sc->roles.size());
    if (const auto* tb = std::get_if<ExplicitTableSpec>(&spec)) return tb->page_count;
    return std::nullopt;
}

const char* spec_kind_name(const FeasibilitySpec& spec) {
    switch (spec.index()) {
        case 0: return "cardinality";
        case 1: return "linear";
        case 2: return "shared_atoms";
        case 3: return "hypergraph";
        case 4: return "set_cover_derived";
        default: return "explicit_table";
    }
}

int64_t eval_f(const FeasibilitySpec& spec, const PageSet& S) {
    return std::visit(FVisitor{S}, spec);
}

int64_t eval_g(const FeasibilitySpec& spec, uint32_t n, const PageSet& S) {
    PageSet all = PageSet::full(n);
    return eval_f(spec, all) - eval_f(spec, all.minus(S));
}

int64_t marginal_g(const FeasibilitySpec& spec, uint32_t n, const PageSet& S, PageId p) {
    if (S.contains(p)) throw input_error("marginal_g: page already in S");
    return eval_g(spec, n, S.plus(p)) - eval_g(spec, n, S);
}

bool verify_monotone(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n) {
    if (n > guard_n) throw guard_error("verify_monotone: n = " + std::to_string(n) + " exceeds guard");
    MaskEvaluator ev(spec, n);
    for (uint32_t m = 0; m < (uint32_t(1) << n); ++m) {
        int64_t base = ev.f(m);
        for (uint32_t p = 0; p < n; ++p) {
            if (m & (uint32_t(1) << p)) continue;
            if (ev.f(m | (uint32_t(1) << p)) < base) return false;
        }
    }
    return true;
}

namespace {

// second differences: supermodular f has non-decreasing marginals
bool check_marginals(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n, bool want_supermodular) {
    if (n > guard_n) throw guard_error("modularity check: n exceeds guard");
    MaskEvaluator ev(spec, n);
    for (uint32_t m = 0; m < (uint32_t(1) << n); ++m) {
        for (uint32_t p = 0; p < n; ++p) {
            if (m & (uint32_t(1) << p)) continue;
            int64_t marg_small = ev.f(m | (uint32_t(1) << p)) - ev.f(m);
            for (uint32_t q = 0; q < n; ++q) {
                if (q == p || (m & (uint32_t(1) << q))) continue;
                uint32_t mq = m | (uint32_t(1) << q);
                int64_t marg_big = ev.f(mq | (uint32_t(1) << p)) - ev.f(mq);
                if (want_supermodular ? marg_big < marg_small : marg_big > marg_small) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool verify_supermodular_f(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n) {
    return check_marginals(spec, n, guard_n, true);
}

bool verify_submodular_f(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n) {
    return check_marginals(spec, n, guard_n, false);
}

bool g_is_submodular(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n) {
    // g submodular <=> f supermodular; cardinality and linear f are modular
    switch (spec.index()) {
        case 0:
        case 1:
        case 3:
        case 4:
            return true;  // structurally modular or supermodular
        default:
            return verify_supermodular_f(spec, n, guard_n);
    }
}

MaskEvaluator::MaskEvaluator(const FeasibilitySpec& spec, uint32_t n) : n_(n) {
    if (n > 32) throw guard_error("MaskEvaluator: n > 32");
    full_ = n == 32 ? ~uint32_t(0) : (uint32_t(1) << n) - 1;
    if (auto cnt = spec_page_count(spec); cnt && *cnt != n)
        throw input_error("MaskEvaluator: spec page count mismatch");

    if (std::holds_alternative<CardinalitySpec>(spec)) {
        kind_ = Kind::cardinality;
        f_all_ = n;
    } else if (const auto* lin = std::get_if<LinearSpec>(&spec)) {
        kind_ = Kind::linear;
        sizes_ = lin->sizes;
        for (int64_t s : sizes_) f_all_ += s;
    } else if (const auto* sa = std::get_if<SharedAtomsSpec>(&spec)) {
        kind_ = Kind::shared_atoms;
        blocks_ = blocks_for(sa->atom_count);
        page_bits_.assign(size_t(n) * blocks_, 0);
        for (uint32_t p = 0; p < n; ++p)
            for (uint32_t a : sa->page_atoms[p])
                page_bits_[size_t(p) * blocks_ + (a >> 6)] |= uint64_t(1) << (a & 63);
        f_all_ = f(full_);
    } else if (const auto* hg = std::get_if<HypergraphSpec>(&spec)) {
        kind_ = Kind::hypergraph;
        for (const auto& edge : hg->edges) {
            uint32_t mask = 0;
            for (PageId v : edge) {
                if (v >= n) throw input_error("hypergraph: vertex out of range");
                mask |= uint32_t(1) << v;
            }
            edges_.push_back({mask, 0});
        }
        f_all_ = f(full_);
    } else if (const auto* sc = std::get_if<SetCoverDerivedSpec>(&spec)) {
        kind_ = Kind::set_cover;
        blocks_ = blocks_for(sc->element_count);
        page_bits_.assign(size_t(n) * blocks_, 0);
        for (uint32_t p = 0; p < n; ++p) {
            const auto& role = sc->roles[p];
            if (role.is_element) {
                page_bits_[size_t(p) * blocks_ + (role.element >> 6)] |= uint64_t(1) << (role.element & 63);
            } else {
                for (uint32_t e : role.covers)
                    page_bits_[size_t(p) * blocks_ + (e >> 6)] |= uint64_t(1) << (e & 63);
            }
        }
        f_all_ = int64_t(sc->element_count);  // g(empty out-set) = 0
    } else {
        kind_ = Kind::table;
        table_ = &std::get<ExplicitTableSpec>(spec).values;
        f_all_ = (*table_)[full_];
    }
}

int64_t MaskEvaluator::f(uint32_t mask) const {
    switch (kind_) {
        case Kind::cardinality:
            return __builtin_popcount(mask);
        case Kind::linear: {
            int64_t total = 0;
            uint32_t m = mask;
            while (m) {
                total += sizes_[__builtin_ctz(m)];
                m &= m - 1;
            }
            return total;
        }
        case Kind::shared_atoms: {
            uint64_t acc[8] = {0};  // atom universes cap at 512 in mask mode
            if (blocks_ > 8) throw guard_error("MaskEvaluator: atom universe too large");
            uint32_t m = mask;
            while (m) {
                uint32_t p = __builtin_ctz(m);
                const uint64_t* bits = &page_bits_[size_t(p) * blocks_];
                for (uint32_t b = 0; b < blocks_; ++b) acc[b] |= bits[b];
                m &= m - 1;
            }
            int64_t total = 0;
            for (uint32_t b = 0; b < blocks_; ++b) total += __builtin_popcountll(acc[b]);
            return total;
        }
        case Kind::hypergraph: {
            int64_t total = __builtin_popcount(mask);
            for (const auto& [emask, unused] : edges_)
                if ((emask & mask) == emask) ++total;
            return total;
        }
        case Kind::set_cover: {
            uint64_t acc[8] = {0};
            if (blocks_ > 8) throw guard_error("MaskEvaluator: element universe too large");
            uint32_t out = full_ & ~mask;
            while (out) {
                uint32_t p = __builtin_ctz(out);
                const uint64_t* bits = &page_bits_[size_t(p) * blocks_];
                for (uint32_t b = 0; b < blocks_; ++b) acc[b] |= bits[b];
                out &= out - 1;
            }
            int64_t g = 0;
            for (uint32_t b = 0; b < blocks_; ++b) g += __builtin_popcountll(acc[b]);
            return f_all_ - g;
        }
        case Kind::table:
            return (*table_)[mask];
    }
    return 0;
}

}  // namespace nlpage
