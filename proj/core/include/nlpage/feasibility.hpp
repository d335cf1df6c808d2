#ifndef NLPAGE_FEASIBILITY_HPP
#define NLPAGE_FEASIBILITY_HPP

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "nlpage/pageset.hpp"

namespace nlpage {

/*
 * Monotone feasibility functions f over page subsets. A cache content S is
 * admissible when f(S) <= k. Six shapes are supported:
 *
 *   cardinality     f(S) = |S|
 *   linear          f(S) = sum of per-page sizes
 *   shared atoms    f(S) = |union of per-page atom sets|      (submodular)
 *   hypergraph      f(S) = |S| + #hyperedges induced in S     (supermodular)
 *   set cover       f(A) = n_elements - g(P \ A), with g the coverage of
 *                   pages outside the cache                   (supermodular)
 *   explicit table  arbitrary values per subset, n <= 20, for tests
 */

struct CardinalitySpec {};

struct LinearSpec {
    std::vector<int64_t> sizes;  // per page, >= 0
};

struct SharedAtomsSpec {
    uint32_t atom_count = 0;
    std::vector<std::vector<uint32_t>> page_atoms;  // per page, atom ids
};

struct HypergraphSpec {
    uint32_t page_count = 0;
    std::vector<std::vector<PageId>> edges;  // each edge lists >= 2 distinct pages
};

struct SetCoverDerivedSpec {
    uint32_t element_count = 0;
    struct Role {
        bool is_element = false;
        uint32_t element = 0;              // valid when is_element
        std::vector<uint32_t> covers;      // valid when !is_element (set page)
    };
    std::vector<Role> roles;  // one per page
};

struct ExplicitTableSpec {
    uint32_t page_count = 0;
    std::vector<int64_t> values;  // 2^page_count entries, little-endian bitmask index
};

using FeasibilitySpec = std::variant<CardinalitySpec, LinearSpec, SharedAtomsSpec,
                                     HypergraphSpec, SetCoverDerivedSpec, ExplicitTableSpec>;

// number of pages the spec is defined over, when the shape pins it
std::optional<uint32_t> spec_page_count(const FeasibilitySpec& spec);
const char* spec_kind_name(const FeasibilitySpec& spec);

int64_t eval_f(const FeasibilitySpec& spec, const PageSet& S);

// cover function g(S) = f(P) - f(P \ S): the demand pages outside the cache
// must carry
int64_t eval_g(const FeasibilitySpec& spec, uint32_t n, const PageSet& S);

// g(S + p) - g(S); requires p not in S
int64_t marginal_g(const FeasibilitySpec& spec, uint32_t n, const PageSet& S, PageId p);

// exhaustive monotonicity check over all (S, S+p) pairs
bool verify_monotone(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n = 16);

// exhaustive second-difference checks, used on small instances in tests
bool verify_supermodular_f(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n = 12);
bool verify_submodular_f(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n = 12);
// whether g is submodular, i.e. f is supermodular; modular f counts too
bool g_is_submodular(const FeasibilitySpec& spec, uint32_t n, uint32_t guard_n = 12);

/*
 * Mask-based evaluator for the brute-force enumerations (separation oracles,
 * width/mu/q oracles, LP checkers, the offline DP). Precomputes per-page
 * structure so f on a uint32 page mask is cheap. Requires n <= 32.
 */
class MaskEvaluator {
public:
    MaskEvaluator(const FeasibilitySpec& spec, uint32_t n);

    uint32_t n() const { return n_; }
    int64_t f(uint32_t mask) const;
    int64_t f_all() const { return f_all_; }
    int64_t g(uint32_t mask) const { return f_all_ - f(full_ & ~mask); }
    int64_t marginal_g(uint32_t mask, PageId p) const {
        return g(mask | (uint32_t(1) << p)) - g(mask);
    }
    uint32_t full_mask() const { return full_; }

private:
    enum class Kind { cardinality, linear, shared_atoms, hypergraph, set_cover, table };
    Kind kind_;
    uint32_t n_ = 0;
    uint32_t full_ = 0;
    int64_t f_all_ = 0;
    std::vector<int64_t> sizes_;                       // linear
    uint32_t blocks_ = 0;                              // shared atoms / set cover
    std::vector<uint64_t> page_bits_;                  // per page x blocks_ atom/element words
    std::vector<std::pair<uint32_t, uint32_t>> edges_; // hypergraph (mask, popcount unused)
    const std::vector<int64_t>* table_ = nullptr;      // explicit table
};

}  // namespace nlpage

#endif
