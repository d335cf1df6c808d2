#ifndef NLPAGE_PAGESET_HPP
#define NLPAGE_PAGESET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nlpage/errors.hpp"

namespace nlpage {

using PageId = uint32_t;

/*
 * A set of pages out of a fixed universe of n pages, stored as a bit vector.
 * Universes beyond 64 pages are supported; the uint64 mask accessors are for
 * the brute-force paths which all guard n <= 20 anyway.
 */
class PageSet {
public:
    PageSet() = default;
    explicit PageSet(uint32_t universe)
        : nbits_(universe), words_((universe + 63) / 64, 0) {}

    static PageSet full(uint32_t universe) {
        PageSet s(universe);
        for (uint32_t p = 0; p < universe; ++p) s.insert(p);
        return s;
    }
    static PageSet from_mask(uint64_t mask, uint32_t universe) {
        if (universe > 64) throw input_error("PageSet::from_mask: universe > 64");
        PageSet s(universe);
        if (universe > 0) s.words_[0] = mask;
        return s;
    }

    uint32_t universe() const { return nbits_; }

    bool contains(PageId p) const {
        return p < nbits_ && (words_[p >> 6] >> (p & 63)) & 1;
    }
    void insert(PageId p) {
        check(p);
        words_[p >> 6] |= uint64_t(1) << (p & 63);
    }
    void erase(PageId p) {
        check(p);
        words_[p >> 6] &= ~(uint64_t(1) << (p & 63));
    }

    uint32_t count() const {
        uint32_t c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : words_) if (w) return false;
        return true;
    }

    bool is_subset_of(const PageSet& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    PageSet operator|(const PageSet& o) const { return merge(o, [](uint64_t a, uint64_t b) { return a | b; }); }
    PageSet operator&(const PageSet& o) const { return merge(o, [](uint64_t a, uint64_t b) { return a & b; }); }
    PageSet minus(const PageSet& o) const { return merge(o, [](uint64_t a, uint64_t b) { return a & ~b; }); }
    PageSet minus(PageId p) const {
        PageSet s(*this);
        s.erase(p);
        return s;
    }
    PageSet plus(PageId p) const {
        PageSet s(*this);
        s.insert(p);
        return s;
    }
    PageSet complement() const {
        PageSet s(nbits_);
        for (size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
        s.trim();
        return s;
    }

    bool operator==(const PageSet& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }
    bool operator!=(const PageSet& o) const { return !(*this == o); }
    // numeric order of the little-endian bit pattern; ties in enumeration
    // break by ascending page id everywhere, and this order matches that
    bool operator<(const PageSet& o) const {
        if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
        for (size_t i = words_.size(); i-- > 0;)
            if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
        return false;
    }

    uint64_t to_mask() const {
        if (nbits_ > 64) throw input_error("PageSet::to_mask: universe > 64");
        return words_.empty() ? 0 : words_[0];
    }

    std::vector<PageId> to_vector() const {
        std::vector<PageId> v;
        v.reserve(count());
        for_each([&](PageId p) { v.push_back(p); });
        return v;
    }

    template <typename F>
    void for_each(F f) const {  // ascending page id
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w) {
                uint32_t b = __builtin_ctzll(w);
                f(PageId(i * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out = "0x";
        bool started = false;
        for (size_t i = words_.size(); i-- > 0;) {
            for (int shift = 60; shift >= 0; shift -= 4) {
                unsigned d = (words_[i] >> shift) & 0xf;
                if (d != 0) started = true;
                if (started) out.push_back(digits[d]);
            }
        }
        if (!started) out.push_back('0');
        return out;
    }
    static PageSet from_hex(const std::string& hex, uint32_t universe) {
        size_t pos = hex.rfind("0x");
        std::string body = (pos == 0) ? hex.substr(2) : hex;
        PageSet s(universe);
        uint32_t nibble = 0;
        for (size_t i = body.size(); i-- > 0; ++nibble) {
            char c = body[i];
            unsigned d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = 10 + (c - 'a');
            else if (c >= 'A' && c <= 'F') d = 10 + (c - 'A');
            else throw input_error("PageSet::from_hex: bad digit");
            uint32_t bit = nibble * 4;
            if (d != 0 && bit + 3 >= universe && bit >= ((universe + 3) / 4) * 4)
                throw input_error("PageSet::from_hex: value exceeds universe");
            if (bit < s.nbits_) s.words_[bit >> 6] |= uint64_t(d) << (bit & 63);
        }
        s.trim();
        return s;
    }

private:
    void check(PageId p) const {
        if (p >= nbits_) throw input_error("page id " + std::to_string(p) + " outside universe of " + std::to_string(nbits_));
    }
    void trim() {
        if (nbits_ % 64 != 0 && !words_.empty())
            words_.back() &= (uint64_t(1) << (nbits_ % 64)) - 1;
    }
    template <typename Op>
    PageSet merge(const PageSet& o, Op op) const {
        if (nbits_ != o.nbits_) throw input_error("PageSet universes differ");
        PageSet s(nbits_);
        for (size_t i = 0; i < words_.size(); ++i) s.words_[i] = op(words_[i], o.words_[i]);
        return s;
    }

    uint32_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace nlpage

#endif
