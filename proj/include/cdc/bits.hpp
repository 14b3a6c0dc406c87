#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace cdc {

/// Fixed-universe dynamic bitset used for element subsets of a complex.
/// The universe size is set at construction and never changes; all binary
/// operations require operands over the same universe.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t universe)
        : size_(universe), words_((universe + 63) / 64, 0) {}

    std::size_t universe() const { return size_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool operator==(const Bits& o) const { return words_ == o.words_; }
    bool operator!=(const Bits& o) const { return words_ != o.words_; }

    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bits& subtract(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits difference(Bits a, const Bits& b) { return a.subtract(b); }

    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// Lexicographic order on the sorted index sequences: at the smallest
    /// index where the sets differ, the one containing it comes first.
    bool lex_less(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t d = words_[i] ^ o.words_[i];
            if (d) {
                std::uint64_t low = d & (~d + 1);
                return words_[i] & low;
            }
        }
        return false;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
        return out;
    }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ull ^ size_;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return b.hash(); }
};

struct BitsPairHash {
    std::size_t operator()(const std::pair<Bits, Bits>& p) const {
        return p.first.hash() * 1000003u ^ p.second.hash();
    }
};

} // namespace cdc
