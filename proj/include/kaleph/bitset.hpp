#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace kaleph {

// Grow-on-write bitset; just enough for neighbourhood subset tests.
class Bitset {
public:
    void set(std::size_t i) {
        std::size_t w = i >> 6;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] |= std::uint64_t{1} << (i & 63);
    }

    bool test(std::size_t i) const {
        std::size_t w = i >> 6;
        return w < words_.size() && (words_[w] >> (i & 63)) & 1;
    }

    // this ⊆ o
    bool subset_of(const Bitset& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w];
            if (x == 0) continue;
            if (w >= o.words_.size() || (x & ~o.words_[w])) return false;
        }
        return true;
    }

    std::size_t count_and(const Bitset& o) const {
        std::size_t n = std::min(words_.size(), o.words_.size()), c = 0;
        for (std::size_t w = 0; w < n; ++w) c += std::popcount(words_[w] & o.words_[w]);
        return c;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    void and_with(const Bitset& o) {
        if (words_.size() > o.words_.size()) words_.resize(o.words_.size());
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    }

private:
    std::vector<std::uint64_t> words_;
};

} // namespace kaleph
