#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace musat {

// Fixed-size bit vector. Bits past size() stay zero so equality and
// popcount work on the raw words.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(size_t n, bool fill = false) { resize(n, fill); }

    void resize(size_t n, bool fill = false) {
        n_ = n;
        w_.assign((n + 63) / 64, fill ? ~uint64_t(0) : 0);
        trim();
    }

    size_t size() const { return n_; }

    void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    size_t count() const {
        size_t c = 0;
        for (uint64_t w : w_) c += size_t(__builtin_popcountll(w));
        return c;
    }

    bool operator==(const BitSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitSet& o) const { return !(*this == o); }

    BitSet& operator&=(const BitSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    BitSet& operator|=(const BitSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (uint64_t(1) << (n_ & 63)) - 1;
        if (w_.empty()) w_.push_back(0);
    }

    size_t n_ = 0;
    std::vector<uint64_t> w_ = {0};
};

// Dense renumbering of the priorities that actually occur: consecutive
// occurring priorities of equal parity collapse onto one value, parities
// are preserved, and the smallest occurring priority maps to 0 or 1.
// Callers should include 0 in `occurring` so even acceptance stays even.
struct PriorityMap {
    std::vector<int> toCompressed; // indexed by original priority, -1 unused
    int top = 0;
};

PriorityMap compress_priorities(std::vector<int> occurring);

// Nested fixpoint over variables Z[0..maxPriority], highest priority
// outermost. With evenIsNu, even levels start full and odd levels start
// empty (the usual orientation for the existential winning region); the
// flag flips both. F sees the whole variable vector and returns the next
// candidate for the level being iterated; tick runs before every F call.
BitSet nested_fixpoint(size_t carrier, int maxPriority,
                       const std::function<BitSet(const std::vector<BitSet>&)>& F,
                       bool evenIsNu,
                       const std::function<void()>& tick = {});

} // namespace musat
