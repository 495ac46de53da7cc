#include "musat/solve.hpp"

#include <algorithm>
#include <cassert>

namespace musat {

PriorityMap compress_priorities(std::vector<int> occurring) {
    PriorityMap pm;
    std::sort(occurring.begin(), occurring.end());
    occurring.erase(std::unique(occurring.begin(), occurring.end()), occurring.end());
    if (occurring.empty()) occurring.push_back(0);
    pm.toCompressed.assign(occurring.back() + 1, -1);
    int cur = occurring.front() % 2;
    int prev = occurring.front();
    pm.toCompressed[prev] = cur;
    for (size_t i = 1; i < occurring.size(); ++i) {
        int p = occurring[i];
        if (p % 2 != prev % 2) ++cur;
        pm.toCompressed[p] = cur;
        prev = p;
    }
    pm.top = cur;
    return pm;
}

BitSet nested_fixpoint(size_t carrier, int maxPriority,
                       const std::function<BitSet(const std::vector<BitSet>&)>& F,
                       bool evenIsNu,
                       const std::function<void()>& tick) {
    std::vector<BitSet> Z(maxPriority + 1);
    std::function<BitSet(int)> eval = [&](int level) -> BitSet {
        if (level < 0) {
            if (tick) tick();
            return F(Z);
        }
        bool nu = ((level % 2 == 0) == evenIsNu);
        Z[level] = BitSet(carrier, nu);
        for (;;) {
            BitSet v = eval(level - 1);
            if (v == Z[level]) break;
            Z[level] = std::move(v);
        }
        return Z[level];
    };
    return eval(maxPriority);
}

} // namespace musat
