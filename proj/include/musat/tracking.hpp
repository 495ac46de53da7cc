#pragma once

#include <string>
#include <vector>

#include "musat/closure.hpp"

namespace musat {

// alphabet of the tracking automaton: one letter per saturation step plus
// one modal letter per chosen set of modal nodes
struct Letter {
    enum class Kind : uint8_t { Choose, Split, Unfold, Modal };

    Kind kind = Kind::Modal;
    int node = -1;          // Choose, Split, Unfold
    int branch = 0;         // Choose
    std::vector<int> kappa; // Modal, sorted closure ids

    static Letter choose(int node, int branch);
    static Letter split(int node);
    static Letter unfold(int node);
    static Letter modal(std::vector<int> kappa);

    std::string str(const ClosureIndex& cl) const;
};

// nondeterministic automaton following single formulas through saturation;
// states are closure ids, priorities are the closure priorities
struct TrackingAutomaton {
    const ClosureIndex* cl;

    explicit TrackingAutomaton(const ClosureIndex& c) : cl(&c) {}

    int priority(int state) const { return cl->priority[state]; }
    void delta(int state, const Letter& l, std::vector<int>& out) const;
};

} // namespace musat
