#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "musat/tracking.hpp"

namespace musat {

// MH: breakpoint sets, enough for alternation depth up to one
// Perm: ranked tree of Buechi copies, for aconjunctive formulas of any depth
enum class Mode { MH, Perm };

struct MacroState {
    // MH part: tracked states and those still owing a nu visit, both sorted
    std::vector<int32_t> S, O;

    // Perm part: tree nodes in age order, oldest first; labels hold Buechi
    // copy ids and stay inside the parent label
    struct TNode {
        std::vector<int32_t> label;
        int32_t parent = -1;
        bool operator==(const TNode& o) const { return parent == o.parent && label == o.label; }
    };
    std::vector<TNode> tree;

    std::string key(Mode mode) const;
};

struct StepResult {
    MacroState next;
    int pri = 0;
};

// deterministic macro automaton whose emitted priorities, read max wins,
// accept exactly the words carrying no accepting run of the tracker
class Determinizer {
  public:
    Determinizer(const ClosureIndex& cl, Mode mode);

    Mode mode() const { return mode_; }
    const ClosureIndex& closureIndex() const { return *cl_; }
    MacroState initial() const;
    StepResult step(const MacroState& m, const Letter& l) const;
    std::vector<int32_t> label_of(const MacroState& m) const; // closure ids, sorted
    int maxEmit() const;

    // Buechi copy automaton, exposed for the acceptance oracles
    int buechiStates() const { return nqb_; }
    int buechiInitial() const { return cl_->root; }
    bool buechiAccepting(int qb) const;
    void buechiDelta(int qb, const Letter& l, std::vector<int32_t>& out) const;

  private:
    const ClosureIndex* cl_;
    TrackingAutomaton track_;
    Mode mode_;
    std::vector<char> isNu_;
    std::vector<int> evens_; // even priorities, one Buechi copy each
    int nq_ = 0;
    int nqb_ = 0;

    StepResult step_mh(const MacroState& m, const Letter& l) const;
    StepResult step_perm(const MacroState& m, const Letter& l) const;
};

// MH when the alternation depth is at most one, Perm for deeper
// aconjunctive input, FragmentError otherwise
Mode route_mode(const ClosureIndex& cl);

} // namespace musat
