#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "musat/formula.hpp"

namespace musat {

enum class SatClass : uint8_t { Literal, Modal, Or, And, Fix };

// closure of a clean closed formula under decomposition and fixpoint
// unfolding; every node is itself a closed formula
struct ClosureIndex {
    std::vector<Formula> nodes;
    std::vector<SatClass> cls;
    std::vector<std::array<int32_t, 2>> kids; // -1 when absent
    std::vector<int> priority;                // 0 outside fixpoint nodes
    int root = 0;
    int alternationDepth = 0;
    bool aconjunctive = true;

    int n() const { return int(nodes.size()); }
    bool saturated(int v) const {
        return cls[v] == SatClass::Literal || cls[v] == SatClass::Modal;
    }
    int maxPriority() const;
    int find(const Formula& f) const; // -1 when absent
};

ClosureIndex closure(const Formula& f, const FormulaAnalysis& an, int maxNodes = 200000);

} // namespace musat
