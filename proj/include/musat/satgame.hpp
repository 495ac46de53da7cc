#pragma once

#include <chrono>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "musat/determinize.hpp"
#include "musat/logic.hpp"
#include "musat/solve.hpp"

namespace musat {

enum class Engine { OneStep, Tableau };
enum class Schedule { Once, Adaptive };
enum class Verdict { Sat, Unsat };

// true when a propagation pass should run now; `first` marks the first
// query of a run, `nodes` counts expanded nodes
bool schedule_should_solve(Schedule s, size_t nodes, size_t lastSolveNodes, bool first);

struct RunConfig {
    LogicId logic = LogicId::K;
    int agents = 1;
    Engine engine = Engine::Tableau;
    Schedule schedule = Schedule::Adaptive;
    double timeoutSec = 60.0; // <= 0 disables the clock
    size_t maxNodes = 0;      // 0 disables the node budget
};

struct RunStats {
    size_t nodesExpanded = 0;
    size_t nodesInterned = 0;
    size_t solveCalls = 0;
    size_t solveSteps = 0; // operator evaluations inside the fixpoints
    double wallMs = 0.0;
};

// a saturation move of a core: state-labelled successor macro plus the
// maximum priority emitted along the saturation word
struct SatMove {
    MacroState target;
    int pri = 0;
};

std::vector<SatMove> core_saturations(const Determinizer& det, const MacroState& from,
                                      int wordCap = 0);

enum class NodeStatus : uint8_t { Unknown, SatWin, UnsatWin };

// On-the-fly satisfiability game over the determinized tracking automaton.
// Existential nodes are the macro states; the universal move stage is kept
// implicit in the propagation operators. Verdicts come from nested fixpoint
// passes over the partially built game; both players' established regions
// only ever grow.
class SatGame {
public:
    SatGame(const ClosureIndex& cl, const RunConfig& cfg);

    Verdict run();

    const RunStats& stats() const { return stats_; }
    size_t nodeCount() const { return nodes_.size(); }
    int32_t root() const { return root_; }
    NodeStatus status(int32_t v) const { return status_[v]; }
    std::string dump() const;

private:
    struct Move {
        int32_t target = -1;
        int pri = 0;
        uint64_t profile = 0; // one-step engine: argument variables of kappa
    };

    struct Node {
        MacroState macro;
        std::vector<int32_t> label;
        bool isState = false;
        bool literalOk = true;
        bool expanded = false;
        std::vector<Move> coreMoves;             // cores
        OneStepPair pair;                        // states, one-step engine
        std::vector<Move> stateMoves;            // states, one-step engine
        std::vector<std::vector<Move>> appMoves; // states, tableau engine
        std::unordered_map<uint64_t, uint8_t> osMemo; // availability mask -> verdict
    };

    const ClosureIndex* cl_;
    RunConfig cfg_;
    Determinizer det_;
    std::vector<Node> nodes_;
    std::vector<NodeStatus> status_;
    std::unordered_map<std::string, int32_t> byKey_;
    std::queue<int32_t> frontier_;
    int32_t root_ = -1;
    RunStats stats_;
    std::chrono::steady_clock::time_point deadline_;
    bool hasDeadline_ = false;

    int32_t intern(const MacroState& m);
    void expand(int32_t v);
    void expand_core(int32_t v);
    void expand_state(int32_t v);
    void check_deadline() const;

    struct Regions {
        BitSet winE, winA;
    };
    Regions solve_partial();
    BitSet solve_side(bool existential, const PriorityMap& pm);
    void apply_marks(const Regions& r);
};

} // namespace musat
