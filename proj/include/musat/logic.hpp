#pragma once

#include <cstdint>
#include <vector>

#include "musat/closure.hpp"
#include "musat/formula.hpp"

namespace musat {

// One-step pair: modal literals over a small variable space, together with
// the candidate successor profiles. A profile is the set of variables a
// successor makes true, stored as a bitmask. Variables stand for argument
// formulas; atom literals never appear here (they are checked against the
// label before the pair is built).
struct OneStepLit {
    ModalOp op;
    int var = 0;
};

struct OneStepPair {
    int nvars = 0;
    std::vector<OneStepLit> gamma;
    std::vector<uint64_t> theta;
};

constexpr int kMaxOneStepVars = 64;

// false iff the label contains bottom or a complementary atom pair
bool literal_consistent(const ClosureIndex& cl, const std::vector<int32_t>& label);

bool one_step_sat_relational(const OneStepPair& pair, bool serial);
bool one_step_sat_graded(const OneStepPair& pair);
bool one_step_sat_coalition(const OneStepPair& pair, int agents);
bool one_step_sat(const OneStepPair& pair, LogicId logic, int agents);

// A modal rule application over a saturated label. The conclusion is a set
// of conjunctive clauses; each clause is given as the subset of modal ids
// it keeps, which doubles as the modal letter for the game step. The label
// is satisfiable only if every matching application has at least one
// satisfiable clause.
struct RuleApplication {
    std::vector<int32_t> premiss;
    std::vector<std::vector<int32_t>> clauses;
};

std::vector<RuleApplication> tableau_applications(const ClosureIndex& cl,
                                                  const std::vector<int32_t>& modalIds,
                                                  LogicId logic, int agents);

} // namespace musat
