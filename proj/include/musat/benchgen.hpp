#pragma once

#include <functional>
#include <string>
#include <vector>

#include "musat/formula.hpp"

namespace musat {

enum class Expected { Sat, Unsat, Unknown };

const char* expected_name(Expected e);

struct BenchCase {
    std::string family;
    std::vector<int> params;
    LogicId logic = LogicId::K;
    int agents = 1;
    Formula formula;
    Expected expected = Expected::Unknown;

    std::string name() const; // family(p1,p2)
};

struct BenchFamily {
    std::string name;
    size_t arity = 1;
    const char* note = "";
};

const std::vector<BenchFamily>& bench_families();

// throws std::invalid_argument for unknown families or bad parameters
BenchCase bench_case(const std::string& family, const std::vector<int>& params);

// small instances of every family, used for cross-checking runs
std::vector<BenchCase> bench_corpus();

// building blocks, exposed for the generator tests
using StepShape = std::function<Formula(Formula)>;

Formula fml_cardinality(int n, bool weak);
Formula fml_tree_u(int n);
Formula fml_parity(int n, int k);
Formula fml_buechi_graded(int n, int k);
Formula fml_buechi_pair(const Formula& f, const StepShape& psi);
Formula fml_rabin_pair(const Formula& i, const Formula& f, const StepShape& psi);
Formula fml_rabin(int k, const StepShape& psi);

Formula atl_x(AgentSet d, Formula f);
Formula atl_g(AgentSet d, Formula f);
Formula atl_f(AgentSet d, Formula f);
Formula atl_u(AgentSet d, Formula a, Formula b);

} // namespace musat
