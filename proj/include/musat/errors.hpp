#pragma once

#include <stdexcept>
#include <string>

namespace musat {

// input formula is outside the supported fragment (not aconjunctive and
// alternation depth above one)
struct FragmentError : std::runtime_error {
    explicit FragmentError(const std::string& what) : std::runtime_error(what) {}
};

// a configured resource limit was hit (node budget, wall clock)
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t pos_, const std::string& what) : std::runtime_error(what), pos(pos_) {}
};

} // namespace musat
