#include "doctest.h"

#include <set>
#include <stdexcept>

#include "musat/benchgen.hpp"
#include "musat/determinize.hpp"
#include "musat/satgame.hpp"

using namespace musat;

namespace {

AgentSet agset(std::initializer_list<int> l) {
    AgentSet s = 0;
    for (int a : l) s |= AgentSet(1) << (a - 1);
    return s;
}

Verdict quick_run(const BenchCase& c) {
    Formula f = normalize(c.formula);
    ClosureIndex cl = closure(f, analyze(f));
    RunConfig cfg;
    cfg.logic = c.logic;
    cfg.agents = c.agents;
    cfg.engine = c.logic == LogicId::Graded ? Engine::OneStep : Engine::Tableau;
    SatGame g(cl, cfg);
    return g.run();
}

} // namespace

TEST_CASE("family table") {
    const auto& fams = bench_families();
    CHECK(fams.size() == 10);
    std::set<std::string> names;
    for (const auto& f : fams) {
        names.insert(f.name);
        CHECK(f.note[0] != '\0');
    }
    CHECK(names.size() == fams.size());

    auto arity = [&](const char* n) {
        for (const auto& f : fams)
            if (f.name == n) return f.arity;
        return size_t(99);
    };
    CHECK(arity("cardinality") == 1);
    CHECK(arity("tree_u") == 1);
    CHECK(arity("parity_to_buechi") == 2);
    CHECK(arity("rabin_to_rpair") == 2);
    CHECK(arity("rabin_game") == 2);
    CHECK(arity("atl_suite") == 1);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(bench_case("no_such_family", {1}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("cardinality", {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("cardinality", {0}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("tree_u", {}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("tree_u", {0}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("parity_to_buechi", {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("parity_to_buechi", {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("atl_nest", {-1}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("atl_suite", {0}), std::invalid_argument);
    CHECK_THROWS_AS(bench_case("atl_suite", {43}), std::invalid_argument);
}

TEST_CASE("case metadata") {
    BenchCase c = bench_case("cardinality", {3});
    CHECK(c.name() == "cardinality(3)");
    CHECK(c.logic == LogicId::Graded);
    CHECK(c.agents == 1);
    CHECK(c.expected == Expected::Sat);

    CHECK(bench_case("cardinality_u", {2}).expected == Expected::Unsat);
    CHECK(bench_case("tree_u", {1}).expected == Expected::Unsat);

    c = bench_case("parity_to_buechi", {2, 1});
    CHECK(c.name() == "parity_to_buechi(2,1)");
    CHECK(c.logic == LogicId::Graded);
    CHECK(c.expected == Expected::Unsat);

    CHECK(bench_case("rabin_to_buechi", {1, 1}).expected == Expected::Unsat);
    CHECK(bench_case("rabin_to_rpair", {1, 1}).expected == Expected::Unsat);
    CHECK(bench_case("rabin_game", {1, 1}).expected == Expected::Unsat);

    c = bench_case("atl_nest", {0});
    CHECK(c.logic == LogicId::Amc);
    CHECK(c.agents == 2);
    CHECK(c.expected == Expected::Sat);
    CHECK(bench_case("atl_nest", {1}).expected == Expected::Unsat);
    CHECK(bench_case("atl_nest", {4}).expected == Expected::Sat);

    CHECK(bench_case("atl_nested_u", {2}).expected == Expected::Unknown);
    c = bench_case("atl_suite", {7});
    CHECK(c.agents == 4);
    CHECK(c.expected == Expected::Unknown);

    CHECK(std::string(expected_name(Expected::Sat)) == "sat");
    CHECK(std::string(expected_name(Expected::Unsat)) == "unsat");
    CHECK(std::string(expected_name(Expected::Unknown)) == "unknown");
}

TEST_CASE("coalition goal builders") {
    Formula p = Formula::atom("p");
    CHECK(atl_x(agset({1}), p).str() == "<{1}>p");
    CHECK(atl_g(agset({1}), p).str() == "nu GX. p & <{1}>GX");
    CHECK(atl_f(agset({2}), p).str() == "mu FX. p | <{2}>FX");
    CHECK(atl_u(agset({1}), Formula::atom("q"), Formula::atom("r")).str() ==
          "mu UX. r | q & <{1}>UX");
}

TEST_CASE("parity ladder alternates all the way down") {
    for (int k = 1; k <= 3; ++k) {
        Formula f = normalize(fml_parity(1, k));
        FormulaAnalysis an = analyze(f);
        CHECK(an.alternationDepth == k);
        CHECK(an.aconjunctive);
    }
}

TEST_CASE("corpus round trips through the printer") {
    std::vector<BenchCase> corpus = bench_corpus();
    CHECK(corpus.size() == 62);
    for (const BenchCase& c : corpus) {
        CAPTURE(c.name());
        Formula back = parse(c.formula.str(), c.logic);
        CHECK(same(back, c.formula));
    }
}

TEST_CASE("corpus stays inside the supported fragments") {
    for (const BenchCase& c : bench_corpus()) {
        CAPTURE(c.name());
        Formula f = normalize(c.formula);
        FormulaAnalysis an = analyze(f);
        CHECK((an.alternationDepth <= 1 || an.aconjunctive));
        ClosureIndex cl = closure(f, an);
        CHECK(cl.n() >= 1);
        if (c.family == "atl_nest" || c.family == "atl_nested_u")
            CHECK(route_mode(cl) == Mode::MH);
    }
}

TEST_CASE("small instances solve to their label") {
    for (const char* fam : {"cardinality", "cardinality_u", "tree_u"}) {
        BenchCase c = bench_case(fam, {1});
        CAPTURE(c.name());
        CHECK(quick_run(c) ==
              (c.expected == Expected::Sat ? Verdict::Sat : Verdict::Unsat));
    }
    CHECK(quick_run(bench_case("parity_to_buechi", {1, 1})) == Verdict::Unsat);
    CHECK(quick_run(bench_case("atl_nest", {0})) == Verdict::Sat);
    CHECK(quick_run(bench_case("atl_nest", {1})) == Verdict::Unsat);
}
