#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "musat/benchgen.hpp"
#include "musat/closure.hpp"
#include "musat/errors.hpp"
#include "musat/formula.hpp"
#include "musat/satgame.hpp"

namespace {

using namespace musat;

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitExpect = 3;

struct SolveOpts {
    std::string formulaText;
    std::string file;
    std::string logic = "k";
    std::string engine = "auto";
    std::string schedule = "adaptive";
    std::string format = "human";
    int agents = 0; // 0: derive from the formula
    double timeout = 60.0;
    size_t maxNodes = 0;
    bool dumpGraph = false;
};

struct BenchOpts {
    std::string family;
    std::string params;
    std::string engine = "auto";
    std::string schedule = "adaptive";
    std::string format = "csv";
    double timeout = 60.0;
    size_t maxNodes = 0;
    unsigned jobs = 1;
};

Engine pick_engine(const std::string& name, LogicId logic) {
    if (name == "auto") return logic == LogicId::Graded ? Engine::OneStep : Engine::Tableau;
    if (name == "onestep") return Engine::OneStep;
    if (name == "tableau") {
        if (logic == LogicId::Graded)
            throw CLI::ValidationError("--engine", "graded logic has no tableau rules");
        return Engine::Tableau;
    }
    throw CLI::ValidationError("--engine", "expected auto, onestep or tableau");
}

Schedule pick_schedule(const std::string& name) {
    if (name == "once") return Schedule::Once;
    if (name == "adaptive") return Schedule::Adaptive;
    throw CLI::ValidationError("--schedule", "expected once or adaptive");
}

struct CaseResult {
    std::string status = "error";
    RunStats stats;
    bool violation = false;
};

CaseResult run_case(const Formula& f, const RunConfig& cfg, Expected expected,
                    std::string* dump) {
    CaseResult res;
    try {
        Formula norm = normalize(f);
        FormulaAnalysis an = analyze(norm);
        ClosureIndex cl = closure(norm, an);
        SatGame game(cl, cfg);
        Verdict v = game.run();
        res.stats = game.stats();
        res.status = v == Verdict::Sat ? "sat" : "unsat";
        if (expected == Expected::Sat && v != Verdict::Sat) res.violation = true;
        if (expected == Expected::Unsat && v != Verdict::Unsat) res.violation = true;
        if (dump) *dump = game.dump();
    } catch (const BudgetError& e) {
        res.status = std::string(e.what()).find("time") != std::string::npos ? "timeout" : "budget";
    }
    return res;
}

void print_csv_header(std::ostream& os) {
    os << "name,params,status,expected,nodes,solve_steps,time_ms\n";
}

void print_csv_row(std::ostream& os, const std::string& name, const std::string& params,
                   const CaseResult& r, Expected expected) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", r.stats.wallMs);
    os << name << ",\"" << params << "\"," << r.status << "," << expected_name(expected) << ","
       << r.stats.nodesExpanded << "," << r.stats.solveSteps << "," << buf << "\n";
}

std::string join_params(const std::vector<int>& ps) {
    std::string s;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ps[i]);
    }
    return s;
}

int do_solve(const SolveOpts& o) {
    std::string text = o.formulaText;
    if (!o.file.empty()) {
        if (!text.empty()) {
            std::cerr << "give either a formula argument or --file, not both\n";
            return kExitUsage;
        }
        std::ifstream in(o.file);
        if (!in) {
            std::cerr << "cannot read " << o.file << "\n";
            return kExitUsage;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    if (text.empty()) {
        std::cerr << "no formula given\n";
        return kExitUsage;
    }

    auto logic = logic_from_name(o.logic);
    if (!logic) {
        std::cerr << "unknown logic '" << o.logic << "'\n";
        return kExitUsage;
    }

    Formula f;
    try {
        f = parse(text, *logic);
    } catch (const ParseError& e) {
        std::cerr << "parse error at offset " << e.pos << ": " << e.what() << "\n";
        return kExitUsage;
    }

    RunConfig cfg;
    cfg.logic = *logic;
    cfg.timeoutSec = o.timeout;
    cfg.maxNodes = o.maxNodes;
    int derived = std::max(1, max_agent(f));
    if (o.agents > 0 && o.agents < derived) {
        std::cerr << "--agents " << o.agents << " is below the largest referenced agent "
                  << derived << "\n";
        return kExitUsage;
    }
    cfg.agents = o.agents > 0 ? o.agents : derived;
    try {
        cfg.engine = pick_engine(o.engine, *logic);
        cfg.schedule = pick_schedule(o.schedule);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    std::string dump;
    CaseResult res;
    try {
        res = run_case(f, cfg, Expected::Unknown, o.dumpGraph ? &dump : nullptr);
    } catch (const FragmentError& e) {
        std::cerr << "unsupported fragment: " << e.what() << "\n";
        return kExitUsage;
    }

    if (o.format == "csv") {
        print_csv_header(std::cout);
        print_csv_row(std::cout, "solve", "", res, Expected::Unknown);
    } else {
        if (res.status == "sat" || res.status == "unsat") {
            std::cout << "status: " << (res.status == "sat" ? "SAT" : "UNSAT") << "\n";
            std::cout << "nodes: " << res.stats.nodesExpanded << " expanded, "
                      << res.stats.nodesInterned << " interned\n";
            std::cout << "solving: " << res.stats.solveCalls << " passes, "
                      << res.stats.solveSteps << " operator steps\n";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f", res.stats.wallMs);
            std::cout << "time: " << buf << " ms\n";
        } else {
            std::cout << "status: " << res.status << "\n";
        }
    }
    if (o.dumpGraph) std::cout << dump;

    if (res.status == "sat") return kExitSat;
    if (res.status == "unsat") return kExitUnsat;
    return kExitBudget;
}

// parameter lists are comma separated, each entry an integer or a..b
bool expand_params(const std::string& text, size_t arity,
                   std::vector<std::vector<int>>& out, std::string& err) {
    std::vector<std::pair<int, int>> ranges;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                int v = std::stoi(item);
                ranges.push_back({v, v});
            } else {
                int a = std::stoi(item.substr(0, dots));
                int b = std::stoi(item.substr(dots + 2));
                if (b < a) { err = "empty range " + item; return false; }
                ranges.push_back({a, b});
            }
        } catch (const std::exception&) {
            err = "bad parameter '" + item + "'";
            return false;
        }
    }
    if (ranges.size() != arity) {
        err = "expected " + std::to_string(arity) + " parameter(s)";
        return false;
    }
    std::vector<int> cur(ranges.size());
    for (size_t i = 0; i < ranges.size(); ++i) cur[i] = ranges[i].first;
    for (;;) {
        out.push_back(cur);
        size_t i = ranges.size();
        while (i > 0) {
            --i;
            if (cur[i] < ranges[i].second) { ++cur[i]; break; }
            cur[i] = ranges[i].first;
            if (i == 0) return true;
        }
        if (ranges.empty()) return true;
    }
}

int do_bench_list() {
    for (const BenchFamily& f : bench_families())
        std::cout << f.name << " arity " << f.arity << "  " << f.note << "\n";
    return 0;
}

const BenchFamily* find_family(const std::string& name) {
    for (const BenchFamily& f : bench_families())
        if (f.name == name) return &f;
    return nullptr;
}

int do_bench_emit(const BenchOpts& o) {
    const BenchFamily* fam = find_family(o.family);
    if (!fam) {
        std::cerr << "unknown family '" << o.family << "'\n";
        return kExitUsage;
    }
    std::vector<std::vector<int>> paramSets;
    std::string err;
    if (!expand_params(o.params, fam->arity, paramSets, err)) {
        std::cerr << err << "\n";
        return kExitUsage;
    }
    for (const auto& ps : paramSets) {
        BenchCase c = bench_case(o.family, ps);
        std::cout << c.name() << "  [" << logic_name(c.logic) << ", agents " << c.agents
                  << ", " << expected_name(c.expected) << "]\n";
        std::cout << c.formula.str() << "\n";
    }
    return 0;
}

int do_bench_run(const BenchOpts& o) {
    const BenchFamily* fam = find_family(o.family);
    if (!fam) {
        std::cerr << "unknown family '" << o.family << "'\n";
        return kExitUsage;
    }
    std::vector<std::vector<int>> paramSets;
    std::string err;
    if (!expand_params(o.params, fam->arity, paramSets, err)) {
        std::cerr << err << "\n";
        return kExitUsage;
    }

    std::vector<BenchCase> cases;
    try {
        for (const auto& ps : paramSets) cases.push_back(bench_case(o.family, ps));
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    for (const BenchCase& c : cases) {
        try {
            pick_engine(o.engine, c.logic);
            pick_schedule(o.schedule);
        } catch (const CLI::ValidationError& e) {
            std::cerr << e.what() << "\n";
            return kExitUsage;
        }
    }

    std::vector<CaseResult> results(cases.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            const BenchCase& c = cases[i];
            RunConfig cfg;
            cfg.logic = c.logic;
            cfg.agents = c.agents;
            cfg.engine = pick_engine(o.engine, c.logic);
            cfg.schedule = pick_schedule(o.schedule);
            cfg.timeoutSec = o.timeout;
            cfg.maxNodes = o.maxNodes;
            try {
                results[i] = run_case(c.formula, cfg, c.expected, nullptr);
            } catch (const std::exception& e) {
                results[i].status = std::string("error: ") + e.what();
            }
        }
    };
    unsigned jobs = std::max(1u, o.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    bool violation = false;
    if (o.format == "csv") print_csv_header(std::cout);
    for (size_t i = 0; i < cases.size(); ++i) {
        const BenchCase& c = cases[i];
        const CaseResult& r = results[i];
        if (o.format == "csv") {
            print_csv_row(std::cout, c.family, join_params(c.params), r, c.expected);
        } else {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f", r.stats.wallMs);
            std::cout << c.name() << ": " << r.status << " (expected "
                      << expected_name(c.expected) << ", " << r.stats.nodesExpanded
                      << " nodes, " << r.stats.solveSteps << " steps, " << buf << " ms)\n";
        }
        if (r.violation) violation = true;
    }
    return violation ? kExitExpect : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"satisfiability for modal fixpoint logics over relational, graded and "
                 "concurrent game structures"};
    app.require_subcommand(1);

    SolveOpts so;
    CLI::App* solve = app.add_subcommand("solve", "decide satisfiability of one formula");
    solve->add_option("formula", so.formulaText, "formula text");
    solve->add_option("--file", so.file, "read the formula from a file");
    solve->add_option("--logic", so.logic, "k, kd, graded or amc")->capture_default_str();
    solve->add_option("--agents", so.agents,
                      "number of agents (amc); at least the largest referenced agent");
    solve->add_option("--engine", so.engine, "auto, onestep or tableau")->capture_default_str();
    solve->add_option("--schedule", so.schedule, "once or adaptive")->capture_default_str();
    solve->add_option("--timeout", so.timeout, "seconds, 0 disables")->capture_default_str();
    solve->add_option("--max-nodes", so.maxNodes, "game node budget, 0 disables");
    solve->add_option("--format", so.format, "human or csv")->capture_default_str();
    solve->add_flag("--dump-graph", so.dumpGraph, "print the explored game");

    BenchOpts bo;
    CLI::App* bench = app.add_subcommand("bench", "benchmark families");
    bench->require_subcommand(1);
    CLI::App* blist = bench->add_subcommand("list", "list the families");
    CLI::App* bemit = bench->add_subcommand("emit", "print formulas of a family");
    bemit->add_option("family", bo.family, "family name")->required();
    bemit->add_option("params", bo.params, "comma separated, ranges a..b allowed")->required();
    CLI::App* brun = bench->add_subcommand("run", "run a family");
    brun->add_option("family", bo.family, "family name")->required();
    brun->add_option("params", bo.params, "comma separated, ranges a..b allowed")->required();
    brun->add_option("--engine", bo.engine, "auto, onestep or tableau")->capture_default_str();
    brun->add_option("--schedule", bo.schedule, "once or adaptive")->capture_default_str();
    brun->add_option("--timeout", bo.timeout, "seconds per case, 0 disables")
        ->capture_default_str();
    brun->add_option("--max-nodes", bo.maxNodes, "game node budget per case, 0 disables");
    brun->add_option("--jobs", bo.jobs, "worker threads")->capture_default_str();
    brun->add_option("--format", bo.format, "csv or human")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return do_solve(so);
        if (blist->parsed()) return do_bench_list();
        if (bemit->parsed()) return do_bench_emit(bo);
        if (brun->parsed()) return do_bench_run(bo);
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
