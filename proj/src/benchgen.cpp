#include "musat/benchgen.hpp"

#include <algorithm>
#include <stdexcept>

namespace musat {

namespace {

Formula at(const std::string& n) { return Formula::atom(n); }
Formula nat(const std::string& n) { return Formula::natom(n); }
Formula num_at(const char* base, int i) { return Formula::atom(base + std::to_string(i)); }
Formula num_nat(const char* base, int i) { return Formula::natom(base + std::to_string(i)); }

AgentSet ags(std::initializer_list<int> l) {
    AgentSet s = 0;
    for (int a : l) s |= AgentSet(1) << (a - 1);
    return s;
}

} // namespace

const char* expected_name(Expected e) {
    switch (e) {
    case Expected::Sat: return "sat";
    case Expected::Unsat: return "unsat";
    case Expected::Unknown: return "unknown";
    }
    return "unknown";
}

std::string BenchCase::name() const {
    std::string s = family + "(";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(params[i]);
    }
    return s + ")";
}

Formula fml_cardinality(int n, bool weak) {
    return Formula::conj({Formula::gdia(uint32_t(n - 1), nat("p")),
                          Formula::gdia(uint32_t(n - 1), at("p")),
                          Formula::gbox(uint32_t(n), nat("q")),
                          Formula::gbox(uint32_t(weak ? n - 1 : n), at("q"))});
}

Formula fml_tree_u(int n) {
    Formula left = Formula::nu(
        "X", Formula::band(Formula::gdia(uint32_t(n), Formula::band(at("p"), Formula::var("X"))),
                           Formula::gbox(uint32_t(n + 1), nat("p"))));
    Formula right = Formula::mu(
        "Y", Formula::bor(Formula::gdia(uint32_t(n + 1), at("p")),
                          Formula::gdia(uint32_t(n), Formula::band(at("p"), Formula::var("Y")))));
    return Formula::band(left, right);
}

Formula fml_parity(int n, int k) {
    std::vector<Formula> body;
    for (int i = 1; i <= k; ++i)
        body.push_back(Formula::band(
            num_at("p", i), Formula::gdia(uint32_t(n), Formula::var("P" + std::to_string(i)))));
    Formula f = Formula::disj(body);
    for (int i = 1; i <= k; ++i) {
        std::string x = "P" + std::to_string(i);
        f = i % 2 ? Formula::mu(x, f) : Formula::nu(x, f);
    }
    return f;
}

Formula fml_buechi_graded(int n, int k) {
    std::vector<Formula> alts;
    for (int i = 2; i <= k; i += 2) {
        std::vector<Formula> parts;
        for (int j = i + 1; j <= k; ++j) parts.push_back(num_nat("p", j));
        std::string y = "Y" + std::to_string(i), z = "Z" + std::to_string(i);
        parts.push_back(Formula::bor(
            Formula::band(num_at("p", i), Formula::gdia(uint32_t(n), Formula::var(y))),
            Formula::gdia(uint32_t(n), Formula::var(z))));
        alts.push_back(Formula::nu(y, Formula::mu(z, Formula::conj(parts))));
    }
    return Formula::mu(
        "B", Formula::bor(Formula::gdia(uint32_t(n), Formula::var("B")), Formula::disj(alts)));
}

Formula fml_buechi_pair(const Formula& f, const StepShape& psi) {
    Formula body = Formula::bor(Formula::band(f, psi(Formula::var("BX"))),
                                Formula::band(negate(f), psi(Formula::var("BY"))));
    return Formula::nu("BX", Formula::mu("BY", body));
}

Formula fml_rabin_pair(const Formula& i, const Formula& f, const StepShape& psi) {
    Formula body = Formula::disj(
        {Formula::band(f, psi(Formula::var("RX"))),
         Formula::conj({negate(f), i, psi(Formula::var("RY"))}),
         Formula::conj({negate(f), negate(i), psi(Formula::var("RZ"))})});
    return Formula::mu("RX", Formula::nu("RY", Formula::mu("RZ", body)));
}

namespace {

std::string rabin_var(int c, const std::vector<int>& prefix) {
    std::string s = "X" + std::to_string(c) + "_";
    for (int j : prefix) s += std::to_string(j);
    return s;
}

// disjunction over the orders in which the pairs can settle; prefix p of
// length l carries binders nu X^p_{2(k-l)+2} and mu X^p_{2(k-l)+1}
Formula rabin_disj(int k, int c, std::vector<int>& prefix, const StepShape& psi) {
    if (c == 0) {
        std::vector<Formula> outer;
        {
            std::vector<Formula> parts;
            for (int j = 1; j <= k; ++j) parts.push_back(num_at("f", j));
            parts.push_back(psi(Formula::var(rabin_var(2 * k + 1, {}))));
            outer.push_back(Formula::conj(parts));
        }
        for (int pos = 1; pos <= k; ++pos) {
            std::vector<Formula> guard;
            for (int q = 1; q <= pos; ++q) guard.push_back(num_nat("f", prefix[q - 1]));
            std::vector<int> pj(prefix.begin(), prefix.begin() + pos);
            int ip = prefix[pos - 1];
            {
                std::vector<Formula> parts = guard;
                parts.push_back(num_at("i", ip));
                parts.push_back(psi(Formula::var(rabin_var(2 * (k - pos) + 2, pj))));
                outer.push_back(Formula::conj(parts));
            }
            {
                std::vector<Formula> parts = guard;
                parts.push_back(num_nat("i", ip));
                parts.push_back(psi(Formula::var(rabin_var(2 * (k - pos) + 1, pj))));
                outer.push_back(Formula::conj(parts));
            }
        }
        return Formula::disj(outer);
    }
    std::vector<Formula> branches;
    for (int j = 1; j <= k; ++j) {
        if (std::find(prefix.begin(), prefix.end(), j) != prefix.end()) continue;
        prefix.push_back(j);
        Formula inner = rabin_disj(k, c - 2, prefix, psi);
        Formula f = Formula::nu(rabin_var(c, prefix),
                                Formula::mu(rabin_var(c - 1, prefix), inner));
        prefix.pop_back();
        branches.push_back(std::move(f));
    }
    return Formula::disj(branches);
}

StepShape grade_shape(int n) {
    return [n](Formula x) { return Formula::gdia(uint32_t(n), std::move(x)); };
}

Formula rabin_infs(int k) {
    std::vector<Formula> is;
    for (int j = 1; j <= k; ++j) is.push_back(num_at("i", j));
    return Formula::disj(is);
}

// every node belongs to exactly one player, hereditarily
Formula game_theta() {
    Formula split = Formula::bor(Formula::band(at("ve"), nat("va")),
                                 Formula::band(nat("ve"), at("va")));
    return Formula::nu("W", Formula::band(split, Formula::gbox(0, Formula::var("W"))));
}

Formula cpre_e(int n, Formula x) {
    return Formula::bor(Formula::band(at("ve"), Formula::gdia(uint32_t(n), x)),
                        Formula::band(at("va"), Formula::gbox(uint32_t(n), x)));
}

Formula cpre_a(int n, Formula x) {
    return Formula::bor(Formula::band(at("va"), Formula::gdia(uint32_t(n), x)),
                        Formula::band(at("ve"), Formula::gbox(uint32_t(n), x)));
}

Formula fml_rabin_to_buechi(int k, int n) {
    return Formula::band(fml_rabin(k, grade_shape(n)),
                         negate(fml_buechi_pair(rabin_infs(k), grade_shape(0))));
}

Formula fml_rabin_to_rpair(int k, int n) {
    std::vector<Formula> pairs;
    for (int j = 1; j <= k; ++j)
        pairs.push_back(fml_rabin_pair(num_at("i", j), num_at("f", j), grade_shape(0)));
    return Formula::band(fml_rabin(k, grade_shape(n)), negate(Formula::disj(pairs)));
}

// negated Rabin game claim; the Buechi complement is folded through the
// opponent's controllable predecessors, which keeps conjunctions clean
Formula fml_rabin_game(int k, int n) {
    Formula f = rabin_infs(k);
    Formula noBuechi = Formula::mu(
        "BX",
        Formula::nu("BY", Formula::band(
                              Formula::bor(negate(f), cpre_a(n, Formula::var("BX"))),
                              Formula::bor(f, cpre_a(n, Formula::var("BY"))))));
    auto cpe = [n](Formula x) { return cpre_e(n, std::move(x)); };
    return Formula::conj({game_theta(), fml_rabin(k, cpe), noBuechi});
}

Formula atl_nest_chi(int n) {
    Formula chi = at("p");
    for (int i = 0; i < n; ++i) chi = negate(atl_f(ags({2}), atl_g(ags({1}), chi)));
    return chi;
}

Formula fml_atl_nest(int n) {
    return Formula::band(atl_g(ags({1}), at("p")), atl_nest_chi(n));
}

Formula fml_atl_nested_u(int n) {
    Formula psi = negate(atl_u(ags({2}), at("q"), at("r")));
    for (int i = 0; i < n; ++i)
        psi = negate(atl_u(ags({(i % 2) + 1}), num_at("p", i % 2), psi));
    return psi;
}

Formula fml_atl_suite(int i) {
    Formula p = at("p"), q = at("q"), r = at("r");
    switch (i) {
    case 1: return p;
    case 2: return Formula::band(p, q);
    case 3: return Formula::bor(p, q);
    case 4: return Formula::bor(nat("p"), q);
    case 5: return atl_x(ags({1}), p);
    case 6: return atl_f(ags({1}), p);
    case 7: return atl_g(ags({1}), p);
    case 8: return atl_u(ags({1}), p, q);
    case 9: return negate(atl_u(ags({1}), p, q));
    case 10: return negate(atl_f(ags({1}), p));
    case 11: return Formula::band(atl_u(ags({1, 2}), p, q), atl_x(ags({1, 2}), r));
    case 12: return Formula::band(atl_u(ags({1, 2}), p, q), atl_x(ags({3, 4}), r));
    case 13: return Formula::band(atl_u(ags({1, 2}), p, q), atl_x(ags({2, 3}), r));
    case 14: return Formula::band(atl_u(ags({2, 1}), p, q), atl_x(ags({3, 2}), r));
    case 15: return Formula::band(atl_u(ags({}), p, q), atl_x(ags({1, 2}), r));
    case 16: return Formula::band(negate(atl_x(ags({1, 2}), p)), atl_g(ags({1}), p));
    case 17: return Formula::band(negate(atl_x(ags({1, 2}), p)), atl_g(ags({1, 2, 3}), p));
    case 18: return Formula::bor(nat("p"), atl_f(ags({1}), p));
    case 19: return Formula::band(p, nat("p"));
    case 20: return Formula::band(Formula::band(p, q),
                                  atl_g(ags({1}), negate(Formula::band(p, q))));
    case 21:
        return Formula::band(atl_g(ags({1}), p),
                             negate(atl_f(ags({2}), atl_g(ags({1}), p))));
    case 22: return Formula::band(atl_x(ags({1}), p), negate(atl_x(ags({1}), p)));
    case 23: return Formula::bor(atl_u(ags({1}), p, q), negate(atl_g(ags({1}), q)));
    case 24: return atl_u(ags({1, 2}), p, negate(atl_g(ags({1}), p)));
    case 25: return atl_u(ags({1}), negate(atl_g(ags({1, 2}), p)), q);
    case 26: return atl_g(ags({}), atl_u(ags({}), p, q));
    case 27:
        return Formula::conj({negate(atl_g(ags({1}), p)), atl_x(ags({1, 2}), p),
                              negate(atl_x(ags({2}), nat("p")))});
    case 28:
        return Formula::conj({atl_x(ags({1}), p), atl_x(ags({2}), q), atl_x(ags({1, 2}), r),
                              negate(atl_x(ags({1}), r)), negate(atl_x(ags({3}), q))});
    case 29:
        return Formula::conj({negate(atl_x(ags({1}), r)), negate(atl_x(ags({3}), q)),
                              atl_x(ags({1}), p), atl_x(ags({2}), q), atl_x(ags({1, 2}), r)});
    case 30:
        return Formula::conj({negate(atl_x(ags({1}), r)), atl_x(ags({1}), p),
                              atl_x(ags({2}), q), negate(atl_x(ags({3}), q)),
                              atl_x(ags({1, 2}), r)});
    case 31: return atl_g(ags({1, 2, 3}), atl_g(ags({2, 3, 4}), Formula::band(p, q)));
    case 32:
        return Formula::band(atl_g(ags({1, 2, 3}), atl_g(ags({2, 3}), Formula::band(p, q))),
                             atl_x(ags({4}), nat("p")));
    case 33: return negate(negate(atl_u(ags({1}), p, q)));
    case 34: return negate(Formula::bor(atl_g(ags({1}), p), atl_g(ags({1}), nat("p"))));
    case 35: return negate(Formula::band(atl_g(ags({1}), p), atl_g(ags({1}), nat("p"))));
    case 36: return negate(atl_u(ags({1}), p, negate(atl_u(ags({2}), q, r))));
    case 37: return Formula::band(atl_g(ags({1}), nat("q")), atl_u(ags({2}), p, q));
    case 38: return Formula::band(atl_g(ags({1}), p), negate(atl_g(ags({1, 2}), p)));
    case 39: return Formula::band(negate(atl_x(ags({1}), p)), atl_x(ags({2}), nat("p")));
    case 40: return Formula::band(atl_x(ags({1}), p), atl_x(ags({2}), nat("p")));
    case 41:
        return Formula::conj({atl_u(ags({1}), p, q), atl_u(ags({2}), q, r),
                              atl_g(ags({2}), nat("r"))});
    case 42:
        return Formula::conj({atl_u(ags({1}), p, q), atl_u(ags({2}), q, r),
                              atl_g(ags({1}), nat("r"))});
    default: throw std::invalid_argument("atl_suite index out of range");
    }
}

void need(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

} // namespace

Formula fml_rabin(int k, const StepShape& psi) {
    std::vector<int> prefix;
    return Formula::mu(rabin_var(2 * k + 1, {}), rabin_disj(k, 2 * k, prefix, psi));
}

Formula atl_x(AgentSet d, Formula f) { return Formula::cdia(d, std::move(f)); }

Formula atl_g(AgentSet d, Formula f) {
    return Formula::nu("GX", Formula::band(std::move(f), Formula::cdia(d, Formula::var("GX"))));
}

Formula atl_f(AgentSet d, Formula f) {
    return Formula::mu("FX", Formula::bor(std::move(f), Formula::cdia(d, Formula::var("FX"))));
}

Formula atl_u(AgentSet d, Formula a, Formula b) {
    return Formula::mu("UX", Formula::bor(std::move(b),
                                          Formula::band(std::move(a),
                                                        Formula::cdia(d, Formula::var("UX")))));
}

const std::vector<BenchFamily>& bench_families() {
    static const std::vector<BenchFamily> fams = {
        {"cardinality", 1, "graded successor counting, satisfiable"},
        {"cardinality_u", 1, "graded successor counting, unsatisfiable"},
        {"tree_u", 1, "graded trees, unsatisfiable"},
        {"parity_to_buechi", 2, "negated parity-to-buechi inclusion, unsatisfiable"},
        {"rabin_to_buechi", 2, "negated rabin-to-buechi inclusion, unsatisfiable"},
        {"rabin_to_rpair", 2, "negated rabin-to-pair inclusion, unsatisfiable"},
        {"rabin_game", 2, "negated graded rabin game claim, unsatisfiable"},
        {"atl_nest", 1, "nested coalition goals, alternately sat and unsat"},
        {"atl_nested_u", 1, "nested negated until goals"},
        {"atl_suite", 1, "fixed list of coalition formulas, 1..42"},
    };
    return fams;
}

BenchCase bench_case(const std::string& family, const std::vector<int>& params) {
    BenchCase c;
    c.family = family;
    c.params = params;
    auto p = [&](size_t i) { return params[i]; };
    const BenchFamily* fam = nullptr;
    for (const BenchFamily& f : bench_families())
        if (f.name == family) { fam = &f; break; }
    need(fam != nullptr, "unknown benchmark family");
    need(params.size() == fam->arity, "wrong number of parameters");

    if (family == "cardinality" || family == "cardinality_u") {
        need(p(0) >= 1, "cardinality needs n >= 1");
        c.logic = LogicId::Graded;
        c.formula = fml_cardinality(p(0), family == "cardinality_u");
        c.expected = family == "cardinality" ? Expected::Sat : Expected::Unsat;
    } else if (family == "tree_u") {
        need(p(0) >= 1, "tree_u needs n >= 1");
        c.logic = LogicId::Graded;
        c.formula = fml_tree_u(p(0));
        c.expected = Expected::Unsat;
    } else if (family == "parity_to_buechi") {
        need(p(0) >= 1 && p(1) >= 1, "parity_to_buechi needs n >= 1 and k >= 1");
        c.logic = LogicId::Graded;
        c.formula = Formula::band(fml_parity(p(0), p(1)), negate(fml_buechi_graded(p(0), p(1))));
        c.expected = Expected::Unsat;
    } else if (family == "rabin_to_buechi" || family == "rabin_to_rpair" ||
               family == "rabin_game") {
        need(p(0) >= 1 && p(0) <= 3, "rabin families need 1 <= k <= 3");
        need(p(1) >= 0, "rabin families need n >= 0");
        c.logic = LogicId::Graded;
        if (family == "rabin_to_buechi") c.formula = fml_rabin_to_buechi(p(0), p(1));
        else if (family == "rabin_to_rpair") c.formula = fml_rabin_to_rpair(p(0), p(1));
        else c.formula = fml_rabin_game(p(0), p(1));
        c.expected = Expected::Unsat;
    } else if (family == "atl_nest") {
        need(p(0) >= 0, "atl_nest needs n >= 0");
        c.logic = LogicId::Amc;
        c.agents = 2;
        c.formula = fml_atl_nest(p(0));
        c.expected = p(0) % 2 ? Expected::Unsat : Expected::Sat;
    } else if (family == "atl_nested_u") {
        need(p(0) >= 0, "atl_nested_u needs n >= 0");
        c.logic = LogicId::Amc;
        c.agents = 2;
        c.formula = fml_atl_nested_u(p(0));
        c.expected = Expected::Unknown;
    } else if (family == "atl_suite") {
        need(p(0) >= 1 && p(0) <= 42, "atl_suite needs 1 <= i <= 42");
        c.logic = LogicId::Amc;
        c.agents = 4;
        c.formula = fml_atl_suite(p(0));
        c.expected = Expected::Unknown;
    }
    return c;
}

std::vector<BenchCase> bench_corpus() {
    std::vector<BenchCase> out;
    auto add = [&](const char* f, std::vector<int> ps) {
        out.push_back(bench_case(f, std::move(ps)));
    };
    add("cardinality", {1});
    add("cardinality", {2});
    add("cardinality_u", {1});
    add("cardinality_u", {2});
    add("tree_u", {1});
    add("tree_u", {2});
    add("parity_to_buechi", {1, 1});
    add("parity_to_buechi", {2, 1});
    add("parity_to_buechi", {1, 2});
    add("rabin_to_buechi", {1, 1});
    add("rabin_to_rpair", {1, 1});
    add("rabin_game", {1, 1});
    for (int n = 0; n <= 3; ++n) add("atl_nest", {n});
    for (int n = 0; n <= 3; ++n) add("atl_nested_u", {n});
    for (int i = 1; i <= 42; ++i) add("atl_suite", {i});
    return out;
}

} // namespace musat
