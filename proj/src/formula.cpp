#include "musat/formula.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace musat {

const char* logic_name(LogicId id) {
    switch (id) {
    case LogicId::K: return "k";
    case LogicId::KD: return "kd";
    case LogicId::Graded: return "graded";
    case LogicId::Amc: return "amc";
    }
    return "?";
}

std::optional<LogicId> logic_from_name(const std::string& name) {
    if (name == "k") return LogicId::K;
    if (name == "kd") return LogicId::KD;
    if (name == "graded") return LogicId::Graded;
    if (name == "amc") return LogicId::Amc;
    return std::nullopt;
}

ModalOp ModalOp::dual() const {
    ModalOp d = *this;
    switch (kind) {
    case ModKind::Atom: d.kind = ModKind::NegAtom; break;
    case ModKind::NegAtom: d.kind = ModKind::Atom; break;
    case ModKind::Dia: d.kind = ModKind::Box; break;
    case ModKind::Box: d.kind = ModKind::Dia; break;
    case ModKind::GDia: d.kind = ModKind::GBox; break;
    case ModKind::GBox: d.kind = ModKind::GDia; break;
    case ModKind::CDia: d.kind = ModKind::CBox; break;
    case ModKind::CBox: d.kind = ModKind::CDia; break;
    }
    return d;
}

std::string ModalOp::str() const {
    switch (kind) {
    case ModKind::Atom: return atom;
    case ModKind::NegAtom: return "!" + atom;
    case ModKind::Dia: return "<>";
    case ModKind::Box: return "[]";
    case ModKind::GDia: return "<" + std::to_string(grade) + ">";
    case ModKind::GBox: return "[" + std::to_string(grade) + "]";
    case ModKind::CDia:
    case ModKind::CBox: {
        std::string s(1, kind == ModKind::CDia ? '<' : '[');
        s += '{';
        bool first = true;
        for (int i = 0; i < 64; ++i) {
            if (agents & (AgentSet(1) << i)) {
                if (!first) s += ',';
                s += std::to_string(i + 1);
                first = false;
            }
        }
        s += '}';
        s += kind == ModKind::CDia ? '>' : ']';
        return s;
    }
    }
    return "?";
}

bool ModalOp::operator==(const ModalOp& o) const {
    return kind == o.kind && grade == o.grade && agents == o.agents && atom == o.atom;
}

namespace {

uint64_t mix(uint64_t h, uint64_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Formula make(NodeKind k, ModalOp op, std::string var, FRef a, FRef b) {
    auto n = std::make_shared<FNode>();
    n->kind = k;
    n->op = std::move(op);
    n->var = std::move(var);
    n->a = std::move(a);
    n->b = std::move(b);
    uint64_t h = 0x100000001b3ULL * (uint64_t(k) + 1);
    h = mix(h, uint64_t(n->op.kind));
    h = mix(h, n->op.grade);
    h = mix(h, n->op.agents);
    h = mix(h, std::hash<std::string>{}(n->op.atom));
    h = mix(h, std::hash<std::string>{}(n->var));
    if (n->a) h = mix(h, n->a->hash);
    if (n->b) h = mix(h, n->b->hash);
    n->hash = h;
    return Formula(std::move(n));
}

} // namespace

Formula Formula::bot() { return make(NodeKind::Bot, {}, {}, nullptr, nullptr); }
Formula Formula::top() { return make(NodeKind::Top, {}, {}, nullptr, nullptr); }

Formula Formula::atom(const std::string& name) {
    ModalOp op;
    op.kind = ModKind::Atom;
    op.atom = name;
    return modal(op);
}

Formula Formula::natom(const std::string& name) {
    ModalOp op;
    op.kind = ModKind::NegAtom;
    op.atom = name;
    return modal(op);
}

Formula Formula::var(const std::string& name) {
    return make(NodeKind::Var, {}, name, nullptr, nullptr);
}

Formula Formula::band(Formula l, Formula r) {
    return make(NodeKind::And, {}, {}, l.node_, r.node_);
}

Formula Formula::bor(Formula l, Formula r) {
    return make(NodeKind::Or, {}, {}, l.node_, r.node_);
}

Formula Formula::modal(ModalOp op) {
    if (!op.nullary()) throw std::invalid_argument("modal operator needs an argument");
    return make(NodeKind::Modal, std::move(op), {}, nullptr, nullptr);
}

Formula Formula::modal(ModalOp op, Formula arg) {
    if (op.nullary()) throw std::invalid_argument("literal takes no argument");
    return make(NodeKind::Modal, std::move(op), {}, arg.node_, nullptr);
}

Formula Formula::mu(const std::string& name, Formula body) {
    return make(NodeKind::Mu, {}, name, body.node_, nullptr);
}

Formula Formula::nu(const std::string& name, Formula body) {
    return make(NodeKind::Nu, {}, name, body.node_, nullptr);
}

Formula Formula::dia(Formula arg) {
    ModalOp op;
    op.kind = ModKind::Dia;
    return modal(op, std::move(arg));
}

Formula Formula::box(Formula arg) {
    ModalOp op;
    op.kind = ModKind::Box;
    return modal(op, std::move(arg));
}

Formula Formula::gdia(uint32_t grade, Formula arg) {
    ModalOp op;
    op.kind = ModKind::GDia;
    op.grade = grade;
    return modal(op, std::move(arg));
}

Formula Formula::gbox(uint32_t grade, Formula arg) {
    ModalOp op;
    op.kind = ModKind::GBox;
    op.grade = grade;
    return modal(op, std::move(arg));
}

Formula Formula::cdia(AgentSet agents, Formula arg) {
    ModalOp op;
    op.kind = ModKind::CDia;
    op.agents = agents;
    return modal(op, std::move(arg));
}

Formula Formula::cbox(AgentSet agents, Formula arg) {
    ModalOp op;
    op.kind = ModKind::CBox;
    op.agents = agents;
    return modal(op, std::move(arg));
}

Formula Formula::conj(const std::vector<Formula>& parts) {
    if (parts.empty()) return top();
    Formula acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) acc = band(parts[i], acc);
    return acc;
}

Formula Formula::disj(const std::vector<Formula>& parts) {
    if (parts.empty()) return bot();
    Formula acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) acc = bor(parts[i], acc);
    return acc;
}

bool same(const Formula& x, const Formula& y) {
    if (x.raw() == y.raw()) return true;
    if (!x.valid() || !y.valid()) return false;
    if (x.hash() != y.hash() || x.kind() != y.kind()) return false;
    switch (x.kind()) {
    case NodeKind::Bot:
    case NodeKind::Top: return true;
    case NodeKind::Var: return x.varname() == y.varname();
    case NodeKind::Modal:
        if (!(x.op() == y.op())) return false;
        return x.op().nullary() || same(x.child(), y.child());
    case NodeKind::And:
    case NodeKind::Or: return same(x.left(), y.left()) && same(x.right(), y.right());
    case NodeKind::Mu:
    case NodeKind::Nu: return x.varname() == y.varname() && same(x.child(), y.child());
    }
    return false;
}

Formula negate(const Formula& f) {
    switch (f.kind()) {
    case NodeKind::Bot: return Formula::top();
    case NodeKind::Top: return Formula::bot();
    case NodeKind::And: return Formula::bor(negate(f.left()), negate(f.right()));
    case NodeKind::Or: return Formula::band(negate(f.left()), negate(f.right()));
    case NodeKind::Modal: {
        ModalOp d = f.op().dual();
        if (d.nullary()) return Formula::modal(d);
        return Formula::modal(d, negate(f.child()));
    }
    case NodeKind::Var: return f;
    case NodeKind::Mu: return Formula::nu(f.varname(), negate(f.child()));
    case NodeKind::Nu: return Formula::mu(f.varname(), negate(f.child()));
    }
    throw std::logic_error("bad node kind");
}

namespace {

Formula subst_rec(const Formula& f, const std::string& var, const Formula& repl,
                  std::unordered_map<const FNode*, Formula>& memo) {
    auto it = memo.find(f.raw());
    if (it != memo.end()) return it->second;
    Formula out = f;
    switch (f.kind()) {
    case NodeKind::Bot:
    case NodeKind::Top: break;
    case NodeKind::Var:
        if (f.varname() == var) out = repl;
        break;
    case NodeKind::Modal:
        if (!f.op().nullary()) {
            Formula c = subst_rec(f.child(), var, repl, memo);
            if (c.raw() != f.child().raw()) out = Formula::modal(f.op(), c);
        }
        break;
    case NodeKind::And:
    case NodeKind::Or: {
        Formula l = subst_rec(f.left(), var, repl, memo);
        Formula r = subst_rec(f.right(), var, repl, memo);
        if (l.raw() != f.left().raw() || r.raw() != f.right().raw())
            out = f.kind() == NodeKind::And ? Formula::band(l, r) : Formula::bor(l, r);
        break;
    }
    case NodeKind::Mu:
    case NodeKind::Nu:
        if (f.varname() != var) {
            Formula c = subst_rec(f.child(), var, repl, memo);
            if (c.raw() != f.child().raw())
                out = f.kind() == NodeKind::Mu ? Formula::mu(f.varname(), c)
                                               : Formula::nu(f.varname(), c);
        }
        break;
    }
    memo.emplace(f.raw(), out);
    return out;
}

} // namespace

Formula substitute(const Formula& f, const std::string& var, const Formula& repl) {
    std::unordered_map<const FNode*, Formula> memo;
    return subst_rec(f, var, repl, memo);
}

namespace {

void free_rec(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
    case NodeKind::Bot:
    case NodeKind::Top: break;
    case NodeKind::Var: out.insert(f.varname()); break;
    case NodeKind::Modal:
        if (!f.op().nullary()) free_rec(f.child(), out);
        break;
    case NodeKind::And:
    case NodeKind::Or:
        free_rec(f.left(), out);
        free_rec(f.right(), out);
        break;
    case NodeKind::Mu:
    case NodeKind::Nu: {
        std::set<std::string> inner;
        free_rec(f.child(), inner);
        inner.erase(f.varname());
        out.insert(inner.begin(), inner.end());
        break;
    }
    }
}

template <class Fn> void walk(const Formula& f, Fn&& fn) {
    fn(f);
    switch (f.kind()) {
    case NodeKind::Bot:
    case NodeKind::Top:
    case NodeKind::Var: break;
    case NodeKind::Modal:
        if (!f.op().nullary()) walk(f.child(), fn);
        break;
    case NodeKind::And:
    case NodeKind::Or:
        walk(f.left(), fn);
        walk(f.right(), fn);
        break;
    case NodeKind::Mu:
    case NodeKind::Nu: walk(f.child(), fn);
    }
}

} // namespace

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    free_rec(f, out);
    return out;
}

std::vector<std::string> collect_atoms(const Formula& f) {
    std::set<std::string> seen;
    walk(f, [&](const Formula& g) {
        if (g.kind() == NodeKind::Modal && g.op().nullary()) seen.insert(g.op().atom);
    });
    return {seen.begin(), seen.end()};
}

int max_agent(const Formula& f) {
    AgentSet all = 0;
    walk(f, [&](const Formula& g) {
        if (g.kind() == NodeKind::Modal) all |= g.op().agents;
    });
    return std::bit_width(all);
}

size_t formula_size(const Formula& f) {
    size_t n = 0;
    walk(f, [&](const Formula&) { ++n; });
    return n;
}

namespace {

// precedence contexts for printing: 0 takes anything, 1 rejects bare or,
// 2 rejects bare and/or; binders print bare only in tail position, where
// their maximal-right body cannot capture following tokens
void print_rec(const Formula& f, int prec, bool tail, std::string& out) {
    switch (f.kind()) {
    case NodeKind::Bot: out += "false"; break;
    case NodeKind::Top: out += "true"; break;
    case NodeKind::Var: out += f.varname(); break;
    case NodeKind::Modal:
        out += f.op().str();
        if (!f.op().nullary()) print_rec(f.child(), 2, false, out);
        break;
    case NodeKind::Or: {
        bool par = prec > 0;
        if (par) out += '(';
        print_rec(f.left(), 1, false, out);
        out += " | ";
        print_rec(f.right(), 0, true, out);
        if (par) out += ')';
        break;
    }
    case NodeKind::And: {
        bool par = prec > 1;
        if (par) out += '(';
        print_rec(f.left(), 2, false, out);
        out += " & ";
        print_rec(f.right(), 1, par || tail, out);
        if (par) out += ')';
        break;
    }
    case NodeKind::Mu:
    case NodeKind::Nu: {
        bool par = !tail;
        if (par) out += '(';
        out += f.kind() == NodeKind::Mu ? "mu " : "nu ";
        out += f.varname();
        out += ". ";
        print_rec(f.child(), 0, true, out);
        if (par) out += ')';
        break;
    }
    }
}

} // namespace

std::string Formula::str() const {
    std::string out;
    print_rec(*this, 0, true, out);
    return out;
}

namespace {

struct Binders {
    std::vector<Formula> node;
    std::vector<std::string> name;
    std::vector<bool> isMu;
    std::vector<int> lastInside; // highest binder index in the subtree
    std::unordered_map<std::string, int> byName;
};

int collect_binders(const Formula& f, Binders& out) {
    int last = -1;
    switch (f.kind()) {
    case NodeKind::Bot:
    case NodeKind::Top:
    case NodeKind::Var: break;
    case NodeKind::Modal:
        if (!f.op().nullary()) last = collect_binders(f.child(), out);
        break;
    case NodeKind::And:
    case NodeKind::Or:
        last = std::max(collect_binders(f.left(), out), collect_binders(f.right(), out));
        break;
    case NodeKind::Mu:
    case NodeKind::Nu: {
        int idx = int(out.node.size());
        if (!out.byName.emplace(f.varname(), idx).second)
            throw std::invalid_argument("formula not clean: duplicate binder " + f.varname());
        out.node.push_back(f);
        out.name.push_back(f.varname());
        out.isMu.push_back(f.kind() == NodeKind::Mu);
        out.lastInside.push_back(idx);
        int sub = collect_binders(f.child(), out);
        out.lastInside[idx] = std::max(idx, sub);
        last = out.lastInside[idx];
        break;
    }
    }
    return last;
}

} // namespace

FormulaAnalysis analyze(const Formula& f) {
    Binders bs;
    collect_binders(f, bs);
    size_t nb = bs.node.size();

    // free binder variables per binder body
    std::vector<std::vector<int>> freeOfBody(nb);
    for (size_t i = 0; i < nb; ++i) {
        for (const auto& v : free_vars(bs.node[i].child())) {
            auto it = bs.byName.find(v);
            if (it != bs.byName.end()) freeOfBody[i].push_back(it->second);
        }
    }

    // reach[i][j]: variable j is active wherever i is, via bodies
    std::vector<std::vector<char>> reach(nb, std::vector<char>(nb, 0));
    for (size_t i = 0; i < nb; ++i)
        for (int j : freeOfBody[i]) reach[i][j] = 1;
    for (size_t k = 0; k < nb; ++k)
        for (size_t i = 0; i < nb; ++i)
            if (reach[i][k])
                for (size_t j = 0; j < nb; ++j)
                    if (reach[k][j]) reach[i][j] = 1;

    auto active_closure = [&](const std::set<std::string>& fv) {
        std::vector<char> act(nb, 0);
        for (const auto& v : fv) {
            auto it = bs.byName.find(v);
            if (it == bs.byName.end()) continue;
            act[it->second] = 1;
            for (size_t j = 0; j < nb; ++j)
                if (reach[it->second][j]) act[j] = 1;
        }
        return act;
    };

    FormulaAnalysis res;
    res.binders.resize(nb);

    // levels, innermost binders first; a binder's level grows past any
    // opposite kind binder inside its body in which its variable is active
    std::vector<int> level(nb, 1);
    for (size_t ii = nb; ii-- > 0;) {
        for (int j = int(ii) + 1; j <= bs.lastInside[ii]; ++j) {
            if (bs.isMu[j] == bs.isMu[ii]) continue;
            auto act = active_closure(free_vars(bs.node[j]));
            if (act[ii]) level[ii] = std::max(level[ii], 1 + level[j]);
        }
    }

    int depth = 0;
    for (size_t i = 0; i < nb; ++i) {
        auto& b = res.binders[i];
        b.name = bs.name[i];
        b.isMu = bs.isMu[i];
        b.level = level[i];
        if (b.isMu)
            b.priority = level[i] % 2 == 0 ? level[i] : level[i] + 1;
        else
            b.priority = level[i] % 2 == 1 ? level[i] : level[i] + 1;
        depth = std::max(depth, level[i]);
    }
    res.alternationDepth = depth;

    // a conjunction may carry at most one conjunct with a free mu variable
    res.aconjunctive = true;
    walk(f, [&](const Formula& g) {
        if (g.kind() != NodeKind::And || !res.aconjunctive) return;
        int cnt = 0;
        for (const Formula& c : {g.left(), g.right()}) {
            for (const auto& v : free_vars(c)) {
                auto it = bs.byName.find(v);
                if (it != bs.byName.end() && bs.isMu[it->second]) {
                    ++cnt;
                    break;
                }
            }
        }
        if (cnt > 1) res.aconjunctive = false;
    });

    return res;
}

int FormulaAnalysis::priority_of(const std::string& binder) const {
    for (const auto& b : binders)
        if (b.name == binder) return b.priority;
    throw std::out_of_range("unknown binder " + binder);
}

int alternation_depth(const Formula& f) { return analyze(f).alternationDepth; }

bool is_aconjunctive(const Formula& f) { return analyze(f).aconjunctive; }

namespace {

Formula rename_rec(const Formula& f, std::vector<std::pair<std::string, std::string>>& scope,
                   std::unordered_set<std::string>& taken) {
    switch (f.kind()) {
    case NodeKind::Bot:
    case NodeKind::Top: return f;
    case NodeKind::Var:
        for (size_t i = scope.size(); i-- > 0;)
            if (scope[i].first == f.varname())
                return scope[i].second == f.varname() ? f : Formula::var(scope[i].second);
        return f;
    case NodeKind::Modal: {
        if (f.op().nullary()) return f;
        Formula c = rename_rec(f.child(), scope, taken);
        return c.raw() == f.child().raw() ? f : Formula::modal(f.op(), c);
    }
    case NodeKind::And:
    case NodeKind::Or: {
        Formula l = rename_rec(f.left(), scope, taken);
        Formula r = rename_rec(f.right(), scope, taken);
        if (l.raw() == f.left().raw() && r.raw() == f.right().raw()) return f;
        return f.kind() == NodeKind::And ? Formula::band(l, r) : Formula::bor(l, r);
    }
    case NodeKind::Mu:
    case NodeKind::Nu: {
        std::string fresh = f.varname();
        if (taken.count(fresh)) {
            int c = 1;
            do
                fresh = f.varname() + std::to_string(c++);
            while (taken.count(fresh));
        }
        taken.insert(fresh);
        scope.emplace_back(f.varname(), fresh);
        Formula body = rename_rec(f.child(), scope, taken);
        scope.pop_back();
        if (fresh == f.varname() && body.raw() == f.child().raw()) return f;
        return f.kind() == NodeKind::Mu ? Formula::mu(fresh, body) : Formula::nu(fresh, body);
    }
    }
    throw std::logic_error("bad node kind");
}

// replaces occurrences of bound variables not yet behind a modal step;
// the binder map carries whether the variable came from mu or nu
Formula unguard_rec(const Formula& f, std::vector<std::pair<std::string, bool>>& open) {
    switch (f.kind()) {
    case NodeKind::Bot:
    case NodeKind::Top: return f;
    case NodeKind::Var:
        for (size_t i = open.size(); i-- > 0;)
            if (open[i].first == f.varname())
                return open[i].second ? Formula::bot() : Formula::top();
        return f;
    case NodeKind::Modal: {
        if (f.op().nullary()) return f;
        std::vector<std::pair<std::string, bool>> none;
        Formula c = unguard_rec(f.child(), none);
        return c.raw() == f.child().raw() ? f : Formula::modal(f.op(), c);
    }
    case NodeKind::And:
    case NodeKind::Or: {
        Formula l = unguard_rec(f.left(), open);
        Formula r = unguard_rec(f.right(), open);
        if (l.raw() == f.left().raw() && r.raw() == f.right().raw()) return f;
        return f.kind() == NodeKind::And ? Formula::band(l, r) : Formula::bor(l, r);
    }
    case NodeKind::Mu:
    case NodeKind::Nu: {
        open.emplace_back(f.varname(), f.kind() == NodeKind::Mu);
        Formula body = unguard_rec(f.child(), open);
        open.pop_back();
        if (body.raw() == f.child().raw()) return f;
        return f.kind() == NodeKind::Mu ? Formula::mu(f.varname(), body)
                                        : Formula::nu(f.varname(), body);
    }
    }
    throw std::logic_error("bad node kind");
}

} // namespace

Formula normalize(const Formula& f) {
    std::unordered_set<std::string> taken;
    for (const auto& a : collect_atoms(f)) taken.insert(a);
    std::vector<std::pair<std::string, std::string>> scope;
    Formula renamed = rename_rec(f, scope, taken);
    std::vector<std::pair<std::string, bool>> open;
    return unguard_rec(renamed, open);
}

} // namespace musat
