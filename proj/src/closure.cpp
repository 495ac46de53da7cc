#include "musat/closure.hpp"

#include <algorithm>
#include <unordered_map>

namespace musat {

namespace {

struct Interner {
    std::unordered_map<uint64_t, std::vector<int>> byHash;

    int lookup(const ClosureIndex& cl, const Formula& f) const {
        auto it = byHash.find(f.hash());
        if (it == byHash.end()) return -1;
        for (int id : it->second)
            if (same(cl.nodes[id], f)) return id;
        return -1;
    }
};

SatClass classify(const Formula& f) {
    switch (f.kind()) {
    case NodeKind::Bot:
    case NodeKind::Top: return SatClass::Literal;
    case NodeKind::Modal: return f.op().nullary() ? SatClass::Literal : SatClass::Modal;
    case NodeKind::And: return SatClass::And;
    case NodeKind::Or: return SatClass::Or;
    case NodeKind::Mu:
    case NodeKind::Nu: return SatClass::Fix;
    case NodeKind::Var: break;
    }
    throw std::invalid_argument("open formula reached the closure");
}

} // namespace

int ClosureIndex::maxPriority() const {
    int m = 0;
    for (int p : priority) m = std::max(m, p);
    return m;
}

int ClosureIndex::find(const Formula& f) const {
    for (int i = 0; i < n(); ++i)
        if (same(nodes[i], f)) return i;
    return -1;
}

ClosureIndex closure(const Formula& f, const FormulaAnalysis& an, int maxNodes) {
    ClosureIndex cl;
    cl.alternationDepth = an.alternationDepth;
    cl.aconjunctive = an.aconjunctive;
    Interner in;

    auto intern = [&](const Formula& g) {
        int id = in.lookup(cl, g);
        if (id >= 0) return id;
        id = cl.n();
        if (id >= maxNodes) throw BudgetError("closure larger than the node limit");
        cl.nodes.push_back(g);
        cl.cls.push_back(classify(g));
        cl.kids.push_back({-1, -1});
        cl.priority.push_back(g.kind() == NodeKind::Mu || g.kind() == NodeKind::Nu
                                  ? an.priority_of(g.varname())
                                  : 0);
        in.byHash[g.hash()].push_back(id);
        return id;
    };

    cl.root = intern(f);
    for (int v = 0; v < cl.n(); ++v) {
        Formula g = cl.nodes[v];
        switch (cl.cls[v]) {
        case SatClass::Literal: break;
        case SatClass::Modal: cl.kids[v][0] = intern(g.child()); break;
        case SatClass::And:
        case SatClass::Or:
            cl.kids[v][0] = intern(g.left());
            cl.kids[v][1] = intern(g.right());
            break;
        case SatClass::Fix:
            cl.kids[v][0] = intern(substitute(g.child(), g.varname(), g));
            break;
        }
    }
    return cl;
}

} // namespace musat
