#include "musat/logic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "musat/errors.hpp"

namespace musat {

namespace {

uint64_t bit(int v) { return uint64_t(1) << v; }

AgentSet full_mask(int agents) {
    if (agents >= 64) return ~AgentSet(0);
    if (agents < 1) agents = 1;
    return (AgentSet(1) << agents) - 1;
}

} // namespace

bool literal_consistent(const ClosureIndex& cl, const std::vector<int32_t>& label) {
    std::set<std::string> pos, neg;
    for (int32_t v : label) {
        const Formula& f = cl.nodes[v];
        if (f.kind() == NodeKind::Bot) return false;
        if (f.kind() != NodeKind::Modal) continue;
        const ModalOp& op = f.op();
        if (op.kind == ModKind::Atom) pos.insert(op.atom);
        else if (op.kind == ModKind::NegAtom) neg.insert(op.atom);
    }
    for (const auto& a : pos)
        if (neg.count(a)) return false;
    return true;
}

bool one_step_sat_relational(const OneStepPair& pair, bool serial) {
    uint64_t boxes = 0;
    for (const auto& lit : pair.gamma)
        if (lit.op.kind == ModKind::Box) boxes |= bit(lit.var);
    bool anyDia = false;
    for (const auto& lit : pair.gamma) {
        if (lit.op.kind != ModKind::Dia) continue;
        anyDia = true;
        uint64_t need = boxes | bit(lit.var);
        bool found = false;
        for (uint64_t u : pair.theta)
            if ((u & need) == need) { found = true; break; }
        if (!found) return false;
    }
    if (serial && !anyDia) {
        for (uint64_t u : pair.theta)
            if ((u & boxes) == boxes) return true;
        return false;
    }
    return true;
}

bool one_step_sat_graded(const OneStepPair& pair) {
    struct DiaC { int var; int64_t need; };
    struct BoxC { int var; int64_t cap; };
    std::vector<DiaC> dias;
    std::vector<BoxC> boxes;
    uint32_t m = 0;
    for (const auto& lit : pair.gamma) {
        if (lit.op.kind == ModKind::GDia) {
            dias.push_back({lit.var, int64_t(lit.op.grade) + 1});
            m = std::max(m, lit.op.grade);
        } else if (lit.op.kind == ModKind::GBox) {
            boxes.push_back({lit.var, int64_t(lit.op.grade)});
        }
    }
    // the zero multiset settles every box bound
    if (dias.empty()) return true;

    const int64_t unit = int64_t(m) + 1;
    const int nt = int(pair.theta.size());

    // search per-profile weights in {0..m+1}, profiles feeding many
    // diamonds first; counters track collected diamond weight and the
    // weight escaping each box
    std::vector<int> order(nt);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> helps(nt, 0);
    for (int t = 0; t < nt; ++t)
        for (const auto& d : dias)
            if (pair.theta[t] & bit(d.var)) ++helps[t];
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return helps[a] > helps[b]; });

    std::vector<std::vector<int64_t>> suffix(dias.size(), std::vector<int64_t>(nt + 1, 0));
    for (size_t d = 0; d < dias.size(); ++d)
        for (int i = nt - 1; i >= 0; --i)
            suffix[d][i] = suffix[d][i + 1] +
                           ((pair.theta[order[i]] & bit(dias[d].var)) ? unit : 0);

    std::vector<int64_t> got(dias.size(), 0);
    std::vector<int64_t> missed(boxes.size(), 0);

    std::function<bool(int)> dfs = [&](int i) -> bool {
        bool allDias = true;
        for (size_t d = 0; d < dias.size(); ++d) {
            if (got[d] >= dias[d].need) continue;
            if (got[d] + suffix[d][i] < dias[d].need) return false;
            allDias = false;
        }
        if (allDias) return true; // leftover profiles take weight zero
        if (i == nt) return false;
        uint64_t u = pair.theta[order[i]];
        for (int64_t w = unit; w >= 0; --w) {
            bool fits = true;
            for (size_t b = 0; b < boxes.size(); ++b) {
                if (u & bit(boxes[b].var)) continue;
                missed[b] += w;
                if (missed[b] > boxes[b].cap) fits = false;
            }
            for (size_t d = 0; d < dias.size(); ++d)
                if (u & bit(dias[d].var)) got[d] += w;
            if (fits && dfs(i + 1)) return true;
            for (size_t b = 0; b < boxes.size(); ++b)
                if (!(u & bit(boxes[b].var))) missed[b] -= w;
            for (size_t d = 0; d < dias.size(); ++d)
                if (u & bit(dias[d].var)) got[d] -= w;
        }
        return false;
    };
    return dfs(0);
}

namespace {

// Outcome cells for a coalition label. Every realizable move structure
// produces, per joint move, a requirement consisting of a pairwise-disjoint
// family of diamonds (overlapping coalitions cannot be forced into the
// same joint move) plus the grand-coalition boxes, and each non-full box
// needs a fallback cell compatible with the diamonds enforced inside its
// coalition. The label is one-step satisfiable iff every maximal such
// requirement has a covering profile.
struct CoalCell {
    std::vector<int> dias;
    int box = -1;
};

std::vector<std::vector<int>> maximal_disjoint(const std::vector<AgentSet>& sets,
                                               const std::vector<int>& allowed) {
    if (allowed.size() > 16) throw BudgetError("coalition label too wide");
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    std::function<void(size_t, AgentSet)> rec = [&](size_t k, AgentSet used) {
        if (k == allowed.size()) {
            all.push_back(cur);
            return;
        }
        int i = allowed[k];
        if ((sets[i] & used) == 0) {
            cur.push_back(i);
            rec(k + 1, used | sets[i]);
            cur.pop_back();
        }
        rec(k + 1, used);
    };
    rec(0, 0);
    std::vector<std::vector<int>> out;
    for (auto& fam : all) {
        AgentSet used = 0;
        for (int i : fam) used |= sets[i];
        std::set<int> in(fam.begin(), fam.end());
        bool maximal = true;
        for (int i : allowed) {
            if (in.count(i)) continue;
            if ((sets[i] & used) == 0) { maximal = false; break; }
        }
        if (maximal) out.push_back(fam);
    }
    return out;
}

std::vector<CoalCell> coalition_cells(const std::vector<AgentSet>& dias,
                                      const std::vector<AgentSet>& pboxes) {
    std::vector<CoalCell> cells;
    std::vector<int> allIdx(dias.size());
    std::iota(allIdx.begin(), allIdx.end(), 0);
    for (auto& fam : maximal_disjoint(dias, allIdx)) {
        CoalCell c;
        c.dias = fam;
        cells.push_back(std::move(c));
    }
    for (size_t j = 0; j < pboxes.size(); ++j) {
        std::vector<int> compat;
        for (size_t i = 0; i < dias.size(); ++i)
            if ((dias[i] & ~pboxes[j]) == 0) compat.push_back(int(i));
        for (auto& fam : maximal_disjoint(dias, compat)) {
            CoalCell c;
            c.dias = fam;
            c.box = int(j);
            cells.push_back(std::move(c));
        }
    }
    return cells;
}

} // namespace

bool one_step_sat_coalition(const OneStepPair& pair, int agents) {
    // outcome functions land in the profile set, so no profile means no
    // structure at all, whatever the label says
    if (pair.theta.empty()) return false;
    AgentSet full = full_mask(agents);
    std::vector<AgentSet> diaAg, pboxAg;
    std::vector<int> diaVar, pboxVar;
    uint64_t fullArgs = 0;
    for (const auto& lit : pair.gamma) {
        if (lit.op.kind == ModKind::CDia) {
            diaAg.push_back(lit.op.agents & full);
            diaVar.push_back(lit.var);
        } else if (lit.op.kind == ModKind::CBox) {
            if ((lit.op.agents & full) == full) fullArgs |= bit(lit.var);
            else {
                pboxAg.push_back(lit.op.agents & full);
                pboxVar.push_back(lit.var);
            }
        }
    }
    for (const auto& cell : coalition_cells(diaAg, pboxAg)) {
        uint64_t need = fullArgs;
        for (int i : cell.dias) need |= bit(diaVar[i]);
        if (cell.box >= 0) need |= bit(pboxVar[cell.box]);
        bool found = false;
        for (uint64_t u : pair.theta)
            if ((u & need) == need) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

bool one_step_sat(const OneStepPair& pair, LogicId logic, int agents) {
    switch (logic) {
    case LogicId::K: return one_step_sat_relational(pair, false);
    case LogicId::KD: return one_step_sat_relational(pair, true);
    case LogicId::Graded: return one_step_sat_graded(pair);
    case LogicId::Amc: return one_step_sat_coalition(pair, agents);
    }
    return false;
}

std::vector<RuleApplication> tableau_applications(const ClosureIndex& cl,
                                                  const std::vector<int32_t>& modalIds,
                                                  LogicId logic, int agents) {
    if (logic == LogicId::Graded)
        throw FragmentError("no complete tableau rules for graded modalities; use the one-step engine");
    std::vector<RuleApplication> apps;
    if (logic == LogicId::K || logic == LogicId::KD) {
        std::vector<int32_t> dias, boxes;
        for (int32_t id : modalIds) {
            ModKind k = cl.nodes[id].op().kind;
            if (k == ModKind::Dia) dias.push_back(id);
            else if (k == ModKind::Box) boxes.push_back(id);
        }
        std::sort(boxes.begin(), boxes.end());
        for (int32_t d : dias) {
            RuleApplication app;
            app.premiss = boxes;
            app.premiss.push_back(d);
            std::sort(app.premiss.begin(), app.premiss.end());
            app.clauses.push_back(app.premiss);
            apps.push_back(std::move(app));
        }
        if (logic == LogicId::KD && dias.empty()) {
            // seriality forces a successor even from a box-only label
            RuleApplication app;
            app.premiss = boxes;
            app.clauses.push_back(boxes);
            apps.push_back(std::move(app));
        }
        return apps;
    }

    // alternating-time labels: one application per outcome cell, each with
    // a single clause; the game then has to realize all of them at once
    AgentSet full = full_mask(agents);
    std::vector<int32_t> diaIds, pboxIds, fullIds;
    std::vector<AgentSet> diaAg, pboxAg;
    for (int32_t id : modalIds) {
        const ModalOp& op = cl.nodes[id].op();
        if (op.kind == ModKind::CDia) {
            diaIds.push_back(id);
            diaAg.push_back(op.agents & full);
        } else if (op.kind == ModKind::CBox) {
            if ((op.agents & full) == full) fullIds.push_back(id);
            else {
                pboxIds.push_back(id);
                pboxAg.push_back(op.agents & full);
            }
        }
    }
    if (diaIds.empty() && pboxIds.empty() && fullIds.empty()) return apps;
    std::sort(fullIds.begin(), fullIds.end());
    std::set<std::vector<int32_t>> seen;
    for (const auto& cell : coalition_cells(diaAg, pboxAg)) {
        std::vector<int32_t> kappa = fullIds;
        for (int i : cell.dias) kappa.push_back(diaIds[i]);
        if (cell.box >= 0) kappa.push_back(pboxIds[cell.box]);
        std::sort(kappa.begin(), kappa.end());
        if (!seen.insert(kappa).second) continue;
        RuleApplication app;
        app.premiss = kappa;
        app.clauses.push_back(kappa);
        apps.push_back(std::move(app));
    }
    return apps;
}

} // namespace musat
