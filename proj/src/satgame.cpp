#include "musat/satgame.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "musat/errors.hpp"

namespace musat {

bool schedule_should_solve(Schedule s, size_t nodes, size_t lastSolveNodes, bool first) {
    if (s == Schedule::Once) return false;
    if (first) return true;
    return nodes >= 2 * lastSolveNodes;
}

std::vector<SatMove> core_saturations(const Determinizer& det, const MacroState& from,
                                      int wordCap) {
    const ClosureIndex& cl = det.closureIndex();
    if (wordCap <= 0) wordCap = cl.n() * cl.n() + 1;
    std::vector<SatMove> out;
    std::set<std::pair<std::string, int>> seen, emitted;
    std::deque<std::tuple<MacroState, int, int>> work;
    seen.insert({from.key(det.mode()), 0});
    work.push_back({from, 0, 0});
    while (!work.empty()) {
        auto [m, pri, depth] = std::move(work.front());
        work.pop_front();
        std::vector<int32_t> label = det.label_of(m);
        // bottom and clashing literals never leave a label again
        if (!literal_consistent(cl, label)) continue;
        int32_t u = -1;
        for (int32_t id : label)
            if (!cl.saturated(id)) { u = id; break; }
        if (u < 0) {
            if (emitted.insert({m.key(det.mode()), pri}).second)
                out.push_back({std::move(m), pri});
            continue;
        }
        if (depth >= wordCap) throw BudgetError("saturation word exceeded the length cap");
        std::vector<Letter> letters;
        switch (cl.cls[u]) {
        case SatClass::Or:
            letters.push_back(Letter::choose(u, 0));
            letters.push_back(Letter::choose(u, 1));
            break;
        case SatClass::And: letters.push_back(Letter::split(u)); break;
        case SatClass::Fix: letters.push_back(Letter::unfold(u)); break;
        default: break;
        }
        for (const Letter& l : letters) {
            StepResult r = det.step(m, l);
            int npri = std::max(pri, r.pri);
            auto key = std::make_pair(r.next.key(det.mode()), npri);
            if (seen.insert(key).second)
                work.push_back({std::move(r.next), npri, depth + 1});
        }
    }
    return out;
}

SatGame::SatGame(const ClosureIndex& cl, const RunConfig& cfg)
    : cl_(&cl), cfg_(cfg), det_(cl, route_mode(cl)) {
    root_ = intern(det_.initial());
}

int32_t SatGame::intern(const MacroState& m) {
    std::string key = m.key(det_.mode());
    auto it = byKey_.find(key);
    if (it != byKey_.end()) return it->second;
    if (cfg_.maxNodes && nodes_.size() >= cfg_.maxNodes)
        throw BudgetError("game node budget exceeded");
    int32_t id = int32_t(nodes_.size());
    Node n;
    n.macro = m;
    n.label = det_.label_of(m);
    n.isState = true;
    for (int32_t v : n.label)
        if (!cl_->saturated(v) || cl_->nodes[v].kind() == NodeKind::Bot) {
            n.isState = false;
            break;
        }
    n.literalOk = literal_consistent(*cl_, n.label);
    nodes_.push_back(std::move(n));
    status_.push_back(NodeStatus::Unknown);
    byKey_.emplace(std::move(key), id);
    frontier_.push(id);
    return id;
}

void SatGame::expand(int32_t v) {
    if (nodes_[v].expanded) return;
    if (nodes_[v].isState) expand_state(v);
    else expand_core(v);
    nodes_[v].expanded = true;
}

void SatGame::expand_core(int32_t v) {
    std::vector<SatMove> sats = core_saturations(det_, nodes_[v].macro);
    std::set<std::pair<int32_t, int>> dedup;
    for (SatMove& sm : sats) {
        int32_t t = intern(sm.target);
        if (dedup.insert({t, sm.pri}).second)
            nodes_[v].coreMoves.push_back({t, sm.pri, 0});
    }
}

void SatGame::expand_state(int32_t v) {
    const MacroState macro = nodes_[v].macro;
    std::vector<int32_t> modalIds;
    for (int32_t id : nodes_[v].label)
        if (cl_->cls[id] == SatClass::Modal) modalIds.push_back(id);

    if (cfg_.engine == Engine::OneStep) {
        size_t g = modalIds.size();
        if (g > 16) throw BudgetError("too many modal literals in one label");
        OneStepPair pair;
        std::unordered_map<int32_t, int> varOf;
        std::vector<int> varAt(g, 0);
        for (size_t i = 0; i < g; ++i) {
            int32_t arg = cl_->kids[modalIds[i]][0];
            auto it = varOf.find(arg);
            int var;
            if (it != varOf.end()) var = it->second;
            else {
                var = pair.nvars++;
                if (pair.nvars > kMaxOneStepVars)
                    throw BudgetError("too many distinct modal arguments");
                varOf.emplace(arg, var);
            }
            varAt[i] = var;
            pair.gamma.push_back({cl_->nodes[modalIds[i]].op(), var});
        }
        std::set<std::tuple<uint64_t, int32_t, int>> dedup;
        for (uint64_t mask = 0; mask < (uint64_t(1) << g); ++mask) {
            std::vector<int> kappa;
            uint64_t profile = 0;
            for (size_t i = 0; i < g; ++i)
                if (mask >> i & 1) {
                    kappa.push_back(modalIds[i]);
                    profile |= uint64_t(1) << varAt[i];
                }
            StepResult r = det_.step(macro, Letter::modal(std::move(kappa)));
            int32_t t = intern(r.next);
            if (dedup.insert({profile, t, r.pri}).second)
                nodes_[v].stateMoves.push_back({t, r.pri, profile});
        }
        nodes_[v].pair = std::move(pair);
        return;
    }

    std::vector<RuleApplication> apps =
        tableau_applications(*cl_, modalIds, cfg_.logic, cfg_.agents);
    for (RuleApplication& app : apps) {
        std::vector<Move> ms;
        std::set<std::pair<int32_t, int>> dedup;
        for (std::vector<int32_t>& clause : app.clauses) {
            std::vector<int> kappa(clause.begin(), clause.end());
            StepResult r = det_.step(macro, Letter::modal(std::move(kappa)));
            int32_t t = intern(r.next);
            if (dedup.insert({t, r.pri}).second) ms.push_back({t, r.pri, 0});
        }
        nodes_[v].appMoves.push_back(std::move(ms));
    }
}

void SatGame::check_deadline() const {
    if (hasDeadline_ && std::chrono::steady_clock::now() > deadline_)
        throw BudgetError("time budget exceeded");
}

BitSet SatGame::solve_side(bool existential, const PriorityMap& pm) {
    const size_t n = nodes_.size();
    auto inZ = [&](const std::vector<BitSet>& Z, const Move& m) {
        return Z[pm.toCompressed[m.pri]].test(size_t(m.target));
    };

    auto run_pair = [&](const Node& nd, std::vector<uint64_t> theta) {
        OneStepPair p;
        p.nvars = nd.pair.nvars;
        p.gamma = nd.pair.gamma;
        std::sort(theta.begin(), theta.end());
        theta.erase(std::unique(theta.begin(), theta.end()), theta.end());
        p.theta = std::move(theta);
        return one_step_sat(p, cfg_.logic, cfg_.agents);
    };

    // memoized on the availability mask when it fits a word
    auto onestep_with = [&](Node& nd, uint64_t availMask) {
        auto it = nd.osMemo.find(availMask);
        if (it != nd.osMemo.end()) return it->second != 0;
        std::vector<uint64_t> theta;
        for (size_t i = 0; i < nd.stateMoves.size(); ++i)
            if (availMask >> i & 1) theta.push_back(nd.stateMoves[i].profile);
        bool r = run_pair(nd, std::move(theta));
        nd.osMemo.emplace(availMask, r ? 1 : 0);
        return r;
    };

    std::function<BitSet(const std::vector<BitSet>&)> F;
    if (existential) {
        F = [&](const std::vector<BitSet>& Z) {
            BitSet out(n);
            for (size_t v = 0; v < n; ++v) {
                Node& nd = nodes_[v];
                if (!nd.expanded) continue;
                bool good = false;
                if (!nd.isState) {
                    for (const Move& m : nd.coreMoves)
                        if (nodes_[m.target].expanded && inZ(Z, m)) { good = true; break; }
                } else if (!nd.literalOk) {
                    good = false;
                } else if (cfg_.engine == Engine::OneStep) {
                    uint64_t avail = 0;
                    std::vector<uint64_t> theta;
                    bool small = nd.stateMoves.size() <= 64;
                    for (size_t i = 0; i < nd.stateMoves.size(); ++i) {
                        const Move& m = nd.stateMoves[i];
                        if (nodes_[m.target].expanded && inZ(Z, m)) {
                            if (small) avail |= uint64_t(1) << i;
                            else theta.push_back(m.profile);
                        }
                    }
                    good = small ? onestep_with(nd, avail) : run_pair(nd, std::move(theta));
                } else {
                    good = true;
                    for (const auto& app : nd.appMoves) {
                        bool any = false;
                        for (const Move& m : app)
                            if (nodes_[m.target].expanded && inZ(Z, m)) { any = true; break; }
                        if (!any) { good = false; break; }
                    }
                }
                if (good) out.set(v);
            }
            return out;
        };
    } else {
        F = [&](const std::vector<BitSet>& Z) {
            BitSet out(n);
            for (size_t v = 0; v < n; ++v) {
                Node& nd = nodes_[v];
                if (!nd.expanded) continue; // unknown nodes are never claimed
                bool bad = false;
                if (!nd.isState) {
                    bad = true;
                    for (const Move& m : nd.coreMoves)
                        if (!nodes_[m.target].expanded || !inZ(Z, m)) { bad = false; break; }
                } else if (!nd.literalOk) {
                    bad = true;
                } else if (cfg_.engine == Engine::OneStep) {
                    // grant the opponent every successor not yet shown losing
                    uint64_t avail = 0;
                    std::vector<uint64_t> theta;
                    bool small = nd.stateMoves.size() <= 64;
                    for (size_t i = 0; i < nd.stateMoves.size(); ++i) {
                        const Move& m = nd.stateMoves[i];
                        if (!nodes_[m.target].expanded || !inZ(Z, m)) {
                            if (small) avail |= uint64_t(1) << i;
                            else theta.push_back(m.profile);
                        }
                    }
                    bad = !(small ? onestep_with(nd, avail) : run_pair(nd, std::move(theta)));
                } else {
                    for (const auto& app : nd.appMoves) {
                        bool all = true;
                        for (const Move& m : app)
                            if (!nodes_[m.target].expanded || !inZ(Z, m)) { all = false; break; }
                        if (all) { bad = true; break; }
                    }
                }
                if (bad) out.set(v);
            }
            return out;
        };
    }

    auto tick = [&]() {
        ++stats_.solveSteps;
        check_deadline();
    };
    return nested_fixpoint(n, pm.top, F, existential, tick);
}

SatGame::Regions SatGame::solve_partial() {
    ++stats_.solveCalls;
    std::vector<int> occ{0};
    for (const Node& nd : nodes_) {
        if (!nd.expanded) continue;
        for (const Move& m : nd.coreMoves) occ.push_back(m.pri);
        for (const Move& m : nd.stateMoves) occ.push_back(m.pri);
        for (const auto& app : nd.appMoves)
            for (const Move& m : app) occ.push_back(m.pri);
    }
    PriorityMap pm = compress_priorities(std::move(occ));
    Regions r;
    r.winE = solve_side(true, pm);
    r.winA = solve_side(false, pm);
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (r.winE.test(i) && r.winA.test(i))
            throw std::logic_error("winning regions overlap");
    apply_marks(r);
    return r;
}

void SatGame::apply_marks(const Regions& r) {
    for (size_t i = 0; i < nodes_.size(); ++i) {
        NodeStatus ns = r.winE.test(i)   ? NodeStatus::SatWin
                        : r.winA.test(i) ? NodeStatus::UnsatWin
                                         : NodeStatus::Unknown;
        if (status_[i] != NodeStatus::Unknown && ns != status_[i])
            throw std::logic_error("node status changed between passes");
        status_[i] = ns;
    }
}

Verdict SatGame::run() {
    auto t0 = std::chrono::steady_clock::now();
    if (cfg_.timeoutSec > 0) {
        deadline_ = t0 + std::chrono::microseconds(int64_t(cfg_.timeoutSec * 1e6));
        hasDeadline_ = true;
    }
    size_t lastSolveNodes = 0;
    bool first = true;
    bool done = false;
    Verdict verdict = Verdict::Unsat;
    try {
        while (!frontier_.empty()) {
            check_deadline();
            int32_t v = frontier_.front();
            frontier_.pop();
            if (nodes_[v].expanded) continue;
            expand(v);
            ++stats_.nodesExpanded;
            if (schedule_should_solve(cfg_.schedule, stats_.nodesExpanded, lastSolveNodes, first)) {
                first = false;
                lastSolveNodes = stats_.nodesExpanded;
                Regions r = solve_partial();
                if (r.winE.test(root_)) { verdict = Verdict::Sat; done = true; break; }
                if (r.winA.test(root_)) { verdict = Verdict::Unsat; done = true; break; }
            }
        }
        if (!done) {
            Regions r = solve_partial();
            // the game is complete here, so the regions have to partition it
            for (size_t i = 0; i < nodes_.size(); ++i)
                if (r.winE.test(i) == r.winA.test(i))
                    throw std::logic_error("complete game left a node undecided");
            verdict = r.winE.test(root_) ? Verdict::Sat : Verdict::Unsat;
        }
    } catch (...) {
        stats_.nodesInterned = nodes_.size();
        stats_.wallMs = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        throw;
    }
    stats_.nodesInterned = nodes_.size();
    stats_.wallMs =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return verdict;
}

std::string SatGame::dump() const {
    std::ostringstream os;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const Node& nd = nodes_[i];
        os << '#' << i << (nd.isState ? " state" : " core");
        if (!nd.expanded) os << " pending";
        os << " {";
        for (size_t j = 0; j < nd.label.size(); ++j) {
            if (j) os << ", ";
            os << cl_->nodes[nd.label[j]].str();
        }
        os << "}\n";
        for (const Move& m : nd.coreMoves)
            os << "  sat -> #" << m.target << " pri " << m.pri << "\n";
        for (const Move& m : nd.stateMoves)
            os << "  mod(" << std::hex << m.profile << std::dec << ") -> #" << m.target
               << " pri " << m.pri << "\n";
        for (size_t a = 0; a < nd.appMoves.size(); ++a)
            for (const Move& m : nd.appMoves[a])
                os << "  app" << a << " -> #" << m.target << " pri " << m.pri << "\n";
    }
    return os.str();
}

} // namespace musat
