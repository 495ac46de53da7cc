#include "oracle/explicit_model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace musat::oracle {

namespace {

bool has_atom(const ExplicitModel& m, int s, const std::string& name) {
    const auto& v = m.val[s];
    return std::find(v.begin(), v.end(), name) != v.end();
}

int joint_count(const ExplicitModel& m, int s) {
    int total = 1;
    for (int a = 0; a < m.agents; ++a) total *= m.moves[s][a];
    return total;
}

// row-major decode, last agent fastest
std::vector<int> joint_decode(const ExplicitModel& m, int s, int idx) {
    std::vector<int> c(m.agents, 0);
    for (int a = m.agents - 1; a >= 0; --a) {
        c[a] = idx % m.moves[s][a];
        idx /= m.moves[s][a];
    }
    return c;
}

uint64_t project(const std::vector<int>& c, AgentSet who) {
    uint64_t key = 1;
    for (size_t a = 0; a < c.size(); ++a)
        if (who & (AgentSet{1} << a)) key = key * 97 + static_cast<uint64_t>(c[a]) + 1;
    return key;
}

bool eval_modal(const ExplicitModel& m, int s, const ModalOp& op, const std::vector<bool>& arg) {
    switch (op.kind) {
    case ModKind::Atom: return has_atom(m, s, op.atom);
    case ModKind::NegAtom: return !has_atom(m, s, op.atom);
    case ModKind::Dia:
        for (int t : m.edges[s])
            if (arg[t]) return true;
        return false;
    case ModKind::Box:
        for (int t : m.edges[s])
            if (!arg[t]) return false;
        return true;
    case ModKind::GDia: {
        long sum = 0;
        for (int t = 0; t < m.nstates; ++t)
            if (arg[t]) sum += m.mult[s][t];
        return sum > static_cast<long>(op.grade);
    }
    case ModKind::GBox: {
        long out = 0;
        for (int t = 0; t < m.nstates; ++t)
            if (!arg[t]) out += m.mult[s][t];
        return out <= static_cast<long>(op.grade);
    }
    case ModKind::CDia:
    case ModKind::CBox: {
        int total = joint_count(m, s);
        std::vector<uint64_t> keys(total);
        std::vector<int> idxOf(total);
        for (int j = 0; j < total; ++j) keys[j] = project(joint_decode(m, s, j), op.agents);
        // one class per distinct projection of the coalition's choices
        std::vector<uint64_t> seen;
        for (int j = 0; j < total; ++j) {
            if (std::find(seen.begin(), seen.end(), keys[j]) != seen.end()) continue;
            seen.push_back(keys[j]);
            bool all = true, some = false;
            for (int k = 0; k < total; ++k) {
                if (keys[k] != keys[j]) continue;
                if (arg[m.outcome[s][k]]) some = true;
                else all = false;
            }
            if (op.kind == ModKind::CDia && all) return true;
            if (op.kind == ModKind::CBox && !some) return false;
        }
        return op.kind == ModKind::CBox;
    }
    }
    return false;
}

using Env = std::map<std::string, std::vector<bool>>;

std::vector<bool> eval_rec(const ExplicitModel& m, const Formula& f, Env& env) {
    const int n = m.nstates;
    switch (f.kind()) {
    case NodeKind::Bot: return std::vector<bool>(n, false);
    case NodeKind::Top: return std::vector<bool>(n, true);
    case NodeKind::Var: {
        auto it = env.find(f.varname());
        if (it == env.end()) throw std::invalid_argument("free variable in eval: " + f.varname());
        return it->second;
    }
    case NodeKind::And: {
        auto l = eval_rec(m, f.left(), env), r = eval_rec(m, f.right(), env);
        for (int s = 0; s < n; ++s) l[s] = l[s] && r[s];
        return l;
    }
    case NodeKind::Or: {
        auto l = eval_rec(m, f.left(), env), r = eval_rec(m, f.right(), env);
        for (int s = 0; s < n; ++s) l[s] = l[s] || r[s];
        return l;
    }
    case NodeKind::Modal: {
        std::vector<bool> arg;
        if (!f.op().nullary()) arg = eval_rec(m, f.child(), env);
        std::vector<bool> res(n, false);
        for (int s = 0; s < n; ++s) res[s] = eval_modal(m, s, f.op(), arg);
        return res;
    }
    case NodeKind::Mu:
    case NodeKind::Nu: {
        std::vector<bool> cur(n, f.kind() == NodeKind::Nu);
        for (;;) {
            auto saved = env.find(f.varname());
            std::vector<bool> old;
            bool had = saved != env.end();
            if (had) old = saved->second;
            env[f.varname()] = cur;
            auto next = eval_rec(m, f.child(), env);
            if (had) env[f.varname()] = old;
            else env.erase(f.varname());
            if (next == cur) return cur;
            cur = next;
        }
    }
    }
    return std::vector<bool>(n, false);
}

uint32_t max_grade(const Formula& f) {
    if (!f.valid()) return 0;
    uint32_t g = 0;
    switch (f.kind()) {
    case NodeKind::Modal:
        g = f.op().grade;
        if (!f.op().nullary()) g = std::max(g, max_grade(f.child()));
        return g;
    case NodeKind::And:
    case NodeKind::Or: return std::max(max_grade(f.left()), max_grade(f.right()));
    case NodeKind::Mu:
    case NodeKind::Nu: return max_grade(f.child());
    default: return 0;
    }
}

bool any_true(const std::vector<bool>& v) {
    return std::find(v.begin(), v.end(), true) != v.end();
}

// exhaustive shapes for one or two states; returns true once eval confirms
bool exhaustive_small(const Formula& f, const std::vector<std::string>& atoms, LogicId logic,
                      int agents, int s) {
    const int na = static_cast<int>(atoms.size());
    if (s * na > 12) return false;
    const long nval = 1L << (s * na);

    auto fill_val = [&](ExplicitModel& m, long bits) {
        m.val.assign(s, {});
        for (int st = 0; st < s; ++st)
            for (int a = 0; a < na; ++a)
                if (bits >> (st * na + a) & 1) m.val[st].push_back(atoms[a]);
    };

    if (logic == LogicId::K || logic == LogicId::KD) {
        const long nrel = 1L << (s * s);
        for (long rel = 0; rel < nrel; ++rel) {
            ExplicitModel m;
            m.logic = logic;
            m.nstates = s;
            m.edges.assign(s, {});
            bool serial = true;
            for (int u = 0; u < s; ++u) {
                for (int v = 0; v < s; ++v)
                    if (rel >> (u * s + v) & 1) m.edges[u].push_back(v);
                if (m.edges[u].empty()) serial = false;
            }
            if (logic == LogicId::KD && !serial) continue;
            for (long bits = 0; bits < nval; ++bits) {
                fill_val(m, bits);
                if (any_true(eval_states(m, f))) return true;
            }
        }
        return false;
    }
    if (logic == LogicId::Graded) {
        const long cap = max_grade(f) + 1;
        long combos = 1;
        for (int i = 0; i < s * s; ++i) {
            combos *= cap + 1;
            if (combos > 200000) return false;
        }
        for (long code = 0; code < combos; ++code) {
            ExplicitModel m;
            m.logic = logic;
            m.nstates = s;
            m.mult.assign(s, std::vector<int>(s, 0));
            long rest = code;
            for (int u = 0; u < s; ++u)
                for (int v = 0; v < s; ++v) {
                    m.mult[u][v] = static_cast<int>(rest % (cap + 1));
                    rest /= cap + 1;
                }
            for (long bits = 0; bits < nval; ++bits) {
                fill_val(m, bits);
                if (any_true(eval_states(m, f))) return true;
            }
        }
        return false;
    }
    // Amc: move counts in {1,2}, full outcome tables
    if (agents > 2 || s > 2) return false;
    std::vector<std::vector<int>> moveOpts;
    for (int code = 0; code < 1 << agents; ++code) {
        std::vector<int> mv(agents);
        for (int a = 0; a < agents; ++a) mv[a] = (code >> a & 1) ? 2 : 1;
        moveOpts.push_back(mv);
    }
    // per state: a move-count choice plus an outcome table
    struct StateShape {
        std::vector<int> mv;
        std::vector<int> out;
    };
    std::vector<StateShape> shapes;
    for (const auto& mv : moveOpts) {
        int total = 1;
        for (int x : mv) total *= x;
        long tables = 1;
        for (int i = 0; i < total; ++i) tables *= s;
        for (long t = 0; t < tables; ++t) {
            StateShape sh;
            sh.mv = mv;
            long rest = t;
            for (int i = 0; i < total; ++i) {
                sh.out.push_back(static_cast<int>(rest % s));
                rest /= s;
            }
            shapes.push_back(sh);
        }
    }
    std::vector<size_t> pick(s, 0);
    for (;;) {
        ExplicitModel m;
        m.logic = LogicId::Amc;
        m.nstates = s;
        m.agents = agents;
        m.moves.assign(s, {});
        m.outcome.assign(s, {});
        for (int st = 0; st < s; ++st) {
            m.moves[st] = shapes[pick[st]].mv;
            m.outcome[st] = shapes[pick[st]].out;
        }
        for (long bits = 0; bits < nval; ++bits) {
            fill_val(m, bits);
            if (any_true(eval_states(m, f))) return true;
        }
        int i = s - 1;
        while (i >= 0 && ++pick[i] == shapes.size()) pick[i--] = 0;
        if (i < 0) break;
    }
    return false;
}

bool sampled(const Formula& f, const std::vector<std::string>& atoms, LogicId logic, int agents,
             int s, std::mt19937_64& rng, int trials) {
    const uint32_t cap = max_grade(f) + 1;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int t = 0; t < trials; ++t) {
        ExplicitModel m;
        m.logic = logic;
        m.nstates = s;
        m.agents = agents;
        m.val.assign(s, {});
        for (int st = 0; st < s; ++st)
            for (const auto& a : atoms)
                if (coin(rng)) m.val[st].push_back(a);
        if (logic == LogicId::K || logic == LogicId::KD) {
            m.edges.assign(s, {});
            for (int u = 0; u < s; ++u)
                for (int v = 0; v < s; ++v)
                    if (coin(rng)) m.edges[u].push_back(v);
            if (logic == LogicId::KD)
                for (int u = 0; u < s; ++u)
                    if (m.edges[u].empty())
                        m.edges[u].push_back(static_cast<int>(rng() % s));
        } else if (logic == LogicId::Graded) {
            m.mult.assign(s, std::vector<int>(s, 0));
            for (int u = 0; u < s; ++u)
                for (int v = 0; v < s; ++v)
                    if (coin(rng)) m.mult[u][v] = static_cast<int>(rng() % cap) + 1;
        } else {
            m.moves.assign(s, std::vector<int>(agents, 1));
            m.outcome.assign(s, {});
            for (int st = 0; st < s; ++st) {
                int total = 1;
                for (int a = 0; a < agents; ++a) {
                    m.moves[st][a] = 1 + static_cast<int>(rng() % 2);
                    total *= m.moves[st][a];
                }
                for (int j = 0; j < total; ++j)
                    m.outcome[st].push_back(static_cast<int>(rng() % s));
            }
        }
        if (any_true(eval_states(m, f))) return true;
    }
    return false;
}

} // namespace

std::vector<bool> eval_states(const ExplicitModel& m, const Formula& f) {
    Env env;
    return eval_rec(m, f, env);
}

bool eval_at(const ExplicitModel& m, int state, const Formula& f) {
    return eval_states(m, f)[state];
}

bool bounded_model_search(const Formula& f, LogicId logic, int agents, int maxStates,
                          uint64_t seed) {
    auto atoms = collect_atoms(f);
    std::mt19937_64 rng(seed);
    for (int s = 1; s <= maxStates; ++s) {
        if (s <= 2 && exhaustive_small(f, atoms, logic, agents, s)) return true;
        // exhaustive_small bails out on wide shapes, so sampling runs at every
        // size; it only wastes a little work where the enumeration was complete
        if (sampled(f, atoms, logic, agents, s, rng, s <= 2 ? 150 : 300)) return true;
    }
    return false;
}

} // namespace musat::oracle
