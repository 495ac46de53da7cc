#include "musat/determinize.hpp"

#include <algorithm>
#include <cassert>

namespace musat {

namespace {

void append_i32(std::string& s, int32_t v) {
    for (int b = 0; b < 4; ++b) s.push_back(char((uint32_t(v) >> (8 * b)) & 0xff));
}

void sort_unique(std::vector<int32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

std::string MacroState::key(Mode mode) const {
    std::string s;
    if (mode == Mode::MH) {
        s.push_back('M');
        append_i32(s, int32_t(S.size()));
        for (int32_t v : S) append_i32(s, v);
        for (int32_t v : O) append_i32(s, v);
    } else {
        s.push_back('P');
        for (const auto& t : tree) {
            append_i32(s, t.parent);
            append_i32(s, int32_t(t.label.size()));
            for (int32_t v : t.label) append_i32(s, v);
        }
    }
    return s;
}

Determinizer::Determinizer(const ClosureIndex& cl, Mode mode)
    : cl_(&cl), track_(cl), mode_(mode), nq_(cl.n()) {
    isNu_.resize(nq_, 0);
    for (int q = 0; q < nq_; ++q)
        if (cl.nodes[q].kind() == NodeKind::Nu) isNu_[q] = 1;
    for (int p = 0; p <= cl.maxPriority(); p += 2) evens_.push_back(p);
    nqb_ = nq_ * (1 + int(evens_.size()));
}

bool Determinizer::buechiAccepting(int qb) const {
    if (qb < nq_) return false;
    return cl_->priority[qb % nq_] == evens_[qb / nq_ - 1];
}

void Determinizer::buechiDelta(int qb, const Letter& l, std::vector<int32_t>& out) const {
    std::vector<int> succ;
    track_.delta(qb % nq_, l, succ);
    if (qb < nq_) {
        // base states may stay in the base or commit to an even priority cap
        for (int q : succ) out.push_back(q);
        for (size_t ei = 0; ei < evens_.size(); ++ei)
            for (int q : succ)
                if (cl_->priority[q] <= evens_[ei]) out.push_back(int32_t(nq_ * (1 + ei) + q));
    } else {
        int ei = qb / nq_ - 1;
        for (int q : succ)
            if (cl_->priority[q] <= evens_[ei]) out.push_back(int32_t(nq_ * (1 + ei) + q));
    }
}

MacroState Determinizer::initial() const {
    MacroState m;
    if (mode_ == Mode::MH) {
        m.S = {int32_t(cl_->root)};
        if (!isNu_[cl_->root]) m.O = m.S;
    } else {
        MacroState::TNode root;
        root.label = {int32_t(cl_->root)};
        root.parent = -1;
        m.tree.push_back(std::move(root));
    }
    return m;
}

StepResult Determinizer::step(const MacroState& m, const Letter& l) const {
    return mode_ == Mode::MH ? step_mh(m, l) : step_perm(m, l);
}

StepResult Determinizer::step_mh(const MacroState& m, const Letter& l) const {
    StepResult r;
    std::vector<int> buf;
    for (int32_t q : m.S) track_.delta(q, l, buf);
    r.next.S.assign(buf.begin(), buf.end());
    sort_unique(r.next.S);

    buf.clear();
    for (int32_t q : m.O) track_.delta(q, l, buf);
    std::vector<int32_t> owing;
    for (int q : buf)
        if (!isNu_[q]) owing.push_back(q);
    sort_unique(owing);

    if (owing.empty()) {
        // breakpoint: every tracked run has passed a nu node, start over
        r.pri = 2;
        for (int32_t q : r.next.S)
            if (!isNu_[q]) r.next.O.push_back(q);
    } else {
        r.pri = 1;
        r.next.O = std::move(owing);
    }
    return r;
}

StepResult Determinizer::step_perm(const MacroState& m, const Letter& l) const {
    int oldN = int(m.tree.size());
    std::vector<std::vector<int32_t>> lab(oldN);
    std::vector<int32_t> par(oldN);
    for (int i = 0; i < oldN; ++i) {
        for (int32_t q : m.tree[i].label) buechiDelta(q, l, lab[i]);
        sort_unique(lab[i]);
        par[i] = m.tree[i].parent;
    }

    // each old node spawns a youngest child holding its accepting part
    for (int i = 0; i < oldN; ++i) {
        std::vector<int32_t> acc;
        for (int32_t q : lab[i])
            if (buechiAccepting(q)) acc.push_back(q);
        if (!acc.empty()) {
            lab.push_back(std::move(acc));
            par.push_back(i);
        }
    }
    int total = int(lab.size());

    std::vector<std::vector<int>> children(total);
    for (int i = 0; i < total; ++i)
        if (par[i] >= 0) children[par[i]].push_back(i);

    // a state stays only in the oldest sibling that carries it
    std::vector<int32_t> seen;
    auto subtract = [&](auto&& self, int v, const std::vector<int32_t>& gone) -> void {
        std::vector<int32_t> kept;
        for (int32_t q : lab[v])
            if (!std::binary_search(gone.begin(), gone.end(), q)) kept.push_back(q);
        lab[v] = std::move(kept);
        for (int c : children[v]) self(self, c, gone);
    };
    for (int p = 0; p < total; ++p) {
        if (children[p].size() < 2) continue;
        seen.clear();
        for (int c : children[p]) {
            if (!seen.empty()) subtract(subtract, c, seen);
            seen.insert(seen.end(), lab[c].begin(), lab[c].end());
            sort_unique(seen);
        }
    }

    // deaths: old nodes drained empty; fresh empty spawns vanish silently
    std::vector<char> alive(total, 1);
    int deathRank = total + 1;
    for (int i = 0; i < total; ++i) {
        if (!lab[i].empty()) continue;
        alive[i] = 0;
        if (i < oldN) deathRank = std::min(deathRank, i + 1);
    }

    // greens: an old node whose live children cover it exactly collapses
    int greenRank = total + 1;
    std::vector<char> green(total, 0);
    for (int i = 0; i < oldN; ++i) {
        if (!alive[i]) continue;
        size_t cover = 0;
        for (int c : children[i])
            if (alive[c]) cover += lab[c].size(); // siblings are disjoint after dedup
        if (cover == lab[i].size() && cover > 0) {
            green[i] = 1;
            greenRank = std::min(greenRank, i + 1);
        }
    }

    StepResult r;
    int mhat = nqb_ + 1;
    if (greenRank <= total || deathRank <= total) {
        if (greenRank < deathRank)
            r.pri = 2 * (mhat - greenRank) + 1;
        else
            r.pri = 2 * (mhat - deathRank) + 2;
    }

    // collapse green subtrees, keep the green nodes themselves
    auto kill = [&](auto&& self, int v) -> void {
        for (int c : children[v]) {
            alive[c] = 0;
            self(self, c);
        }
    };
    for (int i = 0; i < total; ++i)
        if (green[i] && alive[i]) kill(kill, i);

    std::vector<int32_t> remap(total, -1);
    for (int i = 0; i < total; ++i) {
        if (!alive[i]) continue;
        MacroState::TNode t;
        t.label = std::move(lab[i]);
        t.parent = par[i] < 0 ? -1 : remap[par[i]];
        remap[i] = int32_t(r.next.tree.size());
        r.next.tree.push_back(std::move(t));
    }
    return r;
}

std::vector<int32_t> Determinizer::label_of(const MacroState& m) const {
    std::vector<int32_t> out;
    if (mode_ == Mode::MH) {
        out = m.S;
    } else if (!m.tree.empty()) {
        for (int32_t q : m.tree[0].label) out.push_back(q % nq_);
        sort_unique(out);
    }
    return out;
}

int Determinizer::maxEmit() const { return mode_ == Mode::MH ? 2 : 2 * (nqb_ + 1); }

Mode route_mode(const ClosureIndex& cl) {
    if (cl.alternationDepth <= 1) return Mode::MH;
    if (cl.aconjunctive) return Mode::Perm;
    throw FragmentError("formula is neither alternation-free nor aconjunctive");
}

} // namespace musat
