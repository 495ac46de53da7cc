#include "musat/tracking.hpp"

#include <algorithm>

namespace musat {

Letter Letter::choose(int node, int branch) {
    Letter l;
    l.kind = Kind::Choose;
    l.node = node;
    l.branch = branch;
    return l;
}

Letter Letter::split(int node) {
    Letter l;
    l.kind = Kind::Split;
    l.node = node;
    return l;
}

Letter Letter::unfold(int node) {
    Letter l;
    l.kind = Kind::Unfold;
    l.node = node;
    return l;
}

Letter Letter::modal(std::vector<int> kappa) {
    Letter l;
    l.kind = Kind::Modal;
    std::sort(kappa.begin(), kappa.end());
    kappa.erase(std::unique(kappa.begin(), kappa.end()), kappa.end());
    l.kappa = std::move(kappa);
    return l;
}

std::string Letter::str(const ClosureIndex& cl) const {
    switch (kind) {
    case Kind::Choose:
        return "choose" + std::to_string(branch) + "(" + cl.nodes[node].str() + ")";
    case Kind::Split: return "split(" + cl.nodes[node].str() + ")";
    case Kind::Unfold: return "unfold(" + cl.nodes[node].str() + ")";
    case Kind::Modal: {
        std::string s = "modal{";
        for (size_t i = 0; i < kappa.size(); ++i) {
            if (i) s += ", ";
            s += cl.nodes[kappa[i]].str();
        }
        return s + "}";
    }
    }
    return "?";
}

void TrackingAutomaton::delta(int state, const Letter& l, std::vector<int>& out) const {
    if (l.kind == Letter::Kind::Modal) {
        // only the arguments of the chosen modalities survive a modal step
        if (cl->cls[state] == SatClass::Modal &&
            std::binary_search(l.kappa.begin(), l.kappa.end(), state))
            out.push_back(cl->kids[state][0]);
        return;
    }
    if (state != l.node) {
        out.push_back(state);
        return;
    }
    switch (l.kind) {
    case Letter::Kind::Choose: out.push_back(cl->kids[state][l.branch]); break;
    case Letter::Kind::Split:
        out.push_back(cl->kids[state][0]);
        out.push_back(cl->kids[state][1]);
        break;
    case Letter::Kind::Unfold: out.push_back(cl->kids[state][0]); break;
    case Letter::Kind::Modal: break;
    }
}

} // namespace musat
