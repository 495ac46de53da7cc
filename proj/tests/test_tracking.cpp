#include "doctest.h"

#include <algorithm>

#include "musat/closure.hpp"
#include "musat/tracking.hpp"

using namespace musat;

namespace {

struct Chi {
    ClosureIndex cl;
    int chi, psi, orN, andN, diaPsi, diaChi, p;

    Chi() {
        Formula f = normalize(parse("mu Z. nu X. (<>X & <>Z) | p", LogicId::K));
        cl = closure(f, analyze(f));
        chi = cl.root;
        psi = cl.kids[chi][0];
        orN = cl.kids[psi][0];
        andN = cl.kids[orN][0];
        p = cl.kids[orN][1];
        diaPsi = cl.kids[andN][0];
        diaChi = cl.kids[andN][1];
    }
};

std::vector<int> step(const TrackingAutomaton& ta, int state, const Letter& l) {
    std::vector<int> out;
    ta.delta(state, l, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("tracking follows saturation letters") {
    Chi x;
    TrackingAutomaton ta(x.cl);

    CHECK(step(ta, x.chi, Letter::unfold(x.chi)) == std::vector<int>{x.psi});
    CHECK(step(ta, x.orN, Letter::choose(x.orN, 0)) == std::vector<int>{x.andN});
    CHECK(step(ta, x.orN, Letter::choose(x.orN, 1)) == std::vector<int>{x.p});
    std::vector<int> both{std::min(x.diaPsi, x.diaChi), std::max(x.diaPsi, x.diaChi)};
    CHECK(step(ta, x.andN, Letter::split(x.andN)) == both);

    // letters addressed elsewhere carry the state along unchanged
    CHECK(step(ta, x.p, Letter::unfold(x.chi)) == std::vector<int>{x.p});
    CHECK(step(ta, x.diaChi, Letter::choose(x.orN, 1)) == std::vector<int>{x.diaChi});
}

TEST_CASE("modal letters keep chosen modalities only") {
    Chi x;
    TrackingAutomaton ta(x.cl);
    Letter pick = Letter::modal({x.diaPsi});

    CHECK(step(ta, x.diaPsi, pick) == std::vector<int>{x.psi});
    CHECK(step(ta, x.diaChi, pick).empty()); // unpicked modality dies
    CHECK(step(ta, x.p, pick).empty());      // literals die on modal steps
    CHECK(step(ta, x.orN, pick).empty());    // unsaturated states die too

    Letter none = Letter::modal({});
    CHECK(step(ta, x.diaPsi, none).empty());
}

TEST_CASE("tracking priorities are the closure priorities") {
    Chi x;
    TrackingAutomaton ta(x.cl);
    CHECK(ta.priority(x.chi) == 2);
    CHECK(ta.priority(x.psi) == 1);
    CHECK(ta.priority(x.orN) == 0);
    CHECK(ta.priority(x.p) == 0);
}

TEST_CASE("modal letters normalize their sets") {
    Letter l = Letter::modal({5, 3, 5});
    CHECK(l.kappa == std::vector<int>{3, 5});
}

TEST_CASE("letters print with their closure nodes") {
    Chi x;
    CHECK(Letter::unfold(x.chi).str(x.cl).substr(0, 6) == "unfold");
    CHECK(Letter::modal({x.p}).str(x.cl) == "modal{p}");
}
