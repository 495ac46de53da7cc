#include "doctest.h"

#include <map>
#include <random>
#include <set>
#include <vector>

#include "musat/determinize.hpp"
#include "oracle/lasso.hpp"
#include "oracle/randgen.hpp"

using namespace musat;
using oracle::Lasso;

namespace {

ClosureIndex close_of(const char* text, LogicId logic = LogicId::K) {
    Formula f = normalize(parse(text, logic));
    return closure(f, analyze(f));
}

struct Chi {
    ClosureIndex cl;
    int chi, psi, orN, andN, diaPsi, diaChi;

    explicit Chi(const char* text = "mu Z. nu X. (<>X & <>Z) | p") {
        cl = close_of(text);
        chi = cl.root;
        psi = cl.kids[chi][0];
        orN = cl.kids[psi][0];
        andN = cl.kids[orN][0];
        diaPsi = cl.kids[andN][0];
        diaChi = cl.kids[andN][1];
    }

    std::vector<Letter> saturate() const {
        return {Letter::unfold(chi), Letter::unfold(psi), Letter::choose(orN, 0),
                Letter::split(andN)};
    }
};

} // namespace

TEST_CASE("mode routing") {
    CHECK(route_mode(close_of("mu X. p | <>X")) == Mode::MH);
    CHECK(route_mode(close_of("mu Z. <>Z | nu X. p & <>X")) == Mode::MH);
    CHECK(route_mode(close_of("mu Z. nu X. (<>X & <>Z) | p")) == Mode::Perm);
    CHECK(route_mode(close_of("nu X. mu Y. (p & <>X) | <>Y")) == Mode::Perm);
    CHECK_THROWS_AS(route_mode(close_of("mu X. nu Y. (<>(X & q) & <>(X | q)) | p")),
                    FragmentError);
}

TEST_CASE("breakpoint construction walks the eventually formula") {
    ClosureIndex cl = close_of("mu X. p | <>X");
    int chi = cl.root;
    int orN = cl.kids[chi][0];
    int p = cl.kids[orN][1];
    Determinizer det(cl, Mode::MH);

    MacroState m = det.initial();
    CHECK(m.S == std::vector<int32_t>{int32_t(chi)});
    CHECK(m.O == m.S); // the mu root still owes its breakpoint

    StepResult r1 = det.step(m, Letter::unfold(chi));
    CHECK(r1.pri == 1);
    CHECK(r1.next.S == std::vector<int32_t>{int32_t(orN)});

    StepResult r2 = det.step(r1.next, Letter::choose(orN, 1));
    CHECK(r2.pri == 1);
    CHECK(r2.next.S == std::vector<int32_t>{int32_t(p)});

    // the literal dies on the modal step, so everything owed is delivered
    StepResult r3 = det.step(r2.next, Letter::modal({}));
    CHECK(r3.pri == 2);
    CHECK(r3.next.S.empty());

    // an empty macro state keeps hitting breakpoints
    StepResult r4 = det.step(r3.next, Letter::modal({}));
    CHECK(r4.pri == 2);
    CHECK(r4.next.S.empty());
}

TEST_CASE("breakpoint construction spares safety loops") {
    ClosureIndex cl = close_of("nu X. p & <>X");
    int n = cl.root;
    int andN = cl.kids[n][0];
    int p = cl.kids[andN][0];
    int diaN = cl.kids[andN][1];
    REQUIRE(cl.cls[diaN] == SatClass::Modal);
    Determinizer det(cl, Mode::MH);

    MacroState m = det.initial();
    CHECK(m.O.empty()); // nu roots owe nothing
    int pris[4] = {0, 0, 0, 0};
    const Letter word[4] = {Letter::unfold(n), Letter::split(andN), Letter::modal({diaN}),
                            Letter::unfold(n)};
    for (int i = 0; i < 4; ++i) {
        StepResult r = det.step(m, word[i]);
        pris[i] = r.pri;
        m = r.next;
    }
    // the split hands the freshly owed conjuncts out, everything else is a
    // breakpoint; in the loop the owed set drains on every modal step
    CHECK(pris[0] == 2);
    CHECK(pris[1] == 1);
    CHECK(pris[2] == 2);
    CHECK(pris[3] == 2);
    (void)p;
}

TEST_CASE("breakpoint macro space stays within the set bound") {
    ClosureIndex cl = close_of("mu X. (p | <>X) | []X");
    Determinizer det(cl, Mode::MH);

    std::vector<Letter> letters;
    std::vector<int> modals;
    for (int v = 0; v < cl.n(); ++v) {
        switch (cl.cls[v]) {
        case SatClass::Or:
            letters.push_back(Letter::choose(v, 0));
            letters.push_back(Letter::choose(v, 1));
            break;
        case SatClass::And: letters.push_back(Letter::split(v)); break;
        case SatClass::Fix: letters.push_back(Letter::unfold(v)); break;
        case SatClass::Modal: modals.push_back(v); break;
        case SatClass::Literal: break;
        }
    }
    for (uint64_t mask = 0; mask < (uint64_t{1} << modals.size()); ++mask) {
        std::vector<int> kappa;
        for (size_t i = 0; i < modals.size(); ++i)
            if (mask >> i & 1) kappa.push_back(modals[i]);
        letters.push_back(Letter::modal(kappa));
    }

    std::map<std::string, MacroState> seen;
    std::vector<MacroState> queue{det.initial()};
    seen.emplace(det.initial().key(Mode::MH), det.initial());
    while (!queue.empty()) {
        MacroState m = std::move(queue.back());
        queue.pop_back();
        for (const Letter& l : letters) {
            StepResult r = det.step(m, l);
            // stepping the same letter twice is deterministic
            CHECK(det.step(m, l).next.key(Mode::MH) == r.next.key(Mode::MH));
            auto key = r.next.key(Mode::MH);
            if (!seen.count(key)) {
                seen.emplace(key, r.next);
                queue.push_back(r.next);
            }
            CHECK(r.pri <= det.maxEmit());
        }
    }
    long bound = 1;
    for (int i = 0; i < cl.n(); ++i) bound *= 3;
    CHECK(long(seen.size()) <= bound);
}

TEST_CASE("ranked tree construction on the alternating example") {
    Chi x;
    Determinizer det(x.cl, Mode::Perm);

    // seven closure states, copies for the even priorities zero and two
    CHECK(det.buechiStates() == 7 * 3);
    CHECK(det.buechiInitial() == x.chi);
    bool anyAcc = false;
    for (int q = 0; q < det.buechiStates(); ++q) anyAcc = anyAcc || det.buechiAccepting(q);
    CHECK(anyAcc);
    CHECK_FALSE(det.buechiAccepting(x.chi)); // base copies never accept

    MacroState m = det.initial();
    REQUIRE(m.tree.size() == 1);
    CHECK(m.tree[0].label == std::vector<int32_t>{int32_t(x.chi)});
    CHECK(det.label_of(m) == std::vector<int32_t>{int32_t(x.chi)});

    for (const Letter& l : x.saturate()) m = det.step(m, l).next;
    auto lab = det.label_of(m);
    std::vector<int32_t> expect{int32_t(std::min(x.diaPsi, x.diaChi)),
                                int32_t(std::max(x.diaPsi, x.diaChi))};
    CHECK(lab == expect);
}

TEST_CASE("tree determinization matches the run oracle on picked words") {
    Chi x;
    Determinizer det(x.cl, Mode::Perm);

    // staying on the inner loop leaves no accepting trace
    Lasso stay;
    stay.word = x.saturate();
    stay.word.push_back(Letter::modal({x.diaPsi}));
    stay.loopStart = 0;
    CHECK_FALSE(oracle::lasso_accepts_tracking(x.cl, stay));
    CHECK(oracle::lasso_accepts_determinized(det, stay));

    // going through the outer variable unfolds the mu forever
    Lasso outer;
    outer.word = x.saturate();
    outer.word.push_back(Letter::modal({x.diaChi}));
    outer.loopStart = 0;
    CHECK(oracle::lasso_accepts_tracking(x.cl, outer));
    CHECK_FALSE(oracle::lasso_accepts_determinized(det, outer));

    // alternating the two modal picks still hides a run through the mu:
    // it hops inner, outer, inner, outer and dominates with priority two
    Lasso alt;
    alt.word = x.saturate();
    alt.word.push_back(Letter::modal({x.diaPsi}));
    for (const Letter& l : x.saturate()) alt.word.push_back(l);
    alt.word.push_back(Letter::modal({x.diaChi}));
    alt.loopStart = 0;
    CHECK(oracle::lasso_accepts_tracking(x.cl, alt));
    CHECK_FALSE(oracle::lasso_accepts_determinized(det, alt));
}

TEST_CASE("determinization complements the tracker on random lassos") {
    std::mt19937_64 rng(20240817);
    const char* shapes[] = {
        "mu Z. nu X. (<>X & <>Z) | p",
        "mu B. nu G. (<>G & <>B) | s",
        "mu X. p | <>X",
        "nu X. (p & <>X) | mu Y. q | <>Y",
    };
    for (const char* text : shapes) {
        ClosureIndex cl = close_of(text);
        Determinizer det(cl, route_mode(cl));
        for (int round = 0; round < 250; ++round) {
            Lasso w = oracle::random_lasso(rng, cl, rng() % 4, 1 + rng() % 5);
            bool tracker = oracle::lasso_accepts_tracking(cl, w);
            bool macro = oracle::lasso_accepts_determinized(det, w);
            CHECK(macro == !tracker);
        }
    }
}

TEST_CASE("the buechi copies accept the same lassos as the tracker") {
    std::mt19937_64 rng(5150);
    const char* shapes[] = {
        "mu Z. nu X. (<>X & <>Z) | p",
        "nu X. p & <>X",
    };
    for (const char* text : shapes) {
        ClosureIndex cl = close_of(text);
        Determinizer det(cl, Mode::Perm);
        for (int round = 0; round < 150; ++round) {
            Lasso w = oracle::random_lasso(rng, cl, rng() % 3, 1 + rng() % 4);
            CHECK(oracle::lasso_accepts_buechi_copies(det, w) ==
                  oracle::lasso_accepts_tracking(cl, w));
        }
    }
}
