#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plmu/arena.hpp"
#include "plmu/denotational.hpp"
#include "plmu/errors.hpp"
#include "plmu/formula.hpp"
#include "plmu/game.hpp"
#include "plmu/gen.hpp"
#include "plmu/plts.hpp"
#include "plmu/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

using namespace plmu;

namespace {

const char* kCoin =
    "states: p z\n"
    "labels: a\n"
    "trans p a { p: 1/2, z: 1/2 }\n";

Formula prep(const std::string& s) { return toProductNormalForm(toNormalForm(parseFormula(s))); }

struct Instance {
    Plts m;
    Arena a;
    std::vector<double> v;
    Strategy s1;
    Strategy s2;

    Instance(const std::string& formula, const std::string& model = kCoin) : m(loadPlts(model)) {
        Formula f = prep(formula);
        AnnotateResult ar = annotateEnv(f, Env{}, m);
        a = buildArena(f, m, ar.env);
        v = annotateArenaValues(a, ar.env, m);
        s1 = makeGreedyStrategy(a, v, Owner::P1);
        s2 = makeGreedyStrategy(a, v, Owner::P2);
    }

    MarkovBranchingPlay play(uint32_t root) const { return {&a, root, s1, s2}; }
};

// True iff the tree contains the node path `states` starting at the root.
bool containsPath(const FiniteTree& t, const std::vector<uint32_t>& states) {
    if (t.nodes.empty() || states.empty() || t.nodes[0].state != states[0]) return false;
    uint32_t node = 0;
    for (size_t i = 1; i < states.size(); ++i) {
        bool found = false;
        for (uint32_t c : t.nodes[node].children)
            if (t.nodes[c].state == states[i]) {
                node = c;
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

} // namespace

TEST_CASE("greedy strategy picks by value") {
    Instance inst("X || Y"); // free X, Y resolve to Nature over the sinks
    uint32_t root = inst.a.roots[0];
    REQUIRE(inst.a.owner[root] == Owner::P1);
    REQUIRE(inst.a.edges[root].size() == 2);

    std::vector<double> v(inst.a.size(), 0.0);
    v[inst.a.edges[root][0]] = 0.3;
    v[inst.a.edges[root][1]] = 0.7;
    Strategy p1 = makeGreedyStrategy(inst.a, v, Owner::P1);
    Strategy p2 = makeGreedyStrategy(inst.a, v, Owner::P2);
    CHECK(*p1({root}) == inst.a.edges[root][1]);
    CHECK(*p2({root}) == inst.a.edges[root][0]);

    // Ties go to the earliest successor.
    std::vector<double> flat(inst.a.size(), 0.5);
    CHECK(*makeGreedyStrategy(inst.a, flat, Owner::P1)({root}) == inst.a.edges[root][0]);

    // Terminals yield no choice.
    CHECK(!p1({0}).has_value());
}

TEST_CASE("seeded strategy is deterministic and valid") {
    Instance inst("mu X. (<a><a>tt (+) X)");
    Strategy s = makeSeededStrategy(inst.a, 42);

    Rng rng(9);
    int queries = 0;
    for (int i = 0; i < 2000 && queries < 1000; ++i) {
        // Random walk to build plausible paths.
        std::vector<uint32_t> path{inst.a.roots[rng.below(2)]};
        while (!inst.a.terminal(path.back()) && path.size() < 12) {
            const auto& succ = inst.a.edges[path.back()];
            auto c = s(path);
            REQUIRE(c.has_value());
            CHECK(std::find(succ.begin(), succ.end(), *c) != succ.end());
            CHECK(*c == *s(path)); // repeated query agrees
            ++queries;
            path.push_back(succ[rng.below(succ.size())]);
        }
    }
    CHECK(queries >= 1000);

    // Different seeds differ somewhere on a 2-choice state.
    uint32_t branchy = inst.a.roots[0];
    std::vector<uint32_t> bp{branchy, inst.a.edges[branchy][0]};
    REQUIRE(inst.a.edges[bp.back()].size() == 2);
    bool differs = false;
    uint32_t first = *makeSeededStrategy(inst.a, 0)(bp);
    for (uint64_t seed = 1; seed <= 10 && !differs; ++seed)
        differs = *makeSeededStrategy(inst.a, seed)(bp) != first;
    CHECK(differs);
}

TEST_CASE("cylinderProb examples") {
    Instance inst("<a><a>tt");
    MarkovBranchingPlay m = inst.play(inst.a.roots[0]);

    // Root-only tree: empty product.
    FiniteTree root;
    root.nodes.push_back({inst.a.roots[0], 0, {}});
    CHECK(cylinderProb(m, root) == 1.0);

    // One resolved Nature choice: weight 1/2. Ids from the recorded coin
    // arena: 2 -> 4 (modal edge), 4 -> 5 with weight 0.5.
    FiniteTree f;
    f.nodes.push_back({2, 0, {1}});
    f.nodes.push_back({4, 0, {2}});
    f.nodes.push_back({5, 1, {}});
    CHECK(cylinderProb(m, f) == 0.5);

    // Wrong root.
    FiniteTree wrong;
    wrong.nodes.push_back({3, 0, {}});
    CHECK(cylinderProb(m, wrong) == 0.0);

    // Nature may not branch twice in one tree.
    FiniteTree twice;
    twice.nodes.push_back({2, 0, {1}});
    twice.nodes.push_back({4, 0, {2, 3}});
    twice.nodes.push_back({5, 1, {}});
    twice.nodes.push_back({6, 1, {}});
    CHECK(cylinderProb(m, twice) == 0.0);
}

TEST_CASE("cylinderProb strategy consistency") {
    Instance inst("X || Y");
    uint32_t root = inst.a.roots[0];
    uint32_t left = inst.a.edges[root][0];
    uint32_t right = inst.a.edges[root][1];

    std::vector<double> v(inst.a.size(), 0.0);
    v[right] = 1.0;
    Strategy s1 = makeGreedyStrategy(inst.a, v, Owner::P1);
    MarkovBranchingPlay m{&inst.a, root, s1, inst.s2};

    FiniteTree agree;
    agree.nodes.push_back({root, 0, {1}});
    agree.nodes.push_back({right, 0, {}});
    CHECK(cylinderProb(m, agree) == 1.0);

    FiniteTree contra;
    contra.nodes.push_back({root, 0, {1}});
    contra.nodes.push_back({left, 0, {}});
    CHECK(cylinderProb(m, contra) == 0.0);

    // A player node may not branch fully.
    FiniteTree both;
    both.nodes.push_back({root, 0, {1, 2}});
    both.nodes.push_back({left, 0, {}});
    both.nodes.push_back({right, 0, {}});
    CHECK(cylinderProb(m, both) == 0.0);
}

TEST_CASE("cylinderProb rejects malformed trees") {
    Instance inst("<a><a>tt");
    MarkovBranchingPlay m = inst.play(2);

    FiniteTree badEdge; // 2 -> 5 is not an arena edge
    badEdge.nodes.push_back({2, 0, {1}});
    badEdge.nodes.push_back({5, 0, {}});
    CHECK_THROWS_AS(cylinderProb(m, badEdge), ValidationError);

    FiniteTree badOrder; // child id not greater than parent
    badOrder.nodes.push_back({2, 0, {0}});
    CHECK_THROWS_AS(cylinderProb(m, badOrder), ValidationError);

    FiniteTree dupChild; // duplicate successor state under one node
    dupChild.nodes.push_back({2, 0, {1, 2}});
    dupChild.nodes.push_back({4, 0, {}});
    dupChild.nodes.push_back({4, 0, {}});
    CHECK_THROWS_AS(cylinderProb(m, dupChild), ValidationError);

    CHECK_THROWS_AS(cylinderProb(m, FiniteTree{}), ValidationError);
}

TEST_CASE("cylinder additivity over Nature resolutions") {
    Instance inst("<a><a>tt");
    MarkovBranchingPlay m = inst.play(2);

    // Extending the Nature leaf 4 by each of its children partitions the
    // cylinder: 0.5 + 0.5 = 1.
    FiniteTree base;
    base.nodes.push_back({2, 0, {1}});
    base.nodes.push_back({4, 0, {}});
    double whole = cylinderProb(m, base);
    double parts = 0.0;
    for (uint32_t t : inst.a.edges[4]) {
        FiniteTree ext = base;
        ext.nodes[1].children = {2};
        ext.nodes.push_back({t, 1, {}});
        parts += cylinderProb(m, ext);
    }
    CHECK(std::abs(parts - whole) <= 1e-12);
}

TEST_CASE("samplePlay terminates without frontier on the bounded arena") {
    Instance inst("<a><a>tt");
    for (uint64_t seed = 0; seed < 20; ++seed) {
        TruncatedPlay t = samplePlay(inst.play(2), 32, 100000, seed);
        CHECK(!t.hasFrontier());
        for (size_t i = 0; i < t.tree.nodes.size(); ++i) {
            if (!t.tree.nodes[i].children.empty()) {
                CHECK(t.kind[i] == LeafKind::Internal);
                if (inst.a.owner[t.tree.nodes[i].state] == Owner::Nature)
                    CHECK(t.tree.nodes[i].children.size() == 1);
            } else {
                CHECK(t.kind[i] != LeafKind::Internal);
            }
        }
    }
}

TEST_CASE("samplePlay leaves a frontier on the unfolding spine") {
    Instance inst("mu X. (<a><a>tt (+) X)");
    TruncatedPlay t = samplePlay(inst.play(inst.a.roots[0]), 24, 100000, 3);
    CHECK(t.hasFrontier());
    // The mu-variable unfolding keeps one alive branch at every depth, so
    // the frontier leaf's path runs through the Branch1 spine.
    bool sawLasso = false;
    for (size_t i = 0; i < t.kind.size(); ++i) sawLasso |= t.kind[i] == LeafKind::Lasso;
    CHECK(sawLasso); // the tt subgames settle into their forced cycle
}

TEST_CASE("samplePlay is deterministic and coupled across budgets") {
    Instance inst("mu X. (<a><a>tt (+) X)");
    MarkovBranchingPlay m = inst.play(inst.a.roots[0]);
    TruncatedPlay t1 = samplePlay(m, 16, 100000, 5);
    TruncatedPlay t2 = samplePlay(m, 16, 100000, 5);
    REQUIRE(t1.tree.nodes.size() == t2.tree.nodes.size());
    for (size_t i = 0; i < t1.tree.nodes.size(); ++i) {
        CHECK(t1.tree.nodes[i].state == t2.tree.nodes[i].state);
        CHECK(t1.kind[i] == t2.kind[i]);
    }

    // The deeper tree resolves every Nature node on a shared path the same
    // way: any path present in the shallow tree is present in the deep one.
    TruncatedPlay deep = samplePlay(m, 24, 100000, 5);
    for (size_t i = 0; i < t1.tree.nodes.size(); ++i) {
        if (t1.kind[i] == LeafKind::Terminal || t1.kind[i] == LeafKind::Lasso)
            CHECK(containsPath(deep.tree, t1.tree.pathTo(static_cast<uint32_t>(i))));
    }
}

TEST_CASE("node budget cuts mark frontier leaves") {
    Instance inst("mu X. (<a><a>tt (+) X)");
    TruncatedPlay t = samplePlay(inst.play(inst.a.roots[0]), 1000, 50, 1);
    CHECK(t.tree.nodes.size() <= 50);
    CHECK(t.hasFrontier());
}

TEST_CASE("solveInner base cases") {
    Instance inst("<a>tt");
    // Stuck P1 root (z has no transitions): single-node tree, lost.
    uint32_t rz = inst.a.roots[1];
    TruncatedPlay t = samplePlay(inst.play(rz), 8, 100, 0);
    REQUIRE(t.tree.nodes.size() == 1);
    CHECK(t.kind[0] == LeafKind::Terminal);
    CHECK(!solveInner(t, inst.a, SolveMode::Pessimistic));
    CHECK(!solveInner(t, inst.a, SolveMode::Optimistic));
    CHECK(solveInner(t, inst.a, SolveMode::Pessimistic) ==
          omegaWinsFinite(inst.a, {rz}));

    // Root immediately at the frontier (node budget 1 forbids expanding it):
    // mode decides.
    TruncatedPlay cut = samplePlay(inst.play(inst.a.roots[0]), 8, 1, 0);
    REQUIRE(cut.kind[0] == LeafKind::Frontier);
    CHECK(!solveInner(cut, inst.a, SolveMode::Pessimistic));
    CHECK(solveInner(cut, inst.a, SolveMode::Optimistic));
}

TEST_CASE("solveInner Branch semantics") {
    // (+) needs some winning child: tt (+) ff wins, ff (+) ff loses,
    // * needs all: tt * ff loses, tt * tt wins.
    auto winsBoth = [](const std::string& f) {
        Instance inst(f);
        TruncatedPlay t = samplePlay(inst.play(inst.a.roots[0]), 64, 100000, 0);
        REQUIRE(!t.hasFrontier());
        bool pess = solveInner(t, inst.a, SolveMode::Pessimistic);
        CHECK(pess == solveInner(t, inst.a, SolveMode::Optimistic));
        return pess;
    };
    CHECK(winsBoth("tt (+) ff"));
    CHECK(!winsBoth("ff (+) ff"));
    CHECK(!winsBoth("tt * ff"));
    CHECK(winsBoth("tt * tt"));

    // Branch1 with one winning child and one frontier child is already a
    // pessimistic win: the tt side settles into its forced cycle while the
    // P>0 unfolding spine is still cut at every finite depth.
    Instance inst("tt (+) (P>0 <a><a>tt)");
    TruncatedPlay t = samplePlay(inst.play(inst.a.roots[0]), 8, 100000, 0);
    REQUIRE(t.hasFrontier());
    CHECK(solveInner(t, inst.a, SolveMode::Pessimistic));
}

TEST_CASE("modes agree with finite adjudication when nothing is cut") {
    Rng rng(31);
    FormulaGenConfig cfg;
    cfg.maxDepth = 4;
    for (int i = 0; i < 50; ++i) {
        Plts m = randomPlts(rng.next(), 3, 1, 2, 2);
        cfg.labels = m.labels;
        Formula f = prep(printFormula(randomFormula(cfg, rng)));
        AnnotateResult ar = annotateEnv(f, Env{}, m);
        Arena a = buildArena(f, m, ar.env);
        std::vector<double> v = annotateArenaValues(a, ar.env, m);
        MarkovBranchingPlay play{&a, a.roots[0], makeGreedyStrategy(a, v, Owner::P1),
                                 makeGreedyStrategy(a, v, Owner::P2)};
        TruncatedPlay t = samplePlay(play, 64, 100000, rng.next());
        if (t.hasFrontier()) continue;
        CHECK(solveInner(t, a, SolveMode::Pessimistic) ==
              solveInner(t, a, SolveMode::Optimistic));
    }
}

TEST_CASE("sampler frequency matches the cylinder probability") {
    Instance inst("<a><a>tt");
    MarkovBranchingPlay m = inst.play(2);
    // Event: the first Nature node resolves to (p, <a>tt), probability 1/2.
    const uint32_t n = 10000;
    uint32_t hits = 0;
    for (uint32_t i = 0; i < n; ++i) {
        TruncatedPlay t = samplePlay(m, 32, 1000, mix64(1234, i));
        hits += containsPath(t.tree, {2, 4, 5});
    }
    double freq = static_cast<double>(hits) / n;
    double sigma = std::sqrt(0.5 * 0.5 / n);
    CHECK(std::abs(freq - 0.5) <= 4 * sigma);
}

TEST_CASE("estimateValue on the worked examples") {
    Instance coin("<a><a>tt");
    ValueEstimate e = estimateValue(coin.a, 2, coin.s1, coin.s2, 10000, 32, 100000, 7);
    CHECK(e.lo <= e.hi);
    CHECK(e.lo == e.hi); // every branch terminates within the budget
    CHECK(std::abs(e.lo - 0.5) <= 0.05);
    CHECK(e.samples == 10000);
    CHECK(e.stderrLo == doctest::Approx(std::sqrt(e.lo * (1 - e.lo) / 10000)));

    Instance h("mu X. (<a><a>tt (+) X)");
    ValueEstimate eh = estimateValue(h.a, h.a.roots[0], h.s1, h.s2, 2000, 64, 200000, 7);
    CHECK(eh.lo >= 0.9);
    CHECK(eh.lo <= eh.hi);

    Instance ff("ff");
    ValueEstimate ef = estimateValue(ff.a, ff.a.roots[0], ff.s1, ff.s2, 500, 32, 1000, 3);
    CHECK(ef.hi <= 0.01);
}

TEST_CASE("deeper budgets only tighten the interval") {
    Instance h("mu X. (<a><a>tt (+) X)");
    double prevLo = -1.0, prevHi = 2.0;
    for (uint32_t depth : {8u, 16u, 32u, 64u}) {
        ValueEstimate e =
            estimateValue(h.a, h.a.roots[0], h.s1, h.s2, 300, depth, 400000, 99);
        CHECK(e.lo >= prevLo);
        CHECK(e.hi <= prevHi);
        CHECK(e.lo <= e.hi);
        prevLo = e.lo;
        prevHi = e.hi;
    }
}

TEST_CASE("estimateValue is deterministic in the seed") {
    Instance coin("<a><a>tt");
    ValueEstimate a = estimateValue(coin.a, 2, coin.s1, coin.s2, 500, 32, 1000, 11);
    ValueEstimate b = estimateValue(coin.a, 2, coin.s1, coin.s2, 500, 32, 1000, 11);
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
    ValueEstimate c = estimateValue(coin.a, 2, coin.s1, coin.s2, 500, 32, 1000, 12);
    CHECK((a.lo != c.lo || a.hi != c.hi));
}

TEST_CASE("bestResponseSweep") {
    // P2 has no real choices against F: the worst adversary still gives 0.5.
    Instance coin("<a><a>tt");
    ValueEstimate worst = bestResponseSweep(coin.a, 2, coin.s1, Owner::P1,
                                            {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, coin.v, 2000, 32,
                                            100000, 17);
    CHECK(std::abs(worst.lo - 0.5) <= 0.05);

    Instance h("mu X. (<a><a>tt (+) X)");
    ValueEstimate wh = bestResponseSweep(h.a, h.a.roots[0], h.s1, Owner::P1, {1, 2, 3}, h.v,
                                         500, 64, 200000, 17);
    CHECK(wh.lo >= 0.9);

    // Empty seed list: just the greedy adversary.
    ValueEstimate g = bestResponseSweep(coin.a, 2, coin.s1, Owner::P1, {}, coin.v, 500, 32,
                                        100000, 17);
    ValueEstimate direct = estimateValue(coin.a, 2, coin.s1, coin.s2, 500, 32, 100000, 17);
    CHECK(g.lo == direct.lo);
    CHECK(g.hi == direct.hi);
}
