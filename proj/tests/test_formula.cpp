#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plmu/errors.hpp"
#include "plmu/formula.hpp"
#include "plmu/gen.hpp"
#include "plmu/rng.hpp"

#include <algorithm>
#include <set>
#include <string>

using namespace plmu;

namespace {

Formula parsed(const std::string& s) { return parseFormula(s); }

// Structural scan for Prod(G,G)/Coprod(G,G) nodes.
bool hasSelfPair(const Formula& f) {
    switch (f.kind()) {
    case FKind::Var: return false;
    case FKind::Diamond:
    case FKind::Box:
    case FKind::Mu:
    case FKind::Nu: return hasSelfPair(f.body());
    default:
        if ((f.kind() == FKind::Prod || f.kind() == FKind::Coprod) && f.lhs() == f.rhs())
            return true;
        return hasSelfPair(f.lhs()) || hasSelfPair(f.rhs());
    }
}

} // namespace

TEST_CASE("parse basic connectives and precedence") {
    Formula f = parsed("<a><a>tt");
    CHECK(f.kind() == FKind::Diamond);
    CHECK(f.body().kind() == FKind::Diamond);
    CHECK(f.body().body().kind() == FKind::Nu); // tt sugar

    // * binds tighter than (+), which binds tighter than &&, then ||.
    Formula g = parsed("X || Y && Z (+) W * V");
    CHECK(g.kind() == FKind::Or);
    CHECK(g.rhs().kind() == FKind::And);
    CHECK(g.rhs().rhs().kind() == FKind::Coprod);
    CHECK(g.rhs().rhs().rhs().kind() == FKind::Prod);

    // Binders extend maximally to the right.
    Formula h = parsed("mu X. X || Y");
    CHECK(h.kind() == FKind::Mu);
    CHECK(h.body().kind() == FKind::Or);
}

TEST_CASE("sugar expansion shapes") {
    Formula tt = parsed("tt");
    CHECK(tt.kind() == FKind::Nu);
    CHECK(tt.body().kind() == FKind::Var);
    CHECK(tt.body().name() == tt.name());
    CHECK(isReservedName(tt.name()));

    Formula ff = parsed("ff");
    CHECK(ff.kind() == FKind::Mu);
    CHECK(ff.body() == Formula::var(ff.name()));

    Formula p0 = parsed("P>0 <a>tt");
    CHECK(p0.kind() == FKind::Mu);
    CHECK(p0.body().kind() == FKind::Coprod);
    CHECK(p0.body().lhs().kind() == FKind::Diamond);
    CHECK(p0.body().rhs() == Formula::var(p0.name()));
    CHECK(freeVars(p0.body().lhs()).count(p0.name()) == 0);

    Formula p1 = parsed("P=1 <a>tt");
    CHECK(p1.kind() == FKind::Nu);
    CHECK(p1.body().kind() == FKind::Prod);

    // The worked example from the intro: H = mu X.(F (+) X).
    Formula h = parsed("mu X. (<a><a>tt (+) X)");
    CHECK(h.kind() == FKind::Mu);
    CHECK(h.name() == "X");
    CHECK(h.body().kind() == FKind::Coprod);
    CHECK(h.body().rhs() == Formula::var("X"));
}

TEST_CASE("negation sugar requires closed argument") {
    Formula f = parsed("!<a>tt");
    CHECK(f.kind() == FKind::Box);
    CHECK(f.body().kind() == FKind::Mu); // negate(tt) = ff
    CHECK_THROWS_AS(parsed("!X"), ParseError);
}

TEST_CASE("reserved prefix is unlexable") {
    CHECK_THROWS_AS(parsed("_v0"), ParseError);
    CHECK_THROWS_AS(parsed("mu _vK. _vK"), ParseError);
    CHECK(isReservedName("_v0"));
    CHECK(isReservedName("_violet")); // prefix match is deliberate
    CHECK(!isReservedName("v0"));
}

TEST_CASE("parse errors carry positions") {
    try {
        parsed("mu X. (X ||");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col > 1);
    }
    CHECK_THROWS_AS(parsed(""), ParseError);
    CHECK_THROWS_AS(parsed("<a>"), ParseError);
    CHECK_THROWS_AS(parsed("X Y"), ParseError);
    CHECK_THROWS_AS(parsed("mu. X"), ParseError);
}

TEST_CASE("print examples") {
    CHECK(printFormula(Formula::mu("X", Formula::var("X"))) == "mu X. X");
    CHECK(printFormula(Formula::coprod(Formula::var("a"), Formula::var("b"))) == "a (+) b");
    // Sugar shapes print back as their surface form.
    CHECK(printFormula(parsed("tt")) == "tt");
    CHECK(printFormula(parsed("P>0 <a>tt")) == "P>0 <a>tt");
}

TEST_CASE("parse-print round trip on random formulas") {
    Rng rng(2024);
    FormulaGenConfig cfg;
    cfg.maxDepth = 6;
    cfg.labels = {"a", "b"};
    cfg.freeVars = {"F1", "F2"};
    for (int i = 0; i < 1000; ++i) {
        Formula f = randomFormula(cfg, rng);
        std::string s = printFormula(f);
        Formula g = parseFormula(s);
        // Fresh sugar names may differ between the two parses, so compare
        // the prints (stable surface form) rather than the trees.
        CHECK(printFormula(g) == s);
    }
}

TEST_CASE("subformulas") {
    Formula x = Formula::var("X");
    auto sx = subformulas(x);
    REQUIRE(sx.size() == 1);
    CHECK(sx[0] == x);

    Formula m = Formula::mu("X", x);
    auto sm = subformulas(m);
    REQUIRE(sm.size() == 2);
    CHECK(sm[0] == m);
    CHECK(sm[1] == x);

    Formula a = Formula::conj(Formula::var("X"), Formula::var("Y"));
    auto sa = subformulas(a);
    REQUIRE(sa.size() == 3);
    CHECK(sa[0] == a);

    // Structural dedup: X appears once.
    Formula d = Formula::disj(x, x);
    CHECK(subformulas(d).size() == 2);
}

TEST_CASE("freeVars and shadowing") {
    CHECK(freeVars(Formula::var("X")) == std::set<std::string>{"X"});
    CHECK(freeVars(Formula::mu("X", Formula::var("X"))).empty());
    Formula f = Formula::prod(Formula::var("X"), Formula::mu("X", Formula::var("X")));
    CHECK(freeVars(f) == std::set<std::string>{"X"});
    CHECK(!isClosed(f));
    CHECK(isClosed(parsed("mu X. <a>X")));
}

TEST_CASE("toNormalForm") {
    Formula dup = Formula::conj(Formula::mu("X", Formula::var("X")),
                                Formula::mu("X", Formula::var("X")));
    CHECK(!isNormalForm(dup));
    Formula nf = toNormalForm(dup);
    CHECK(isNormalForm(nf));
    CHECK(nf.lhs().name() != nf.rhs().name());

    // Free/bound clash.
    Formula clash = Formula::conj(Formula::var("X"), Formula::mu("X", Formula::var("X")));
    CHECK(!isNormalForm(clash));
    Formula nc = toNormalForm(clash);
    CHECK(isNormalForm(nc));
    CHECK(nc.lhs() == Formula::var("X")); // the free occurrence keeps its name
    CHECK(nc.rhs().name() != "X");

    // Already-normal input is unchanged.
    Formula ok = parsed("mu X. nu Y. (X && Y)");
    CHECK(isNormalForm(ok));
    CHECK(toNormalForm(ok) == ok);
}

TEST_CASE("toNormalForm property over random formulas") {
    Rng rng(77);
    FormulaGenConfig cfg;
    cfg.maxDepth = 6;
    cfg.freeVars = {"F"};
    for (int i = 0; i < 1000; ++i) {
        Formula f = randomFormula(cfg, rng);
        Formula nf = toNormalForm(f);
        CHECK(isNormalForm(nf));
        CHECK(freeVars(nf) == freeVars(f));
        // Self-composition keeps it (and keeps names stable).
        CHECK(toNormalForm(nf) == nf);
    }
}

TEST_CASE("toProductNormalForm") {
    // Binder-free G keeps the two copies structurally identical after
    // normalization, so the self-pair rewrite must fire.
    Formula g = Formula::diamond("a", Formula::var("X"));
    Formula self = toNormalForm(Formula::prod(g, g));
    REQUIRE(hasSelfPair(self));
    Formula pnf = toProductNormalForm(self);
    CHECK(isProductNormalForm(pnf));
    CHECK(!hasSelfPair(pnf));
    CHECK(pnf.kind() == FKind::Prod);
    CHECK(pnf.lhs() == g);
    CHECK(pnf.rhs() == Formula::disj(g, g));
    CHECK(isNormalForm(pnf));

    // A duplicated binder is alpha-renamed apart by toNormalForm, so no
    // structural self-pair survives to the rewrite.
    Formula withBinder = toNormalForm(Formula::coprod(parsed("<a>tt"), parsed("<a>tt")));
    CHECK(!hasSelfPair(withBinder));
    CHECK(toProductNormalForm(withBinder) == withBinder);

    Formula plain = parsed("mu X. (<a>X || X)");
    CHECK(toProductNormalForm(plain) == plain);
}

TEST_CASE("product normal form property over random formulas") {
    Rng rng(505);
    FormulaGenConfig cfg;
    cfg.maxDepth = 6;
    for (int i = 0; i < 500; ++i) {
        Formula f = toNormalForm(randomFormula(cfg, rng));
        Formula g = toProductNormalForm(f);
        CHECK(isProductNormalForm(g));
        CHECK(!hasSelfPair(g));
        CHECK(isNormalForm(g));
    }
}

TEST_CASE("subsumptionOrder") {
    Formula f = parsed("mu X. nu Y. (X && Y)");
    auto ord = subsumptionOrder(f);
    CHECK(ord.at("X").count("Y") == 1);
    CHECK(ord.at("Y").empty());

    // Sibling binders are incomparable.
    Formula sib = parsed("(mu X. X) && (nu Y. Y)");
    auto so = subsumptionOrder(sib);
    CHECK(so.at("X").count("Y") == 0);
    CHECK(so.at("Y").count("X") == 0);

    CHECK_THROWS_AS(subsumptionOrder(Formula::conj(parsed("mu X. X"), parsed("mu X. X"))),
                    ValidationError);
}

TEST_CASE("subsumptionOrder is a strict partial order") {
    Rng rng(99);
    FormulaGenConfig cfg;
    cfg.maxDepth = 7;
    for (int i = 0; i < 300; ++i) {
        Formula f = toNormalForm(randomFormula(cfg, rng));
        auto ord = subsumptionOrder(f);
        for (const auto& [x, below] : ord) {
            CHECK(below.count(x) == 0); // irreflexive
            for (const auto& y : below) {
                REQUIRE(ord.count(y) == 1);
                for (const auto& z : ord.at(y)) CHECK(below.count(z) == 1); // transitive
            }
        }
    }
}

TEST_CASE("negate dual pairs") {
    CHECK(negate(parsed("<a>tt")) == parsed("[a]ff"));
    CHECK(negate(parsed("tt")) == parsed("ff"));
    CHECK(negate(parsed("mu X. (X (+) X)")).kind() == FKind::Nu);
    CHECK(negate(parsed("mu X. (X (+) X)")).body().kind() == FKind::Prod);
    CHECK_THROWS_AS(negate(Formula::var("X")), ValidationError);
}

TEST_CASE("negate is an involution on closed formulas") {
    Rng rng(3);
    FormulaGenConfig cfg;
    cfg.maxDepth = 6;
    for (int i = 0; i < 500; ++i) {
        Formula f = randomFormula(cfg, rng);
        REQUIRE(isClosed(f));
        CHECK(negate(negate(f)) == f);
    }
}
