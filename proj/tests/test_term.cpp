#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pomset/term.hpp"
#include "util.hpp"

using namespace pomset;
using testutil::Rng;

static Term T(const std::string& s) {
    auto t = parse_term(s);
    REQUIRE(t.has_value());
    return *t;
}

TEST_CASE("parse and print round trip, canonical order") {
    CHECK(to_text(T("b|a")) == "a|b");
    CHECK(to_text(T("b<a")) == "b<a");  // before order is significant
    CHECK(to_text(T("(a|b)|c")) == "a|b|c");
    CHECK(to_text(T("a<(b<c)")) == "a<b<c");
    CHECK(to_text(T("(a*b)|c")) == "c|(a*b)");
    CHECK(to_text(T("a^|a")) == "a|a^");
    CHECK(to_text(T("a#1|a#2")) == "a#1|a#2");
    CHECK(!parse_term("a|b<c").has_value());  // mixed operators need parens
    CHECK(!parse_term("a#1|a#1").has_value());
    CHECK(equal_mod_ids(T("c|(b<a)"), T("(b<a)|c")));
}

TEST_CASE("to_relation") {
    auto r = to_relation(T("a#1<(b#2|c#3)"));
    CHECK(r.arc(1, 2));
    CHECK(r.arc(1, 3));
    CHECK(r.none(2, 3));
    auto r2 = to_relation(T("a#1*b#2"));
    CHECK(r2.edge(1, 2));
}

TEST_CASE("from_relation rejects P4 and N") {
    Relation p4;
    for (int i = 1; i <= 4; ++i) {
        p4.points.insert(i);
        p4.atoms[i] = {"x", false};
    }
    for (auto [x, y] : {std::pair{1, 2}, {2, 3}, {3, 4}}) {
        p4.pairs.insert({x, y});
        p4.pairs.insert({y, x});
    }
    CHECK(!from_relation(p4).has_value());
    CHECK(!is_dicograph(p4));

    Relation n;
    for (int i = 1; i <= 4; ++i) {
        n.points.insert(i);
        n.atoms[i] = {"x", false};
    }
    for (auto [x, y] : {std::pair{1, 2}, {3, 2}, {3, 4}}) n.pairs.insert({x, y});
    CHECK(!from_relation(n).has_value());
    CHECK(!is_dicograph(n));
}

TEST_CASE("round trip term -> relation -> term") {
    Rng rng(7);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 1 + rng() % 6;
        Term t = testutil::random_term(testutil::atoms(n), rng);
        auto back = from_relation(to_relation(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
}

TEST_CASE("characterization matches decomposition on all relations up to 4 points") {
    for (int n = 1; n <= 4; ++n) {
        testutil::for_each_relation(n, [](const Relation& r) {
            CHECK(is_dicograph(r) == from_relation(r).has_value());
        });
    }
}

TEST_CASE("dual") {
    CHECK(dual(T("a<b")) == T("a^<b^"));
    CHECK(dual(T("a*b")) == T("a^|b^"));
    Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        Term t = testutil::random_term(testutil::atoms(1 + rng() % 6), rng);
        CHECK(dual(dual(t)) == t);
        // relation-level dual agrees
        auto lhs = to_relation(dual(t));
        auto rhs = dual_relation(to_relation(t));
        CHECK(lhs.pairs == rhs.pairs);
    }
}

TEST_CASE("equivalent pairs") {
    Term t = T("a#1<b#2<c#3");
    auto eq = equivalent_pairs(t);
    REQUIRE(eq.size() == 2);
    CHECK(eq[0].kind == EquivKind::Before);
    CHECK((eq[0].left == std::set<int>{1} && eq[0].right == std::set<int>{2}));
    CHECK((eq[1].left == std::set<int>{2} && eq[1].right == std::set<int>{3}));

    // relation-level oracle agrees on sibling atoms
    Rng rng(13);
    for (int iter = 0; iter < 200; ++iter) {
        Term u = testutil::random_term(testutil::atoms(2 + rng() % 5), rng);
        auto r = to_relation(u);
        for (const auto& p : equivalent_pairs(u)) {
            if (p.left.size() != 1 || p.right.size() != 1) continue;
            auto k = equivalent_points(r, *p.left.begin(), *p.right.begin());
            REQUIRE(k.has_value());
            CHECK(*k == p.kind);
        }
    }
}

TEST_CASE("fold and unfold") {
    Term t = T("a#1|b#2|c#3");
    auto folded = fold(t, {1}, {2});
    REQUIRE(folded.has_value());
    // folded formula is a block: text is unchanged but the block is atomic
    CHECK(unfold(*folded, {1, 2}).value() == t);
    CHECK(unfold_all(*folded) == t);

    // folding non-equivalent blocks fails
    Term u = T("a#1<(b#2|c#3)");
    CHECK(!fold(u, {1}, {2}).has_value());

    // fold respects before adjacency
    Term v = T("a#1<b#2<c#3");
    CHECK(fold(v, {1}, {3}) == std::nullopt);
    auto fv = fold(v, {2}, {3});
    REQUIRE(fv.has_value());
    CHECK(unfold(*fv, {2, 3}).value() == v);

    // relation is unchanged by folding
    CHECK(to_relation(*fv).pairs == to_relation(v).pairs);
}

TEST_CASE("restriction of a dicograph is a dicograph") {
    Rng rng(17);
    for (int iter = 0; iter < 200; ++iter) {
        Term t = testutil::random_term(testutil::atoms(3 + rng() % 4), rng);
        auto r = to_relation(t);
        // drop one point
        int drop = 1 + (int)(rng() % r.points.size());
        Relation s;
        for (int p : r.points)
            if (p != drop) {
                s.points.insert(p);
                s.atoms[p] = r.atoms[p];
            }
        for (auto pr : r.pairs)
            if (pr.first != drop && pr.second != drop) s.pairs.insert(pr);
        CHECK(from_relation(s).has_value());
    }
}
