// Semantics tests: connective rules (with the lexicographic before clause
// checked against its quantifier formulation), duality at negated atoms,
// experiments and interpretations with and without cuts, agreement of the
// clique test with the chord criterion on every small cut-free net, and the
// calibration search.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pomset/coherence.hpp"
#include "pomset/proofnet.hpp"
#include "pomset/term.hpp"
#include "util.hpp"

using namespace pomset;

namespace {

Term T(const std::string& s) {
    ParseError err;
    auto t = parse_term(s, &err);
    REQUIRE_MESSAGE(t.has_value(), err.message);
    return canon(*t);
}

std::vector<ProofStructure> cutfree_structures(
    const std::vector<std::string>& names) {
    std::vector<Term> atoms;
    int id = 1;
    for (const auto& n : names) {
        atoms.push_back(Term::atom(n, false, id++));
        atoms.push_back(Term::atom(n, true, id++));
    }
    std::vector<ProofStructure> out;
    for (auto& ps : enumerate_structures(atoms))
        if (find_cuts(ps).empty()) out.push_back(std::move(ps));
    return out;
}

}  // namespace

TEST_CASE("connective rules on classes") {
    using enum Cls;
    CHECK(combine(Op::Tensor, {Equal, Equal}) == Equal);
    CHECK(combine(Op::Tensor, {Scoh, Equal}) == Scoh);
    CHECK(combine(Op::Tensor, {Scoh, Sincoh}) == Sincoh);
    CHECK(combine(Op::Par, {Scoh, Sincoh}) == Scoh);
    CHECK(combine(Op::Par, {Sincoh, Equal}) == Sincoh);
    CHECK(combine(Op::Before, {Equal, Scoh}) == Scoh);
    CHECK(combine(Op::Before, {Sincoh, Scoh}) == Sincoh);
    CHECK(combine(Op::Before, {Equal, Equal, Equal}) == Equal);

    // the before rule equals its quantifier formulation: strictly coherent
    // iff some position is strictly coherent and all earlier ones are equal
    std::vector<Cls> all{Sincoh, Equal, Scoh};
    for (Cls a : all)
        for (Cls b : all)
            for (Cls c : all) {
                std::vector<Cls> v{a, b, c};
                bool scoh_oracle = false;
                for (size_t i = 0; i < v.size() && !scoh_oracle; ++i) {
                    if (v[i] != Scoh) {
                        if (v[i] == Sincoh) break;
                        continue;
                    }
                    scoh_oracle = true;
                }
                CHECK((combine(Op::Before, v) == Scoh) == scoh_oracle);
            }
}

TEST_CASE("leaf classes and duality") {
    Space s = default_space();
    CHECK(leaf_class(s, false, "0", "0") == Cls::Equal);
    CHECK(leaf_class(s, false, "0", "1") == Cls::Scoh);
    CHECK(leaf_class(s, false, "2", "3") == Cls::Sincoh);
    CHECK(leaf_class(s, true, "0", "1") == Cls::Sincoh);
    CHECK(leaf_class(s, true, "2", "3") == Cls::Scoh);
    CHECK(leaf_class(s, true, "0", "0") == Cls::Equal);
    CHECK(s.nondegenerate());
}

TEST_CASE("interpretation of an axiom and a cut of two axioms") {
    Space s = default_space();
    ProofStructure ax{{{1, 2}}, T("a#1|a^#2")};
    auto i1 = interpretation(ax, s);
    REQUIRE(i1.has_value());
    CHECK(i1->size() == 4);  // one diagonal result per token

    // identity cut against identity: only token-agreeing experiments succeed
    ProofStructure cut{{{1, 2}, {3, 4}}, T("a#1|(a^#2*a#3)|a^#4")};
    auto i2 = interpretation(cut, s);
    REQUIRE(i2.has_value());
    CHECK(i2->size() == 4);
    for (const auto& r : *i2) {
        CHECK(r.size() == 2);
        CHECK(r.at(1) == r.at(4));
    }
    CHECK(interpretation_preserved(cut, s));

    // nothing outside the cut: semantics does not apply
    ProofStructure loopy{{{1, 2}}, T("a#1*a^#2")};
    CHECK_FALSE(semantic_correct(loopy, s).has_value());
}

TEST_CASE("clique test agrees with the chord criterion, cut-free n<=2") {
    Space s = default_space();
    int correct = 0, total = 0;
    for (const auto& names :
         std::vector<std::vector<std::string>>{{"a"}, {"a", "b"}, {"a", "a"}})
        for (const auto& ps : cutfree_structures(names)) {
            auto sc = semantic_correct(ps, s);
            REQUIRE(sc.has_value());
            bool c = is_correct(ps);
            CHECK(*sc == c);
            correct += c;
            ++total;
        }
    CHECK(correct > 0);
    CHECK(correct < total);
}

TEST_CASE("fast path equals the explicit experiment path") {
    Space s = default_space();
    testutil::Rng rng(3);
    auto all = cutfree_structures({"a", "b"});
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    for (int iter = 0; iter < 200; ++iter) {
        const auto& ps = all[pick(rng)];
        auto fast = semantic_correct(ps, s);
        REQUIRE(fast.has_value());
        auto interp = interpretation(ps, s);
        REQUIRE(interp.has_value());
        bool slow = true;
        for (size_t i = 0; i < interp->size() && slow; ++i)
            for (size_t j = i + 1; j < interp->size(); ++j)
                if (result_class(s, ps.conclusion, (*interp)[i],
                                 (*interp)[j]) == Cls::Sincoh) {
                    slow = false;
                    break;
                }
        CHECK(*fast == slow);
    }
}

TEST_CASE("interpretation is invariant under cut elimination") {
    Space s = default_space();
    // compound cut between two identity nets
    ProofStructure ps{{{1, 5}, {2, 6}, {3, 7}, {4, 8}},
                      T("((a#1|b#2)*(a^#3*b^#4))|(a^#5*b^#6)|a#7|b#8")};
    REQUIRE(is_correct(ps));
    CHECK(interpretation_preserved(ps, s));
}

TEST_CASE("calibration finds exactly the nondegenerate spaces") {
    auto passing = calibrate(2);
    CHECK(passing.size() == 62);
    for (const auto& s : passing) CHECK(s.nondegenerate());
    // the shipped space is one of them
    Space d = default_space();
    bool found = false;
    for (const auto& s : passing)
        found |= s.tokens == d.tokens && s.strict == d.strict;
    CHECK(found);
}
