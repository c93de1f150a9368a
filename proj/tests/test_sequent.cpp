// Sequent module tests: rule-by-rule checking in both calculi, translation of
// checked proofs to correct nets, sequentialisation round trips, and a random
// proof corpus with mutation rejection.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pomset/rewrite.hpp"
#include "pomset/sequent.hpp"
#include "proofgen.hpp"
#include "util.hpp"

using namespace pomset;

namespace {

Term tt(const std::string& text) {
    auto t = parse_term(text);
    REQUIRE(t.has_value());
    return *t;
}

ProofTree ax(const std::string& name) {
    return ProofTree{RuleName::Axiom, tt(name + "|" + name + "^"), {}, {}, {}};
}

ProofTree node(RuleName rule, const std::string& conclusion,
               std::vector<ProofTree> premises) {
    return ProofTree{rule, tt(conclusion), {}, {}, std::move(premises)};
}

}  // namespace

TEST_CASE("rule labels round-trip") {
    for (RuleName r : {RuleName::Axiom, RuleName::Dimix, RuleName::Entropy,
                       RuleName::TensorOrCut, RuleName::ParIntro,
                       RuleName::BefIntro, RuleName::TensorIntro}) {
        auto back = rule_from_label(rule_label(r));
        REQUIRE(back.has_value());
        CHECK(*back == r);
    }
    CHECK_FALSE(rule_from_label("Mix").has_value());
}

TEST_CASE("formula blocks survive the text format") {
    Term t = tt("[a<b]|[a^<b^]");
    REQUIRE(t.kids.size() == 2);
    CHECK(t.kids[0].formula);
    CHECK(t.kids[1].formula);
    CHECK(to_text(t) == "[a<b]|[a^<b^]");
    CHECK(unfold_all(t) == tt("(a#1<b#2)|(a^#3<b^#4)"));
}

TEST_CASE("axiom rule") {
    auto res = check_sp_pomset(ax("a"));
    REQUIRE(res.ok());
    CHECK(res.axioms == std::vector<std::pair<int, int>>{{1, 2}});
    CHECK(res.conclusion == tt("a#1|a^#2"));

    ProofStructure ps = proof_to_net(ax("a"), Calculus::SpPomset);
    CHECK(is_correct(ps));

    CHECK_FALSE(check_sp_pomset(node(RuleName::Axiom, "a|b^", {})).ok());
    CHECK_FALSE(check_sp_pomset(node(RuleName::Axiom, "a|a", {})).ok());
    CHECK_FALSE(check_sp_pomset(node(RuleName::Axiom, "a<a^", {})).ok());
}

TEST_CASE("dimix, entropy and before folding derive [a<b]|[a^<b^]") {
    ProofTree mix = node(RuleName::Dimix, "(a|a^)<(b|b^)", {ax("a"), ax("b")});
    ProofTree ent = node(RuleName::Entropy, "(a<b)|(a^<b^)", {std::move(mix)});
    ProofTree f1 = node(RuleName::BefIntro, "[a<b]|(a^<b^)", {std::move(ent)});
    ProofTree f2 = node(RuleName::BefIntro, "[a<b]|[a^<b^]", {std::move(f1)});

    auto res = check_sp_pomset(f2);
    REQUIRE(res.ok());
    ProofStructure ps = proof_to_net(f2, Calculus::SpPomset);
    CHECK(is_correct(ps));
    CHECK(equal_mod_ids(ps.conclusion, tt("(a<b)|(a^<b^)")));
    // the axiom pairs connect a to a^ and b to b^
    Relation r = to_relation(ps.conclusion);
    for (auto [x, y] : ps.axioms) CHECK(r.atoms.at(x).first == r.atoms.at(y).first);

    // entropy may not invert: the mix conclusion is not below the entropy one
    ProofTree bad = node(RuleName::Entropy, "(a|a^)<(b|b^)",
                         {node(RuleName::Entropy, "(a<b)|(a^<b^)",
                               {node(RuleName::Dimix, "(a|a^)<(b|b^)",
                                     {ax("a"), ax("b")})})});
    CHECK_FALSE(check_sp_pomset(bad).ok());
}

TEST_CASE("par intro requires a freely equivalent pair") {
    ProofTree good = node(RuleName::ParIntro, "[a|a^]", {ax("a")});
    CHECK(check_sp_pomset(good).ok());

    // a and b sit in different components of a before order: not ~|
    ProofTree mix = node(RuleName::Dimix, "(a|a^)<(b|b^)", {ax("a"), ax("b")});
    ProofTree bad = node(RuleName::ParIntro, "[a|b]|a^|b^", {std::move(mix)});
    CHECK_FALSE(check_sp_pomset(bad).ok());
}

TEST_CASE("tensor rule in the sp calculus") {
    // |- a|a^   |- b|b^   =>   |- a^ | [a*b] | b^
    ProofTree t = node(RuleName::TensorOrCut, "a^|[a*b]|b^", {ax("a"), ax("b")});
    auto res = check_sp_pomset(t);
    REQUIRE(res.ok());
    ProofStructure ps = proof_to_net(t, Calculus::SpPomset);
    CHECK(is_correct(ps));
    CHECK(equal_mod_ids(ps.conclusion, tt("a^|(a*b)|b^")));

    // cut case: A = dual(B); the cut block unfolds to a structural tensor
    ProofTree cut = node(RuleName::TensorOrCut, "a^|[a*a^]|a", {ax("a"), ax("a")});
    auto rc = check_sp_pomset(cut);
    REQUIRE(rc.ok());
    ProofStructure pc = proof_to_net(cut, Calculus::SpPomset);
    CHECK(is_correct(pc));
    CHECK(find_cuts(pc).size() == 1);
    NormalizeResult nr = normalize(pc);
    CHECK(is_correct(nr.net));
    CHECK(find_cuts(nr.net).empty());

    // the active formulas must come one from each premise
    ProofTree bad = node(RuleName::TensorOrCut, "a|[a^*b^]|b", {ax("a"), ax("b")});
    CHECK(check_sp_pomset(bad).ok());  // a^ from left, b^ from right: fine
    ProofTree worse = node(RuleName::TensorOrCut, "a|a^|[b*b^]", {ax("a"), ax("b")});
    CHECK_FALSE(check_sp_pomset(worse).ok());
}

TEST_CASE("dicograph calculus: structural tensor and tensor folding") {
    // the tensor rule keeps the block structural in the dicograph calculus
    ProofTree t = node(RuleName::TensorOrCut, "a^|(a*b)|b^", {ax("a"), ax("b")});
    auto res = check_dicograph(t);
    REQUIRE(res.ok());

    ProofTree fold_t =
        node(RuleName::TensorIntro, "a^|[a*b]|b^",
             {node(RuleName::TensorOrCut, "a^|(a*b)|b^", {ax("a"), ax("b")})});
    CHECK(check_dicograph(fold_t).ok());
    CHECK_FALSE(check_sp_pomset(fold_t).ok());

    // sp refuses the structural writing, the dicograph calculus accepts both
    CHECK_FALSE(check_sp_pomset(t).ok());
}

TEST_CASE("entropy cannot reach inside a block") {
    // |- c^ | (((a|a^)<(b|b^)) * c): the before arcs live inside a tensor block
    ProofTree mix = node(RuleName::Dimix, "(a|a^)<(b|b^)", {ax("a"), ax("b")});
    ProofTree t = node(RuleName::TensorOrCut, "c^|(((a|a^)<(b|b^))*c)",
                       {std::move(mix), ax("c")});
    REQUIRE(check_dicograph(t).ok());

    ProofTree bad = node(RuleName::Entropy, "c^|(((a|a^)|(b|b^))*c)",
                         {std::move(t)});
    auto res = check_dicograph(bad);
    CHECK_FALSE(res.ok());
}

TEST_CASE("entropy weakens the outer order over blocks") {
    // dropping the arcs from a whole tensor block to a later block is fine
    ProofTree left = node(RuleName::TensorOrCut, "a^|(a*b)|b^", {ax("a"), ax("b")});
    ProofTree mix = node(RuleName::Dimix, "(a^|(a*b)|b^)<(c|c^)",
                         {std::move(left), ax("c")});
    ProofTree ent = node(RuleName::Entropy, "((a^|(a*b)|b^)<c)|c^",
                         {std::move(mix)});
    auto res = check_dicograph(ent);
    REQUIRE(res.ok());
    ProofStructure ps = proof_to_net(ent, Calculus::Dicograph);
    CHECK(is_correct(ps));
}

TEST_CASE("sequentialize: axiom, splits and fold replay") {
    // single axiom
    ProofStructure one{{{1, 2}}, tt("a#1|a^#2")};
    auto p1 = sequentialize(one);
    REQUIRE(p1.has_value());
    CHECK(p1->rule == RuleName::Axiom);
    CHECK(check_dicograph(*p1).ok());

    // the before-identity of one axiom is incorrect and has no proof
    ProofStructure bad{{{1, 2}}, tt("a#1<a^#2")};
    CHECK_FALSE(is_correct(bad));
    CHECK_FALSE(sequentialize(bad).has_value());

    // two-axiom before pairing, structural writing
    ProofStructure two{{{1, 3}, {2, 4}}, tt("(a#1<b#2)|(a^#3<b^#4)")};
    REQUIRE(is_correct(two));
    auto p2 = sequentialize(two);
    REQUIRE(p2.has_value());
    auto r2 = check_dicograph(*p2);
    REQUIRE(r2.ok());
    ProofStructure back = proof_to_net(*p2, Calculus::Dicograph);
    CHECK(is_correct(back));
    CHECK(equal_mod_ids(back.conclusion, two.conclusion));

    // folded conclusion: the proof ends with fold steps reaching the exact term
    ProofStructure folded{{{1, 3}, {2, 4}}, tt("[a#1<b#2]|[a^#3<b^#4]")};
    auto p3 = sequentialize(folded);
    REQUIRE(p3.has_value());
    CHECK(p3->conclusion == folded.conclusion);
    auto r3 = check_dicograph(*p3);
    REQUIRE(r3.ok());
    CHECK(equal_mod_ids(unfold_all(r3.conclusion), unfold_all(folded.conclusion)));

    // tensor split: a^|(a*b)|b^
    ProofStructure ten{{{1, 2}, {3, 4}}, tt("a^#1|(a#2*b#3)|b^#4")};
    REQUIRE(is_correct(ten));
    auto p4 = sequentialize(ten);
    REQUIRE(p4.has_value());
    CHECK(check_dicograph(*p4).ok());
    CHECK(equal_mod_ids(proof_to_net(*p4, Calculus::Dicograph).conclusion,
                        ten.conclusion));
}

TEST_CASE("sequentialize agrees with enumeration on small nets") {
    // every sequentialized 2-axiom structure yields a checking proof whose
    // net matches; nets with no splitting and no proof stay None
    int proofs = 0;
    std::vector<Term> leaves = {Term::atom("a", false, 1), Term::atom("a", true, 2),
                                Term::atom("b", false, 3), Term::atom("b", true, 4)};
    for (const ProofStructure& ps : enumerate_structures(leaves)) {
        if (!is_correct(ps)) continue;
        if (!find_cuts(ps).empty()) continue;
        auto p = sequentialize(ps);
        if (!p) continue;
        ++proofs;
        auto res = check_dicograph(*p);
        REQUIRE(res.ok());
        CHECK(equal_mod_ids(unfold_all(res.conclusion), unfold_all(ps.conclusion)));
    }
    CHECK(proofs > 0);
}

TEST_CASE("random proof corpus: both calculi are sound") {
    std::mt19937 rng(7);
    for (Calculus calc : {Calculus::SpPomset, Calculus::Dicograph}) {
        for (int i = 0; i < 300; ++i) {
            ProofTree p = random_proof(rng, calc, 4);
            auto res = check_proof(p, calc);
            REQUIRE_MESSAGE(res.ok(), res.violation->reason);
            ProofStructure ps = proof_to_net(p, calc);
            CHECK(is_correct(ps));
            // a cut-carrying proof still normalizes to a correct cut-free net
            if (!find_cuts(ps).empty()) {
                NormalizeResult nr = normalize(ps);
                CHECK(is_correct(nr.net));
                CHECK(find_cuts(nr.net).empty());
            }
        }
    }
}

TEST_CASE("mutated proofs are rejected") {
    std::mt19937 rng(11);
    int tried = 0, rejected = 0;
    for (int i = 0; i < 300; ++i) {
        Calculus calc = i % 2 ? Calculus::SpPomset : Calculus::Dicograph;
        ProofTree p = random_proof(rng, calc, 4);
        if (!testutil::mutate_proof(rng, p)) continue;
        ++tried;
        if (!check_proof(p, calc).ok()) ++rejected;
    }
    REQUIRE(tried > 200);
    CHECK(rejected >= tried * 99 / 100);
}

TEST_CASE("proof_to_net refuses unchecked proofs") {
    ProofTree bad = node(RuleName::Axiom, "a|b^", {});
    CHECK_THROWS_AS(proof_to_net(bad, Calculus::SpPomset), std::invalid_argument);
}
