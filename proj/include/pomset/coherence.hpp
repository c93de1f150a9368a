// Coherence-space semantics, used as an oracle independent of the chord
// criterion.  Atoms are interpreted by one fixed finite space; an experiment
// picks a token per axiom; the net's interpretation is the set of results of
// the succeeding experiments (all of them for cut-free nets, those whose
// tokens agree across every atomic cut pair otherwise).  A net is
// semantically correct when its interpretation is a clique: every two
// results are coherent or equal in the space of the conclusion, computed by
// the connective rules (tensor: strictly incoherent as soon as one
// component is; par dually; before: leftmost non-equal component decides).

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pomset/proofnet.hpp"
#include "pomset/term.hpp"

namespace pomset {

struct Space {
    std::vector<std::string> tokens;
    // strictly coherent unordered pairs of distinct tokens, stored sorted
    std::set<std::pair<std::string, std::string>> strict;

    bool strictly_coherent(const std::string& a, const std::string& b) const {
        return strict.count(a < b ? std::make_pair(a, b)
                                  : std::make_pair(b, a)) != 0;
    }
    bool nondegenerate() const;  // has a coherent and an incoherent pair
};

enum class Cls { Sincoh, Equal, Scoh };

Cls dual_class(Cls c);

// class of two tokens at an atom occurrence; negated atoms live in the dual
// space
Cls leaf_class(const Space& s, bool neg, const std::string& x,
               const std::string& y);

// n-ary connective rule over component classes
Cls combine(Op op, const std::vector<Cls>& kids);

// class of two experiment results (leaf id -> token) at a conclusion term
Cls result_class(const Space& s, const Term& conclusion,
                 const std::map<int, std::string>& r1,
                 const std::map<int, std::string>& r2);

// results of all succeeding experiments, restricted to the cut-free part of
// the conclusion; nullopt when nothing remains outside the cuts
std::optional<std::vector<std::map<int, std::string>>> interpretation(
    const ProofStructure& ps, const Space& s);

// clique test on the interpretation; nullopt when the semantics does not
// apply (empty residual conclusion)
std::optional<bool> semantic_correct(const ProofStructure& ps, const Space& s);

// interpretation before and after cut elimination coincide
bool interpretation_preserved(const ProofStructure& ps, const Space& s);

// All 2^6 spaces over four tokens, and those that agree with the chord
// criterion on every structure with at most `max_axioms` axioms over the
// name lists {a}, {a,b} and {a,a}.
std::vector<Space> all_four_token_spaces();
std::vector<Space> calibrate(int max_axioms);

// the space shipped as the default interpretation
Space default_space();

}  // namespace pomset
