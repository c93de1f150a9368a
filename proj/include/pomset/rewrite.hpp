// Dicograph inclusion as rewriting.
//
// Eleven rules rewrite a dicograph term into terms of included dicographs
// (same points, fewer or reordered relation pairs).  Matching works modulo
// associativity and commutativity through the n-ary canonical form: binding
// variables pick child subsets of a par/tensor node, contiguous segments of
// a before node.  A term rewrites to another iff the latter's relation is
// included in the former's (tested exhaustively against the relation-level
// subset oracle).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pomset/term.hpp"

namespace pomset {

enum class Rule {
    TsPa4,    // (X|Y)*(U|V) ~> (X*U)|(Y*V)   not net-preserving
    TsPa3,    // (X|Y)*U     ~> (X*U)|Y
    TsPa2,    // Y*U         ~> U|Y
    TsBef4,   // (X<Y)*(U<V) ~> (X*U)<(Y*V)
    TsBef3l,  // (X<Y)*U     ~> (X*U)<Y
    TsBef3r,  // Y*(U<V)     ~> U<(Y*V)
    TsBef2,   // Y*U         ~> U<Y
    BefPa4,   // (X|Y)<(U|V) ~> (X<U)|(Y<V)
    BefPa3l,  // (X|Y)<U     ~> (X<U)|Y
    BefPa3r,  // Y<(U|V)     ~> U|(Y<V)
    BefPa2,   // Y<U         ~> U|Y
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

// The rule sets of the three systems.
std::vector<Rule> all_rules();                // dicograph inclusion (all 11)
std::vector<Rule> dicograph_rules();          // all except TsPa4 (net-preserving)
std::vector<Rule> gmll_rules(bool mix);       // TsPa3, plus TsPa2 with mix
std::vector<Rule> entropy_rules();            // the four before/par rules

struct RewriteStep {
    Rule rule;
    std::vector<int> path;  // child indices from the root to the redex node
    Term replacement;       // new subterm at that node (canonical)
};

// position string for logs: "root" or dotted child indices like "0.2"
std::string path_text(const std::vector<int>& path);

// All rule instances applicable anywhere inside t (t canonical, structural).
std::vector<RewriteStep> applicable_steps(const Term& t,
                                          const std::vector<Rule>& rules);

// Replace the redex and re-canonicalize; nullopt when the path is stale.
std::optional<Term> apply_step(const Term& t, const RewriteStep& step);

struct Derivation {
    struct Entry {
        Rule rule;
        std::vector<int> path;
        Term before;
        Term after;
    };
    std::vector<Entry> steps;
};

// One line per step: "<rule> @ <position> : <before> => <after>"
std::string derivation_log(const Derivation& d);

// Search a rewrite sequence big ~>* small (same atom occurrences), breadth
// first with subset pruning.  Empty derivation when big == small.
std::optional<Derivation> includes(const Term& big, const Term& small,
                                   const std::vector<Rule>& rules);
inline std::optional<Derivation> includes(const Term& big, const Term& small) {
    return includes(big, small, all_rules());
}

// Tensor of axiom pairs (a1|a1^)*...*(an|an^); occurrence ids 2i-1 / 2i.
Term ax_n(const std::vector<std::string>& names);

enum class System { Gmll, GmllMix, Dicograph };

// Derive target from an axiom term AX_n over its atom names, trying the
// possible pairings of dual occurrences.  The returned derivation starts at
// the axiom term.
std::optional<Derivation> derive(const Term& target, System system);

}  // namespace pomset
