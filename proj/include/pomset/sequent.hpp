// Sequent calculus proof checking and sequentialisation.
//
// Two calculi over ordered sequents share one rule engine.  A sequent is a
// canonical dicograph term whose folded ([...]) subterms are the formulas and
// whose remaining structure is the order on them:
//
//   sp-pomset calculus   structure restricted to par/before (an sp order of
//                        formulas); the tensor rule builds a formula block.
//   dicograph calculus   structural tensor allowed, sequents are dicographs
//                        of atoms; folding tensors is a rule of its own.
//
// Proof trees are ingested and replayed bottom-up: the checker recomputes each
// conclusion from the premises (assigning globally unique occurrence ids at
// the axioms) and compares it with the stated conclusion modulo ids.  Checked
// proofs translate to proof structures by tracing the axiom pairs and fully
// unfolding the final sequent.  Sequentialisation goes the other way, driven
// by the splitting search on nets.

#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pomset/proofnet.hpp"
#include "pomset/term.hpp"

namespace pomset {

enum class RuleName {
    Axiom,        // |- a | a^
    Dimix,        // |- G   |- D   =>  |- G < D
    Entropy,      // weaken the outer sp order between blocks
    TensorOrCut,  // |- A|G   |- B|D  =>  |- G|(A x B)|D, cut when A = B^
    ParIntro,     // fold A,B with A ~| B into the formula [A|B]
    BefIntro,     // fold A,B with A ~< B into the formula [A<B]
    TensorIntro,  // fold A,B with A ~* B into [A*B]  (dicograph calculus only)
};

const char* rule_label(RuleName r);
std::optional<RuleName> rule_from_label(const std::string& label);

// expected premise count per rule
int rule_arity(RuleName r);

struct ProofTree {
    RuleName rule = RuleName::Axiom;
    Term conclusion;  // stated conclusion; ids are matched modulo renaming
    // Optional hints naming the active blocks by occurrence id (in the
    // checker's numbering: axiom k introduces ids 2k+1, 2k+2 in traversal
    // order).  Empty sets mean "search all candidates".
    std::set<int> a_ids, b_ids;
    std::vector<ProofTree> premises;
};

enum class Calculus { SpPomset, Dicograph };

struct RuleViolation {
    const ProofTree* node = nullptr;
    RuleName rule = RuleName::Axiom;
    std::string reason;
};

struct CheckResult {
    std::optional<RuleViolation> violation;        // empty when the proof checks
    Term conclusion;                               // computed final sequent
    std::vector<std::pair<int, int>> axioms;       // introduced atom pairs
    bool ok() const { return !violation.has_value(); }
};

CheckResult check_proof(const ProofTree& p, Calculus calc);
inline CheckResult check_sp_pomset(const ProofTree& p) {
    return check_proof(p, Calculus::SpPomset);
}
inline CheckResult check_dicograph(const ProofTree& p) {
    return check_proof(p, Calculus::Dicograph);
}

// Net of a checked proof: B = the traced axiom pairs, conclusion = the full
// unfolding of the final sequent.  Throws std::invalid_argument when the
// proof does not check.
ProofStructure proof_to_net(const ProofTree& p, Calculus calc);

// Rebuild a dicograph-calculus proof of a correct net from its splittings:
// axiom base case, tensor splits, dimix splits (followed by entropy when the
// conclusion order is strictly weaker), and fold steps for formula blocks.
// nullopt when the recursion gets stuck: the net is not sequentialisable.
std::optional<ProofTree> sequentialize(const ProofStructure& ps);

// Random valid proof for corpus testing; at most max_axioms axiom leaves.
ProofTree random_proof(std::mt19937& rng, Calculus calc, int max_axioms);

}  // namespace pomset
