// Handsome proof nets: an axiom matching plus a dicograph conclusion.
//
// Correctness is the chord criterion on the two-colored graph: vertices for
// atom occurrences plus a two-vertex gadget per folded connective node, blue
// edges for axioms and gadget links, red pairs for the relation (undirected
// for tensor cliques, directed for before arcs).  A net is correct when
// every alternating elementary circuit has a chord; equivalently, no
// chordless alternating circuit exists.  Cut elimination rewires axiom
// chains through atomic cuts and may drop closed loops.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pomset/rewrite.hpp"
#include "pomset/term.hpp"

namespace pomset {

struct ProofStructure {
    std::vector<std::pair<int, int>> axioms;  // pairs of leaf ids
    Term conclusion;
};

// Every conclusion leaf in exactly one axiom; each axiom joins two same-name
// occurrences of opposite polarity.  On failure `why` gets a message.
bool validate_structure(const ProofStructure& ps, std::string* why = nullptr);

bool is_correct(const ProofStructure& ps);

// A chordless alternating circuit witnessing incorrectness: vertex
// descriptions in traversal order (atom occurrences, or "fold" for the
// gadget vertices of folded connectives).  nullopt when the net is correct.
// The structure must pass validate_structure.
std::optional<std::vector<std::string>> chordless_circuit(
    const ProofStructure& ps);

// ---- cuts ----------------------------------------------------------------

// A cut: a structural tensor node of exactly two dual (mod ids) children.
// Identified by the leaf-id set of the node.
struct Cut {
    std::set<int> left_ids, right_ids;  // leaves of the two dual children
};

std::vector<Cut> find_cuts(const ProofStructure& ps);

// One rewired axiom chain from cut elimination.  `axioms` lists the original
// axioms traversed, ordered from endpoint `a`; for loops a == b == -1 and
// the axiom list starts at the chain's smallest leaf id.
struct Chain {
    int a = -1, b = -1;
    std::vector<std::pair<int, int>> axioms;
    bool loop = false;
};

struct CutResult {
    ProofStructure net;
    std::vector<Chain> chains;  // rewired axioms and loops of this step
};

std::optional<CutResult> eliminate_cut(const ProofStructure& ps,
                                       const Cut& cut);

// Cuts of a net together with their atomic pairings, plus the conclusion
// with all cut blocks removed (nullopt when nothing remains).  Axioms are
// left untouched; this is the view the semantics works on.
struct CutAnalysis {
    std::vector<std::vector<std::pair<int, int>>> atom_pairs;
    std::optional<Term> residual;
};

CutAnalysis analyze_cuts(const ProofStructure& ps);

struct NormalizeResult {
    ProofStructure net;
    int loops = 0;
    std::vector<Chain> chains;  // all chains over all steps
};

// Eliminate cuts to a fixpoint, always taking the first cut in term order.
NormalizeResult normalize(const ProofStructure& ps);

// ---- splittings (used by sequentialisation) --------------------------------

struct Splitting {
    enum Kind { Dimix, Tensor } kind;
    // axiom indices of the two parts
    std::vector<int> part1, part2;
    // for Tensor: leaf ids of the two regrouped tensor halves
    std::set<int> half1, half2;
};

// Restriction of a net to a subset of its axioms (induced conclusion).
ProofStructure restrict_structure(const ProofStructure& ps,
                                  const std::vector<int>& axiom_indices);

// Splittings of the conclusion relation compatible with the axioms: either
// a directed-mix partition (no cross edges, all cross arcs one way) or a
// splitting tensor (one tensor block splits in two, every other top block
// falls wholly on one side).  Nets with a single axiom don't split.
std::vector<Splitting> find_splittings(const ProofStructure& ps);
std::optional<Splitting> find_splitting(const ProofStructure& ps);

// ---- construction and enumeration ------------------------------------------

// Net of a rewrite derivation starting from an axiom term (tensor of
// axiom pairs): the pairs become axiom links, the final term the conclusion.
ProofStructure structure_of_derivation(const Term& axiom_term,
                                       const Derivation& d);

// All cut-free structures over the given atom occurrences: every dicograph
// conclusion over exactly these leaves paired with every axiom matching.
// Leaves must carry distinct ids.
std::vector<ProofStructure> enumerate_structures(const std::vector<Term>& atoms);

// All dicograph terms over the given leaves (distinct ids).
std::vector<Term> enumerate_dicograph_terms(const std::vector<Term>& leaves);

// Correct nets with six axioms that admit no splitting, i.e. witnesses that
// the splitting-based sequentialisation is incomplete.  Searches every
// dicograph combination of the rigid blocks a*(c<b^) and d*(e^<f^) with the
// arcs a^<f and e<b and the remaining matched atoms, axioms paired by name.
// Only a six-axiom search is implemented; other sizes throw
// std::invalid_argument.
std::vector<ProofStructure> unsplittable_nets(int axioms);

}  // namespace pomset
