// Proof-net grammar: lexical entries are partial proof nets whose pending
// atoms get plugged by new axiom links; dual conclusions may be cut against
// each other.  Word-order labels ride on axiom links, survive cut
// elimination as before-compositions along the rewired chains, and a
// label-propagation pass on the final cut-free net yields the sp-order of
// words realised by the sentence.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pomset/proofnet.hpp"
#include "pomset/term.hpp"

namespace pomset {

// Internal axiom link of a lexical entry; `word` is the surface word the
// link contributes (empty for purely structural links).
struct LexAxiom {
    int a = 0, b = 0;
    std::string word;
};

// A lexical entry: a main conclusion (the body), optional auxiliary
// conclusions used as cut material, internal axiom links, and the name of
// the designated output atom left pending in the body.
struct LexEntry {
    std::string word;        // display name of the entry
    std::string output;      // atom name of the pending output
    Term body;               // main conclusion, explicit occurrence ids
    std::vector<Term> aux;   // auxiliary conclusions (cut fodder, parking)
    std::vector<LexAxiom> axioms;
};

// Shape checks: distinct occurrence ids, dual axiom endpoints, at least one
// word-labelled link, no tensor nested inside a tensor operand of the body,
// and a single pending output occurrence (or none for degenerate entries
// whose output is consumed by an internal link).
bool validate_entry(const LexEntry& e, std::string* why = nullptr);

// Surface words contributed by the entry (its axiom labels), sorted.
std::vector<std::string> entry_words(const LexEntry& e);

// ---- partial nets ----------------------------------------------------------

struct NetAxiom {
    int a = 0, b = 0;
    std::optional<Term> label;  // sp-order over word atoms
};

struct PartialNet {
    std::vector<Term> blocks;  // conclusion components
    std::vector<NetAxiom> axioms;
    // leaf-id sets of body tensors; these carry the empty order during
    // label propagation
    std::vector<std::set<int>> entry_tensors;
};

// Leaf occurrences not matched by any axiom.
std::set<int> pending_ids(const PartialNet& n);

// Fresh copy of an entry: every occurrence id shifted by `id_offset`, each
// labelled axiom turned into a one-point word order with a fresh label id
// drawn from `label_counter`.
PartialNet instantiate(const LexEntry& e, int id_offset, int& label_counter);

// A plug joins two pending dual atoms with a new (unlabelled) axiom link.
struct Plug {
    int a = 0, b = 0;
};

// A cut tensors one conclusion block against the set of blocks whose par is
// its dual (modulo ids).  Indices refer to the concatenated block list.
struct CutSpec {
    std::size_t block = 0;
    std::vector<std::size_t> dual_blocks;
};

// Merge the nets (occurrence ids must already be disjoint), apply plugs and
// cuts.  Fails with a message on non-dual plugs ("type mismatch") or on an
// atom or block used twice ("reuse").
std::optional<PartialNet> combine(const std::vector<PartialNet>& nets,
                                  const std::vector<Plug>& plugs,
                                  const std::vector<CutSpec>& cuts,
                                  std::string* err = nullptr);

// View a complete partial net (no pending atoms) as a proof structure.
ProofStructure to_structure(const PartialNet& n);

// Cut elimination with label bookkeeping: each rewired chain axiom gets the
// before-composition of the labels it traversed, ordered from the chain
// endpoint with the smaller occurrence id.  Labels on dropped loops vanish.
PartialNet normalize_labeled(const PartialNet& n, int* loops = nullptr);

// Word-order labelling of a complete cut-free net.  Every axiom equates the
// labels of its endpoints (a worded link contributes its one-point order),
// entry tensors carry the empty order (equating their operands' labels),
// par and before nodes compose their children's labels.  Returns the label
// of the occurrence `output_id`; fails when the equations conflict or leave
// the output undetermined (non-tree-like input).
std::optional<Term> label_words(const PartialNet& n, int output_id,
                                std::string* err = nullptr);

// ---- parsing ---------------------------------------------------------------

struct Parse {
    ProofStructure net;            // normalized (cut-free) net
    std::vector<NetAxiom> axioms;  // its axioms with surviving labels
    Term order;                    // sp word order of the sentence
    int loops = 0;
};

// All analyses of the word multiset against the lexicon: pick entries whose
// labels cover the words exactly, enumerate plugs of pending duals and cuts
// of dual conclusions, keep the correct complete nets, normalize, and label.
// The goal conclusion is a single pending `target` dual atom; a parse's
// order must realise every word exactly once.  On an uncoverable word the
// result is empty and `err` names it.
std::vector<Parse> parse_sentence(const std::vector<LexEntry>& lexicon,
                                  const std::vector<std::string>& words,
                                  const std::string& target,
                                  std::string* err = nullptr);

// Does reading the words left to right respect the order term?  The order
// must mention each word exactly once.
bool linear_extension(const Term& order,
                      const std::vector<std::string>& words);

}  // namespace pomset
