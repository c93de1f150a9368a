// Dicograph terms: the shared term algebra for directed cographs.
//
// A term is built from atom occurrences (a leaf carries a name, a polarity
// and a numeric occurrence id) with three compositions:
//
//   par     x | y   no relation between the two sides
//   before  x < y   arcs from every point of x to every point of y
//   tensor  x * y   edges (symmetric pairs) between all cross points
//
// Terms are kept in canonical form: same-operator children are flattened,
// par/tensor children are sorted by a fixed total order, before children
// keep their significant order.  Each interior node is either structural
// (describes the sequent/conclusion ordering) or a formula connective
// (introduced by folding two equivalent blocks into one compound formula).
// Structural and formula nodes of the same operator are never merged.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pomset {

enum class Op { Leaf, Par, Before, Tensor };

struct Term {
    Op op = Op::Leaf;
    bool formula = false;  // connective node inside a folded formula block
    // leaf payload
    std::string name;
    bool neg = false;
    int id = 0;
    std::vector<Term> kids;

    bool is_leaf() const { return op == Op::Leaf; }

    static Term atom(std::string name, bool neg, int id) {
        Term t;
        t.name = std::move(name);
        t.neg = neg;
        t.id = id;
        return t;
    }
    static Term node(Op op, std::vector<Term> kids, bool formula = false);
};

// Total order used for canonical sorting; compares ids last so that equal
// shapes tie-break deterministically.
int compare(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

// Structural equality that ignores occurrence ids (names and polarities count).
bool equal_mod_ids(const Term& a, const Term& b);

// Flatten, sort, collapse single-child nodes.
Term canon(Term t);

// De Morgan dual: atoms flip polarity, par and tensor swap, before is
// self-dual with the child order preserved.  Occurrence ids are kept.
Term dual(const Term& t);

// --- relations ------------------------------------------------------------

// An irreflexive binary relation over points carrying atom labels.
struct Relation {
    std::set<int> points;
    std::set<std::pair<int, int>> pairs;                  // (x,y) in R
    std::map<int, std::pair<std::string, bool>> atoms;    // id -> (name, neg)

    bool has(int x, int y) const { return pairs.count({x, y}) != 0; }
    bool arc(int x, int y) const { return has(x, y) && !has(y, x); }
    bool edge(int x, int y) const { return has(x, y) && has(y, x); }
    bool none(int x, int y) const { return !has(x, y) && !has(y, x); }
};

Relation to_relation(const Term& t);

// Recognition by modular decomposition; returns the canonical structural term
// or nothing when the relation is not a dicograph.
std::optional<Term> from_relation(const Relation& r);

// Independent recognition through the characterization: the arc part is a
// transitive N-free order, the edge part is P4-free, and the relation is
// weakly transitive on both sides.
bool is_dicograph(const Relation& r);

// Dual at the relation level: arcs kept, edge part complemented.
Relation dual_relation(const Relation& r);

// subset test: a included in b, pointwise on pairs (same point set assumed)
bool relation_subset(const Relation& a, const Relation& b);

// --- equivalent points and folding -----------------------------------------

enum class EquivKind { Par, Before, Tensor };

struct EquivPair {
    std::set<int> left;   // atom ids of the left block
    std::set<int> right;  // atom ids of the right block
    EquivKind kind;
};

// Pairs of sibling blocks that are equivalent in the structural skeleton:
// any two children of a par/tensor node, consecutive children of a before
// node.  Blocks are identified by their atom-id sets.
std::vector<EquivPair> equivalent_pairs(const Term& t);

// Relation-level oracle for point equivalence (single atoms a, b).
std::optional<EquivKind> equivalent_points(const Relation& r, int a, int b);

// Replace two equivalent sibling blocks by the folded compound formula.
// Fails when the blocks are not siblings under a matching structural node.
std::optional<Term> fold(const Term& t, const std::set<int>& left,
                         const std::set<int>& right);

// Exact inverse: split the formula block with the given atom ids back into
// its children at the structural level.
std::optional<Term> unfold(const Term& t, const std::set<int>& block);

// Strip all formula structure (full unfolding to a dicograph of atoms).
Term unfold_all(const Term& t);

// --- text format ------------------------------------------------------------

// Grammar: atoms are identifiers with optional postfix '^' (negation) and
// '#k' (occurrence id); operators '|' '<' '*'; chains of one operator need
// no parentheses, mixed operators are parenthesized.  Folded formula blocks
// print with square brackets: [a|b] is the compound formula a|b as one block.
std::string to_text(const Term& t);

// Like to_text but every leaf carries its #id, so a reparse restores the
// exact occurrence ids (used by the on-disk formats, where axiom arrays
// reference ids in the serialized term).
std::string to_text_ids(const Term& t);

struct ParseError {
    std::string message;
    size_t pos = 0;
};

// Parses and canonicalizes.  Leaves without an explicit '#k' get fresh ids
// assigned left to right (skipping explicit ones).
std::optional<Term> parse_term(const std::string& text, ParseError* err = nullptr);

// --- misc -------------------------------------------------------------------

void collect_leaves(const Term& t, std::vector<const Term*>& out);
std::set<int> leaf_ids(const Term& t);
int max_id(const Term& t);

}  // namespace pomset
