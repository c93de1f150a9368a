// Proof-net machinery: the two-colored graph, chordless alternating circuit
// search, cut elimination with chain rewiring, splittings, enumeration.

#include "pomset/proofnet.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace pomset {

namespace {

// ---- two-colored graph ------------------------------------------------------

struct Graph {
    int n = 0;
    std::vector<int> mate;  // blue perfect matching
    // red pairs keyed unordered (lo, hi); value: bit 1 = lo->hi traversable,
    // bit 2 = hi->lo traversable (edges get both bits)
    std::map<std::pair<int, int>, int> red;
    std::vector<std::vector<int>> red_out;  // traversable red successors

    int add_vertex() {
        mate.push_back(-1);
        red_out.emplace_back();
        return n++;
    }
    void blue(int a, int b) {
        mate[a] = b;
        mate[b] = a;
    }
    void red_edge(int a, int b) {
        add_red(a, b, true);
        add_red(b, a, true);
    }
    void red_arc(int a, int b) { add_red(a, b, true); }
    void add_red(int a, int b, bool) {
        auto key = std::minmax(a, b);
        int bit = a < b ? 1 : 2;
        int& m = red[{key.first, key.second}];
        if (!(m & bit)) red_out[a].push_back(b);
        m |= bit;
    }
    bool red_pair(int a, int b) const {
        auto key = std::minmax(a, b);
        return red.count({key.first, key.second}) != 0;
    }
};

// Build vertices for a conclusion subterm.  Structural nodes contribute no
// vertices of their own; they relate the block roots of their children.
// A folded node becomes a two-vertex gadget whose upper vertex is the block
// root seen from above.
std::vector<int> build(const Term& t, Graph& g,
                       const std::map<int, int>& leaf_vertex) {
    if (t.is_leaf()) return {leaf_vertex.at(t.id)};

    std::vector<std::vector<int>> kid_roots;
    kid_roots.reserve(t.kids.size());
    for (const auto& k : t.kids) kid_roots.push_back(build(k, g, leaf_vertex));

    std::vector<int> roots;
    if (t.formula) {
        int u = g.add_vertex();
        int l = g.add_vertex();
        g.blue(u, l);
        for (const auto& rs : kid_roots)
            for (int r : rs) g.red_edge(l, r);
        roots = {u};
    } else {
        for (const auto& rs : kid_roots)
            roots.insert(roots.end(), rs.begin(), rs.end());
    }

    if (t.op == Op::Tensor) {
        for (size_t i = 0; i < kid_roots.size(); ++i)
            for (size_t j = i + 1; j < kid_roots.size(); ++j)
                for (int a : kid_roots[i])
                    for (int b : kid_roots[j]) g.red_edge(a, b);
    } else if (t.op == Op::Before) {
        for (size_t i = 0; i < kid_roots.size(); ++i)
            for (size_t j = i + 1; j < kid_roots.size(); ++j)
                for (int a : kid_roots[i])
                    for (int b : kid_roots[j]) g.red_arc(a, b);
    }
    return roots;
}

Graph graph_of(const ProofStructure& ps) {
    Graph g;
    std::map<int, int> leaf_vertex;
    std::vector<const Term*> leaves;
    collect_leaves(ps.conclusion, leaves);
    for (const Term* l : leaves) leaf_vertex[l->id] = g.add_vertex();
    build(ps.conclusion, g, leaf_vertex);
    for (auto [a, b] : ps.axioms)
        g.blue(leaf_vertex.at(a), leaf_vertex.at(b));
    return g;
}

// Depth-first search for a chordless alternating elementary circuit.  The
// path alternates blue and red, starting with the blue edge at v0.  A red
// pair between two path vertices that is neither traversed nor a potential
// closing pair to v0 is a permanent chord, so such paths are pruned.
struct CircuitSearch {
    const Graph& g;
    std::vector<int> path;
    std::vector<char> onpath;
    int v0 = 0;

    explicit CircuitSearch(const Graph& gr) : g(gr), onpath(gr.n, 0) {}

    bool chord_to_interior(int w, int allow_a, int allow_b) const {
        for (int x : path) {
            if (x == allow_a || x == allow_b) continue;
            if (g.red_pair(w, x)) return true;
        }
        return false;
    }

    bool closing_chordless() const {
        // traversed red pairs of the candidate circuit
        std::set<std::pair<int, int>> used;
        for (size_t i = 1; i + 1 < path.size(); i += 2) {
            auto k = std::minmax(path[i], path[i + 1]);
            used.insert({k.first, k.second});
        }
        auto k = std::minmax(path.back(), path.front());
        used.insert({k.first, k.second});
        for (size_t i = 0; i < path.size(); ++i)
            for (size_t j = i + 1; j < path.size(); ++j) {
                auto p = std::minmax(path[i], path[j]);
                if (g.red.count({p.first, p.second}) &&
                    !used.count({p.first, p.second}))
                    return false;
            }
        return true;
    }

    bool dfs(int last) {
        for (int w : g.red_out[last]) {
            if (w == v0) {
                if (closing_chordless()) return true;
                continue;
            }
            if (onpath[w]) continue;
            int t = g.mate[w];
            if (t < 0 || onpath[t]) continue;
            if (g.red_pair(w, t)) continue;  // unusable pair inside circuit
            // w sits after a red step, so a pair from w can never be used
            // again, not even to close; t may still close to v0 later.
            if (chord_to_interior(w, last, -1)) continue;
            if (chord_to_interior(t, -1, v0)) continue;
            path.push_back(w);
            path.push_back(t);
            onpath[w] = onpath[t] = 1;
            if (dfs(t)) return true;
            onpath[w] = onpath[t] = 0;
            path.pop_back();
            path.pop_back();
        }
        return false;
    }

    bool chordless_circuit_exists() {
        for (v0 = 0; v0 < g.n; ++v0) {
            int v1 = g.mate[v0];
            if (v1 < 0) continue;
            path = {v0, v1};
            std::fill(onpath.begin(), onpath.end(), 0);
            onpath[v0] = onpath[v1] = 1;
            if (dfs(v1)) return true;
        }
        return false;
    }
};

std::set<int> term_leaf_ids(const Term& t) { return leaf_ids(t); }

}  // namespace

bool validate_structure(const ProofStructure& ps, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    std::map<int, std::pair<std::string, bool>> at;
    std::vector<const Term*> leaves;
    collect_leaves(ps.conclusion, leaves);
    for (const Term* l : leaves) {
        if (at.count(l->id)) return fail("duplicate occurrence id");
        at[l->id] = {l->name, l->neg};
    }
    std::set<int> seen;
    for (auto [a, b] : ps.axioms) {
        if (!at.count(a) || !at.count(b))
            return fail("axiom mentions unknown occurrence");
        if (!seen.insert(a).second || !seen.insert(b).second)
            return fail("occurrence in two axioms");
        if (at[a].first != at[b].first || at[a].second == at[b].second)
            return fail("axiom endpoints are not dual atoms");
    }
    if (seen.size() != at.size()) return fail("unmatched occurrence");
    return true;
}

bool is_correct(const ProofStructure& ps) {
    if (!validate_structure(ps)) return false;
    Graph g = graph_of(ps);
    CircuitSearch s(g);
    return !s.chordless_circuit_exists();
}

std::optional<std::vector<std::string>> chordless_circuit(
    const ProofStructure& ps) {
    Graph g = graph_of(ps);
    CircuitSearch s(g);
    if (!s.chordless_circuit_exists()) return std::nullopt;
    // Leaf vertices were created first, in occurrence order; every later
    // vertex belongs to a fold gadget.
    std::vector<const Term*> leaves;
    collect_leaves(ps.conclusion, leaves);
    std::vector<std::string> out;
    for (int v : s.path) {
        if (v < static_cast<int>(leaves.size()))
            out.push_back(to_text_ids(*leaves[v]));
        else
            out.push_back("fold");
    }
    return out;
}

// ---- cuts ------------------------------------------------------------------

namespace {

// Regroup a child subset of a tensor node as one term.
Term regroup(const Term& node, const std::vector<int>& subset) {
    if (subset.size() == 1) return node.kids[subset[0]];
    std::vector<Term> ks;
    for (int i : subset) ks.push_back(node.kids[i]);
    return canon(Term::node(Op::Tensor, std::move(ks)));
}

// A cut inside a flattened tensor node pairs one child against a regrouped
// subset of the others (the tensor-rooted side of a dual pair loses its own
// node to flattening).
void find_cuts_rec(const Term& t, std::vector<Cut>& out) {
    if (t.is_leaf() || t.formula) return;
    if (t.op == Op::Tensor) {
        const size_t n = t.kids.size();
        for (size_t i = 0; i < n; ++i) {
            Term want = dual(t.kids[i]);
            if (want.is_leaf() || want.op != Op::Tensor) {
                // single child vs single child; found from both ends, so
                // keep only j > i
                for (size_t j = i + 1; j < n; ++j)
                    if (equal_mod_ids(want, t.kids[j]))
                        out.push_back(Cut{term_leaf_ids(t.kids[i]),
                                          term_leaf_ids(t.kids[j])});
            } else {
                // match want's children against a subset of the other kids
                size_t k = want.kids.size();
                std::vector<int> others;
                for (size_t j = 0; j < n; ++j)
                    if (j != i) others.push_back((int)j);
                std::vector<int> sel;
                std::function<void(size_t)> choose = [&](size_t from) {
                    if (sel.size() == k) {
                        if (equal_mod_ids(want, regroup(t, sel)))
                            out.push_back(
                                Cut{term_leaf_ids(t.kids[i]),
                                    term_leaf_ids(regroup(t, sel))});
                        return;
                    }
                    for (size_t p = from; p < others.size(); ++p) {
                        sel.push_back(others[p]);
                        choose(p + 1);
                        sel.pop_back();
                    }
                };
                choose(0);
            }
        }
    }
    for (const auto& k : t.kids) find_cuts_rec(k, out);
}

// Pair the leaves of two dual-mod-ids terms, deterministically.
bool match_dual(const Term& a, const Term& b,
                std::vector<std::pair<int, int>>& out) {
    if (a.is_leaf()) {
        if (!b.is_leaf() || a.name != b.name || a.neg == b.neg) return false;
        out.push_back({a.id, b.id});
        return true;
    }
    if (b.is_leaf() || a.kids.size() != b.kids.size()) return false;
    if (a.op == Op::Before) {
        // before is self-dual and order preserving: positional
        for (size_t i = 0; i < a.kids.size(); ++i)
            if (!match_dual(a.kids[i], b.kids[i], out)) return false;
        return true;
    }
    // par/tensor children are sorted differently under dual: greedy bijection
    std::vector<char> used(b.kids.size(), 0);
    for (const auto& ka : a.kids) {
        Term want = dual(ka);
        bool ok = false;
        for (size_t j = 0; j < b.kids.size(); ++j) {
            if (used[j]) continue;
            if (!equal_mod_ids(want, canon(b.kids[j]))) continue;
            size_t base = out.size();
            if (match_dual(ka, b.kids[j], out)) {
                used[j] = 1;
                ok = true;
                break;
            }
            out.resize(base);
        }
        if (!ok) return false;
    }
    return true;
}

// Remove, inside t, the tensor children making up the two cut sides (each
// side may span several children of a flattened tensor node).  Returns
// nullopt when the whole term vanishes.
std::optional<Term> drop_cut(const Term& t, const Cut& cut,
                             std::optional<Term>* left,
                             std::optional<Term>* right) {
    if (t.is_leaf()) return t;
    if (!t.formula && t.op == Op::Tensor) {
        std::vector<int> ls, rs, rest_idx;
        std::set<int> lseen, rseen;
        for (size_t i = 0; i < t.kids.size(); ++i) {
            std::set<int> ids = term_leaf_ids(t.kids[i]);
            bool in_l = std::includes(cut.left_ids.begin(),
                                      cut.left_ids.end(), ids.begin(),
                                      ids.end());
            bool in_r = std::includes(cut.right_ids.begin(),
                                      cut.right_ids.end(), ids.begin(),
                                      ids.end());
            if (in_l) {
                ls.push_back((int)i);
                lseen.insert(ids.begin(), ids.end());
            } else if (in_r) {
                rs.push_back((int)i);
                rseen.insert(ids.begin(), ids.end());
            } else {
                rest_idx.push_back((int)i);
            }
        }
        if (!ls.empty() && !rs.empty() && lseen == cut.left_ids &&
            rseen == cut.right_ids) {
            *left = regroup(t, ls);
            *right = regroup(t, rs);
            if (rest_idx.empty()) return std::nullopt;
            std::vector<Term> rest;
            for (int i : rest_idx) rest.push_back(t.kids[i]);
            if (rest.size() == 1) return rest[0];
            Term r = t;
            r.kids = std::move(rest);
            return r;
        }
    }
    Term r = t;
    std::vector<Term> nk;
    for (const auto& k : t.kids) {
        auto sub = drop_cut(k, cut, left, right);
        if (sub) nk.push_back(*sub);
    }
    if (nk.empty()) return std::nullopt;
    r.kids = std::move(nk);
    return r;
}

}  // namespace

std::vector<Cut> find_cuts(const ProofStructure& ps) {
    std::vector<Cut> out;
    find_cuts_rec(canon(ps.conclusion), out);
    return out;
}

std::optional<CutResult> eliminate_cut(const ProofStructure& ps,
                                       const Cut& cut) {
    Term conc = canon(ps.conclusion);
    std::optional<Term> left, right;
    auto reduced = drop_cut(conc, cut, &left, &right);
    if (!left || !right) return std::nullopt;

    std::vector<std::pair<int, int>> atomic;
    if (!match_dual(canon(*left), canon(*right), atomic)) return std::nullopt;

    std::map<int, int> cut_adj, ax_adj;
    for (auto [a, b] : atomic) {
        cut_adj[a] = b;
        cut_adj[b] = a;
    }
    std::map<int, std::pair<int, int>> ax_of;  // endpoint -> original axiom
    for (auto [a, b] : ps.axioms) {
        ax_adj[a] = b;
        ax_adj[b] = a;
        ax_of[a] = ax_of[b] = {a, b};
    }

    CutResult res;
    std::set<int> inside;
    for (int i : cut.left_ids) inside.insert(i);
    for (int i : cut.right_ids) inside.insert(i);

    std::set<int> visited;
    std::vector<int> outside_ids;
    std::vector<const Term*> leaves;
    collect_leaves(conc, leaves);
    for (const Term* l : leaves)
        if (!inside.count(l->id)) outside_ids.push_back(l->id);
    std::sort(outside_ids.begin(), outside_ids.end());

    std::vector<std::pair<int, int>> new_axioms;
    for (int x : outside_ids) {
        if (visited.count(x)) continue;
        visited.insert(x);
        Chain ch;
        ch.a = x;
        int cur = x;
        while (true) {
            int y = ax_adj.at(cur);
            visited.insert(y);
            ch.axioms.push_back(ax_of.at(cur));
            if (!inside.count(y)) {
                ch.b = y;
                break;
            }
            cur = cut_adj.at(y);
            visited.insert(cur);
        }
        new_axioms.push_back({ch.a, ch.b});
        if (ch.axioms.size() > 1) res.chains.push_back(std::move(ch));
    }
    // remaining unvisited cut atoms form loops
    for (int s : inside) {
        if (visited.count(s)) continue;
        Chain ch;
        ch.loop = true;
        int cur = s;
        while (!visited.count(cur)) {
            visited.insert(cur);
            int y = ax_adj.at(cur);
            visited.insert(y);
            ch.axioms.push_back(ax_of.at(cur));
            cur = cut_adj.at(y);
        }
        res.chains.push_back(std::move(ch));
    }

    if (!reduced) return std::nullopt;  // nothing left of the conclusion
    res.net.conclusion = canon(*reduced);
    res.net.axioms = std::move(new_axioms);
    return res;
}

CutAnalysis analyze_cuts(const ProofStructure& ps) {
    CutAnalysis res;
    Term cur = canon(ps.conclusion);
    while (true) {
        ProofStructure tmp{ps.axioms, cur};
        auto cuts = find_cuts(tmp);
        if (cuts.empty()) {
            res.residual = cur;
            return res;
        }
        std::optional<Term> left, right;
        auto reduced = drop_cut(cur, cuts.front(), &left, &right);
        if (!left || !right) {  // should not happen
            res.residual = cur;
            return res;
        }
        std::vector<std::pair<int, int>> atomic;
        if (!match_dual(canon(*left), canon(*right), atomic)) {
            res.residual = cur;
            return res;
        }
        res.atom_pairs.push_back(std::move(atomic));
        if (!reduced) return res;  // residual empty
        cur = canon(*reduced);
    }
}

NormalizeResult normalize(const ProofStructure& ps) {
    NormalizeResult res;
    res.net = ps;
    res.net.conclusion = canon(res.net.conclusion);
    while (true) {
        auto cuts = find_cuts(res.net);
        if (cuts.empty()) break;
        auto step = eliminate_cut(res.net, cuts.front());
        if (!step) break;
        for (auto& ch : step->chains) {
            if (ch.loop) ++res.loops;
            res.chains.push_back(ch);
        }
        res.net = std::move(step->net);
    }
    return res;
}

// ---- splittings -------------------------------------------------------------

ProofStructure restrict_structure(const ProofStructure& ps,
                                  const std::vector<int>& axiom_indices) {
    std::set<int> keep;
    ProofStructure out;
    for (int i : axiom_indices) {
        keep.insert(ps.axioms[i].first);
        keep.insert(ps.axioms[i].second);
        out.axioms.push_back(ps.axioms[i]);
    }
    Relation r = to_relation(ps.conclusion);
    Relation sub;
    sub.points = keep;
    for (auto p : r.pairs)
        if (keep.count(p.first) && keep.count(p.second)) sub.pairs.insert(p);
    for (int p : keep) sub.atoms[p] = r.atoms.at(p);
    auto t = from_relation(sub);
    assert(t.has_value());
    out.conclusion = *t;
    return out;
}

std::vector<Splitting> find_splittings(const ProofStructure& ps) {
    std::vector<Splitting> out;
    const size_t m = ps.axioms.size();
    if (m < 2) return out;

    Relation rel = to_relation(ps.conclusion);
    Term conc = canon(ps.conclusion);
    std::vector<const Term*> blocks;
    if (!conc.is_leaf() && conc.op == Op::Par && !conc.formula)
        for (const auto& k : conc.kids) blocks.push_back(&k);
    else
        blocks.push_back(&conc);

    // every ordered bipartition (part1, part2), both nonempty
    for (unsigned m1 = 1; m1 + 1 < (1u << m); ++m1) {
        {
            std::vector<int> p1, p2;
            std::set<int> ids1, ids2;
            for (size_t i = 0; i < m; ++i) {
                if (m1 & (1u << i)) {
                    p1.push_back((int)i);
                    ids1.insert(ps.axioms[i].first);
                    ids1.insert(ps.axioms[i].second);
                } else {
                    p2.push_back((int)i);
                    ids2.insert(ps.axioms[i].first);
                    ids2.insert(ps.axioms[i].second);
                }
            }

            // directed-mix partition: no cross edges, cross arcs part1->part2
            bool dimix = true;
            for (int x : ids1) {
                for (int y : ids2)
                    if (rel.pairs.count({y, x})) {  // edge or backward arc
                        dimix = false;
                        break;
                    }
                if (!dimix) break;
            }
            if (dimix) {
                Splitting s;
                s.kind = Splitting::Dimix;
                s.part1 = p1;
                s.part2 = p2;
                out.push_back(std::move(s));
            }

            if (!(m1 & 1u)) goto next_mask;  // tensor splits: unordered, fix
                                             // axiom 0 in part 1

            // splitting tensor: one tensor block divides between the parts,
            // all other blocks fall wholly in one part
            for (const Term* blk : blocks) {
                if (blk->is_leaf() || blk->op != Op::Tensor) continue;
                bool ok = true;
                std::set<int> h1, h2;
                for (const Term* other : blocks) {
                    if (other == blk) continue;
                    std::set<int> ids = term_leaf_ids(*other);
                    bool in1 = std::includes(ids1.begin(), ids1.end(),
                                             ids.begin(), ids.end());
                    bool in2 = std::includes(ids2.begin(), ids2.end(),
                                             ids.begin(), ids.end());
                    if (!in1 && !in2) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                for (const auto& k : blk->kids) {
                    std::set<int> ids = term_leaf_ids(k);
                    bool in1 = std::includes(ids1.begin(), ids1.end(),
                                             ids.begin(), ids.end());
                    bool in2 = std::includes(ids2.begin(), ids2.end(),
                                             ids.begin(), ids.end());
                    if (in1)
                        h1.insert(ids.begin(), ids.end());
                    else if (in2)
                        h2.insert(ids.begin(), ids.end());
                    else {
                        ok = false;
                        break;
                    }
                }
                if (!ok || h1.empty() || h2.empty()) continue;
                Splitting s;
                s.kind = Splitting::Tensor;
                s.part1 = p1;
                s.part2 = p2;
                s.half1 = std::move(h1);
                s.half2 = std::move(h2);
                out.push_back(std::move(s));
            }
        }
    next_mask:;
    }
    return out;
}

std::optional<Splitting> find_splitting(const ProofStructure& ps) {
    auto all = find_splittings(ps);
    if (all.empty()) return std::nullopt;
    return all.front();
}

// ---- construction and enumeration -------------------------------------------

ProofStructure structure_of_derivation(const Term& axiom_term,
                                       const Derivation& d) {
    ProofStructure ps;
    Term ax = canon(axiom_term);
    std::vector<const Term*> pars;
    if (!ax.is_leaf() && ax.op == Op::Tensor)
        for (const auto& k : ax.kids) pars.push_back(&k);
    else
        pars.push_back(&ax);
    for (const Term* p : pars) {
        std::set<int> ids = term_leaf_ids(*p);
        assert(ids.size() == 2);
        auto it = ids.begin();
        int a = *it++;
        ps.axioms.push_back({a, *it});
    }
    ps.conclusion = d.steps.empty() ? ax : canon(d.steps.back().after);
    return ps;
}

namespace {

using TermList = std::vector<Term>;

void set_partitions(const std::vector<int>& items, size_t i,
                    std::vector<std::vector<int>>& acc,
                    std::vector<std::vector<std::vector<int>>>& out) {
    if (i == items.size()) {
        if (acc.size() >= 2) out.push_back(acc);
        return;
    }
    for (size_t b = 0; b < acc.size(); ++b) {
        acc[b].push_back(items[i]);
        set_partitions(items, i + 1, acc, out);
        acc[b].pop_back();
    }
    acc.push_back({items[i]});
    set_partitions(items, i + 1, acc, out);
    acc.pop_back();
}

void ordered_partitions(const std::vector<int>& items, size_t i,
                        std::vector<std::vector<int>>& acc,
                        std::vector<std::vector<std::vector<int>>>& out) {
    // every arrangement of items into an ordered sequence of nonempty blocks
    if (i == items.size()) {
        if (acc.size() >= 2) out.push_back(acc);
        return;
    }
    for (size_t b = 0; b < acc.size(); ++b) {
        acc[b].push_back(items[i]);
        ordered_partitions(items, i + 1, acc, out);
        acc[b].pop_back();
    }
    for (size_t pos = 0; pos <= acc.size(); ++pos) {
        acc.insert(acc.begin() + pos, {items[i]});
        ordered_partitions(items, i + 1, acc, out);
        acc.erase(acc.begin() + pos);
    }
}

void combos(const std::vector<TermList>& choices, size_t i,
            std::vector<Term>& acc, Op op, std::vector<Term>& out) {
    if (i == choices.size()) {
        out.push_back(canon(Term::node(op, acc)));
        return;
    }
    for (const auto& t : choices[i]) {
        if (!t.is_leaf() && t.op == op && !t.formula) continue;
        acc.push_back(t);
        combos(choices, i + 1, acc, op, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Term> enumerate_dicograph_terms(const std::vector<Term>& leaves) {
    std::map<std::vector<int>, TermList> memo;
    std::function<const TermList&(const std::vector<int>&)> gen =
        [&](const std::vector<int>& idx) -> const TermList& {
        auto it = memo.find(idx);
        if (it != memo.end()) return it->second;
        TermList out;
        if (idx.size() == 1) {
            out.push_back(leaves[idx[0]]);
        } else {
            std::vector<std::vector<std::vector<int>>> parts;
            std::vector<std::vector<int>> acc;
            set_partitions(idx, 0, acc, parts);
            for (Op op : {Op::Par, Op::Tensor}) {
                for (const auto& p : parts) {
                    std::vector<TermList> choices;
                    for (const auto& blk : p) choices.push_back(gen(blk));
                    std::vector<Term> tmp;
                    combos(choices, 0, tmp, op, out);
                }
            }
            parts.clear();
            ordered_partitions(idx, 0, acc, parts);
            for (const auto& p : parts) {
                std::vector<TermList> choices;
                for (const auto& blk : p) choices.push_back(gen(blk));
                std::vector<Term> tmp;
                combos(choices, 0, tmp, Op::Before, out);
            }
        }
        return memo.emplace(idx, std::move(out)).first->second;
    };
    std::vector<int> idx(leaves.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
    return gen(idx);
}

std::vector<ProofStructure> unsplittable_nets(int axioms) {
    if (axioms != 6)
        throw std::invalid_argument(
            "unsplittable_nets: only a six-axiom search is implemented");
    std::vector<Term> blocks{
        *parse_term("a#1*(c#5<b^#4)"), *parse_term("d#7*(e^#10<f^#12)"),
        *parse_term("a^#2<f#11"),      *parse_term("e#9<b#3"),
        *parse_term("c^#6"),           *parse_term("d^#8")};
    std::vector<std::pair<int, int>> ax{{1, 2},  {3, 4},  {5, 6},
                                        {7, 8},  {9, 10}, {11, 12}};
    std::vector<ProofStructure> out;
    std::set<std::string> seen;
    for (const auto& t : enumerate_dicograph_terms(blocks)) {
        if (!seen.insert(to_text_ids(t)).second) continue;
        ProofStructure ps{ax, t};
        if (is_correct(ps) && !find_splitting(ps)) out.push_back(ps);
    }
    return out;
}

std::vector<ProofStructure> enumerate_structures(
    const std::vector<Term>& atoms) {
    std::vector<ProofStructure> out;
    // matchings of positive to negative occurrences, name by name
    std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> occ;
    for (const auto& a : atoms)
        (a.neg ? occ[a.name].second : occ[a.name].first).push_back(a.id);
    for (auto& [n, pn] : occ) {
        if (pn.first.size() != pn.second.size()) return out;
        std::sort(pn.first.begin(), pn.first.end());
        std::sort(pn.second.begin(), pn.second.end());
    }
    std::vector<std::vector<std::pair<int, int>>> matchings{{}};
    for (auto& [n, pn] : occ) {
        std::vector<int> negs = pn.second;
        std::vector<std::vector<std::pair<int, int>>> next;
        do {
            for (auto base : matchings) {
                for (size_t i = 0; i < negs.size(); ++i)
                    base.push_back({pn.first[i], negs[i]});
                next.push_back(std::move(base));
            }
        } while (std::next_permutation(negs.begin(), negs.end()));
        matchings = std::move(next);
    }
    auto terms = enumerate_dicograph_terms(atoms);
    for (const auto& t : terms)
        for (const auto& m : matchings)
            out.push_back(ProofStructure{m, t});
    return out;
}

}  // namespace pomset
