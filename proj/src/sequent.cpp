// Rule engine shared by the sp-pomset and dicograph sequent calculi.
//
// The checker replays a proof tree bottom-up.  Axioms mint globally unique
// occurrence ids (axiom k introduces 2k+1 for the positive atom and 2k+2 for
// the negated one, in leftmost-premise order), every other rule recomputes
// its conclusion from the premises and compares it with the stated conclusion
// modulo occurrence ids.  Entropy is validated twice: relationally (same
// blocks, weaker edge-free outer order) and by rewriting reachability with
// the four before/par rules on the order skeleton; the two must agree.

#include "pomset/sequent.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "pomset/rewrite.hpp"

namespace pomset {

const char* rule_label(RuleName r) {
    switch (r) {
        case RuleName::Axiom: return "Axiom";
        case RuleName::Dimix: return "Dimix";
        case RuleName::Entropy: return "Entropy";
        case RuleName::TensorOrCut: return "TensorOrCut";
        case RuleName::ParIntro: return "ParIntro";
        case RuleName::BefIntro: return "BefIntro";
        case RuleName::TensorIntro: return "TensorIntro";
    }
    return "?";
}

std::optional<RuleName> rule_from_label(const std::string& label) {
    for (RuleName r : {RuleName::Axiom, RuleName::Dimix, RuleName::Entropy,
                       RuleName::TensorOrCut, RuleName::ParIntro,
                       RuleName::BefIntro, RuleName::TensorIntro})
        if (label == rule_label(r)) return r;
    return std::nullopt;
}

int rule_arity(RuleName r) {
    switch (r) {
        case RuleName::Axiom: return 0;
        case RuleName::Dimix:
        case RuleName::TensorOrCut: return 2;
        default: return 1;
    }
}

namespace {

bool is_block(const Term& t) { return t.is_leaf() || t.formula; }

// top-level par components of a sequent: the children of a structural par
// root, or the whole term
std::vector<Term> components(const Term& t) {
    if (t.op == Op::Par && !t.formula) return t.kids;
    return {t};
}

// --- entropy ----------------------------------------------------------------

// Maximal subterms reachable from the root through structural par/before
// nodes only: formula blocks, leaves and structural tensor blocks.  These are
// the finest blocks for which the outer order is an sp order.
void order_blocks(const Term& t, std::vector<Term>& out) {
    if (is_block(t) || t.op == Op::Tensor) {
        out.push_back(t);
        return;
    }
    for (const auto& k : t.kids) order_blocks(k, out);
}

const Term* node_with_ids(const Term& t, const std::set<int>& ids) {
    if (leaf_ids(t) == ids) return &t;
    for (const auto& k : t.kids)
        if (const Term* r = node_with_ids(k, ids)) return r;
    return nullptr;
}

// Relational side: same blocks, edge-free quotient orders, conclusion order
// contained in the premise order.  Cross-checked against rewriting
// reachability on the skeleton; a disagreement is a library bug.
bool entropy_valid(const Term& premise, const Term& conclusion,
                   std::string* reason) {
    if (leaf_ids(premise) != leaf_ids(conclusion)) {
        if (reason) *reason = "conclusion changes the atom occurrences";
        return false;
    }
    std::vector<Term> blocks;
    order_blocks(premise, blocks);
    for (const auto& b : blocks) {
        const Term* c = node_with_ids(conclusion, leaf_ids(b));
        if (!c || *c != b) {
            if (reason) *reason = "conclusion alters the block " + to_text(b);
            return false;
        }
    }
    Relation rp = to_relation(premise), rc = to_relation(conclusion);
    size_t p = blocks.size();
    Relation qp, qc;
    for (size_t i = 0; i < p; ++i) {
        qp.points.insert((int)i);
        qp.atoms[(int)i] = {"x", false};
    }
    qc = qp;
    for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < p; ++j) {
            if (i == j) continue;
            int x = *leaf_ids(blocks[i]).begin();
            int y = *leaf_ids(blocks[j]).begin();
            if (rp.has(x, y)) qp.pairs.insert({(int)i, (int)j});
            if (rc.has(x, y)) qc.pairs.insert({(int)i, (int)j});
        }
    for (size_t i = 0; i < p; ++i)
        for (size_t j = i + 1; j < p; ++j)
            if (qc.edge((int)i, (int)j)) {
                if (reason) *reason = "blocks joined by an edge in the outer order";
                return false;
            }
    bool subset = relation_subset(qc, qp);
    // independent decision through the rewriting characterization
    auto skel_p = from_relation(qp);
    auto skel_c = from_relation(qc);
    if (!skel_p || !skel_c)
        throw std::logic_error("entropy: block quotient is not a dicograph");
    bool reach = includes(*skel_p, *skel_c, entropy_rules()).has_value();
    if (reach != subset)
        throw std::logic_error("entropy: rewriting and order inclusion disagree");
    if (!subset && reason)
        *reason = "conclusion order is not contained in the premise order";
    return subset;
}

// Remap the stated term's occurrence ids onto the premise's ids (name classes
// must match); tries every class-respecting bijection and returns the first
// remapped conclusion accepted by `valid`.
std::optional<Term> remap_onto(const Term& premise, const Term& stated,
                               const std::function<bool(const Term&)>& valid) {
    std::vector<const Term*> pl, sl;
    collect_leaves(premise, pl);
    collect_leaves(stated, sl);
    if (pl.size() != sl.size()) return std::nullopt;
    std::map<std::pair<std::string, bool>, std::vector<int>> pcls;
    std::map<std::pair<std::string, bool>, std::vector<int>> scls;
    for (const Term* l : pl) pcls[{l->name, l->neg}].push_back(l->id);
    for (const Term* l : sl) scls[{l->name, l->neg}].push_back(l->id);
    if (pcls.size() != scls.size()) return std::nullopt;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> classes;
    for (auto& [key, pids] : pcls) {
        auto it = scls.find(key);
        if (it == scls.end() || it->second.size() != pids.size())
            return std::nullopt;
        std::sort(pids.begin(), pids.end());
        classes.push_back({it->second, pids});
    }
    std::map<int, int> remap;
    std::function<std::optional<Term>(size_t)> go =
        [&](size_t ci) -> std::optional<Term> {
        if (ci == classes.size()) {
            std::function<Term(const Term&)> sub = [&](const Term& t) {
                Term r = t;
                if (t.is_leaf()) {
                    r.id = remap.at(t.id);
                    return r;
                }
                for (auto& k : r.kids) k = sub(k);
                return r;
            };
            Term candidate = canon(sub(stated));
            if (valid(candidate)) return candidate;
            return std::nullopt;
        }
        auto [sids, pids] = classes[ci];
        do {
            for (size_t i = 0; i < sids.size(); ++i) remap[sids[i]] = pids[i];
            if (auto r = go(ci + 1)) return r;
        } while (std::next_permutation(pids.begin(), pids.end()));
        return std::nullopt;
    };
    return go(0);
}

// --- the checker ------------------------------------------------------------

struct Checker {
    Calculus calc;
    std::vector<std::pair<int, int>> axioms;
    std::optional<RuleViolation> violation;

    std::optional<Term> fail(const ProofTree& n, const std::string& why) {
        if (!violation) violation = RuleViolation{&n, n.rule, why};
        return std::nullopt;
    }

    std::optional<Term> check(const ProofTree& n) {
        if ((int)n.premises.size() != rule_arity(n.rule))
            return fail(n, "rule expects " + std::to_string(rule_arity(n.rule)) +
                               " premises");
        std::vector<Term> prem;
        for (const auto& p : n.premises) {
            auto c = check(p);
            if (!c) return std::nullopt;
            prem.push_back(std::move(*c));
        }
        switch (n.rule) {
            case RuleName::Axiom: return axiom(n);
            case RuleName::Dimix: return dimix(n, prem[0], prem[1]);
            case RuleName::Entropy: return entropy(n, prem[0]);
            case RuleName::TensorOrCut: return tensor_or_cut(n, prem[0], prem[1]);
            case RuleName::ParIntro: return intro(n, prem[0], EquivKind::Par);
            case RuleName::BefIntro: return intro(n, prem[0], EquivKind::Before);
            case RuleName::TensorIntro:
                if (calc == Calculus::SpPomset)
                    return fail(n, "tensor folding is a dicograph-calculus rule");
                return intro(n, prem[0], EquivKind::Tensor);
        }
        return fail(n, "unknown rule");
    }

    std::optional<Term> accept(const ProofTree& n, Term computed) {
        if (!equal_mod_ids(computed, n.conclusion))
            return fail(n, "stated conclusion " + to_text(n.conclusion) +
                               " differs from the derived " + to_text(computed));
        return computed;
    }

    std::optional<Term> axiom(const ProofTree& n) {
        const Term& c = n.conclusion;
        bool shape = c.op == Op::Par && !c.formula && c.kids.size() == 2 &&
                     c.kids[0].is_leaf() && c.kids[1].is_leaf() &&
                     c.kids[0].name == c.kids[1].name &&
                     c.kids[0].neg != c.kids[1].neg;
        if (!shape) return fail(n, "axiom conclusion must be a|a^");
        int k = (int)axioms.size();
        axioms.push_back({2 * k + 1, 2 * k + 2});
        return canon(Term::node(Op::Par,
                                {Term::atom(c.kids[0].name, false, 2 * k + 1),
                                 Term::atom(c.kids[0].name, true, 2 * k + 2)}));
    }

    std::optional<Term> dimix(const ProofTree& n, Term g, Term d) {
        return accept(n, canon(Term::node(Op::Before, {std::move(g), std::move(d)})));
    }

    std::optional<Term> entropy(const ProofTree& n, const Term& premise) {
        std::string reason = "conclusion is not a sub sp order of the premise";
        auto c = remap_onto(premise, n.conclusion, [&](const Term& cand) {
            return entropy_valid(premise, cand, &reason);
        });
        if (!c) return fail(n, reason);
        return c;
    }

    std::optional<Term> tensor_or_cut(const ProofTree& n, const Term& p1,
                                      const Term& p2) {
        std::vector<Term> c1 = components(p1), c2 = components(p2);
        auto subsets = [&](const std::vector<Term>& comps) {
            std::vector<unsigned> masks;
            for (unsigned m = 1; m < (1u << comps.size()); ++m) {
                if (calc == Calculus::SpPomset) {
                    // the active formula A is a single block
                    if ((m & (m - 1)) != 0) continue;
                    unsigned bit = 0;
                    while (!(m & (1u << bit))) ++bit;
                    if (!is_block(comps[bit])) continue;
                }
                masks.push_back(m);
            }
            return masks;
        };
        auto side = [&](const std::vector<Term>& comps, unsigned m, Term& active,
                        std::vector<Term>& rest) {
            std::vector<Term> act;
            for (size_t i = 0; i < comps.size(); ++i)
                (m & (1u << i) ? act : rest).push_back(comps[i]);
            active = act.size() == 1 ? act[0] : canon(Term::node(Op::Par, act));
        };
        for (unsigned ma : subsets(c1))
            for (unsigned mb : subsets(c2)) {
                Term a, b;
                std::vector<Term> rest;
                side(c1, ma, a, rest);
                side(c2, mb, b, rest);
                if (!n.a_ids.empty() &&
                    (leaf_ids(a) != n.a_ids || leaf_ids(b) != n.b_ids))
                    continue;
                Term block = canon(Term::node(Op::Tensor, {a, b},
                                              calc == Calculus::SpPomset));
                rest.push_back(std::move(block));
                Term concl = canon(Term::node(Op::Par, rest));
                if (equal_mod_ids(concl, n.conclusion)) return concl;
            }
        return fail(n, "no choice of active formulas derives the stated conclusion");
    }

    std::optional<Term> intro(const ProofTree& n, const Term& premise,
                              EquivKind kind) {
        for (const EquivPair& ep : equivalent_pairs(premise)) {
            if (ep.kind != kind) continue;
            if (!n.a_ids.empty()) {
                bool exact = ep.left == n.a_ids && ep.right == n.b_ids;
                bool swapped = kind != EquivKind::Before &&
                               ep.left == n.b_ids && ep.right == n.a_ids;
                if (!exact && !swapped) continue;
            }
            auto folded = fold(premise, ep.left, ep.right);
            if (folded && equal_mod_ids(*folded, n.conclusion)) return folded;
        }
        return fail(n, "no equivalent pair folds into the stated conclusion");
    }
};

}  // namespace

CheckResult check_proof(const ProofTree& p, Calculus calc) {
    Checker ck{calc};
    auto concl = ck.check(p);
    CheckResult res;
    res.violation = ck.violation;
    if (concl) {
        res.conclusion = std::move(*concl);
        res.axioms = std::move(ck.axioms);
    }
    return res;
}

ProofStructure proof_to_net(const ProofTree& p, Calculus calc) {
    CheckResult res = check_proof(p, calc);
    if (!res.ok())
        throw std::invalid_argument("proof does not check: " +
                                    res.violation->reason);
    return ProofStructure{res.axioms, unfold_all(res.conclusion)};
}

// --- sequentialisation -------------------------------------------------------

namespace {

// dicograph-calculus proof of a net with a fully unfolded conclusion
std::optional<ProofTree> seq_rec(const ProofStructure& ps) {
    const Term& t = ps.conclusion;
    if (ps.axioms.size() == 1) {
        auto [x, y] = ps.axioms[0];
        bool ax = t.op == Op::Par && t.kids.size() == 2 && t.kids[0].is_leaf() &&
                  t.kids[1].is_leaf() && t.kids[0].neg != t.kids[1].neg &&
                  t.kids[0].name == t.kids[1].name &&
                  leaf_ids(t) == std::set<int>{x, y};
        if (!ax) return std::nullopt;
        return ProofTree{RuleName::Axiom, t, {}, {}, {}};
    }
    for (const Splitting& sp : find_splittings(ps)) {
        ProofStructure ps1 = restrict_structure(ps, sp.part1);
        ProofStructure ps2 = restrict_structure(ps, sp.part2);
        auto d1 = seq_rec(ps1);
        if (!d1) continue;
        auto d2 = seq_rec(ps2);
        if (!d2) continue;
        if (sp.kind == Splitting::Tensor) {
            return ProofTree{RuleName::TensorOrCut, t, {}, {},
                             {std::move(*d1), std::move(*d2)}};
        }
        Term full = canon(Term::node(Op::Before, {ps1.conclusion, ps2.conclusion}));
        ProofTree mix{RuleName::Dimix, full, {}, {},
                      {std::move(*d1), std::move(*d2)}};
        if (full == t) return mix;
        return ProofTree{RuleName::Entropy, t, {}, {}, {std::move(mix)}};
    }
    return std::nullopt;
}

// Rebuild the formula blocks of `target` on top of `tree` (whose conclusion
// `work` is the full unfolding) with fold steps, innermost first.
void replay_folds(const Term& target, Term& work, ProofTree& tree) {
    if (target.is_leaf()) return;
    for (const Term& k : target.kids) replay_folds(k, work, tree);
    if (!target.formula) return;
    RuleName rule = target.op == Op::Par      ? RuleName::ParIntro
                    : target.op == Op::Before ? RuleName::BefIntro
                                              : RuleName::TensorIntro;
    std::set<int> acc = leaf_ids(target.kids[0]);
    for (size_t i = 1; i < target.kids.size(); ++i) {
        std::set<int> next = leaf_ids(target.kids[i]);
        auto folded = fold(work, acc, next);
        if (!folded) throw std::logic_error("sequentialize: fold replay failed");
        work = std::move(*folded);
        tree = ProofTree{rule, work, {}, {}, {std::move(tree)}};
        acc.insert(next.begin(), next.end());
    }
}

}  // namespace

std::optional<ProofTree> sequentialize(const ProofStructure& ps) {
    ProofStructure flat{ps.axioms, unfold_all(ps.conclusion)};
    auto tree = seq_rec(flat);
    if (!tree) return std::nullopt;
    Term work = flat.conclusion;
    replay_folds(ps.conclusion, work, *tree);
    return tree;
}

// --- random proofs -----------------------------------------------------------

namespace {

// true when no structural tensor node lies on the path (rewriting below a
// tensor would change a block, which entropy forbids)
bool path_outside_tensor(const Term& t, const std::vector<int>& path) {
    const Term* cur = &t;
    for (int i : path) {
        if (cur->op == Op::Tensor && !cur->formula) return false;
        cur = &cur->kids[i];
    }
    return cur->op != Op::Tensor || cur->formula;
}

}  // namespace

ProofTree random_proof(std::mt19937& rng, Calculus calc, int max_axioms) {
    auto pick = [&](int n) { return (int)(rng() % (unsigned)n); };
    static const char* names[] = {"a", "b", "c"};
    int n = 1 + pick(max_axioms);
    std::vector<ProofTree> pool;
    int next_id = 1;
    for (int i = 0; i < n; ++i) {
        std::string name = names[pick(3)];
        Term c = canon(Term::node(Op::Par, {Term::atom(name, false, next_id),
                                            Term::atom(name, true, next_id + 1)}));
        next_id += 2;
        pool.push_back(ProofTree{RuleName::Axiom, c, {}, {}, {}});
    }
    int unary_budget = 2 + pick(4);
    int guard = 200;
    while ((pool.size() > 1 || unary_budget > 0) && guard-- > 0) {
        int choice = pick(6);
        if (pool.size() == 1 && choice < 2) choice = 2 + pick(4);
        if (pool.size() > 1 && choice >= 2 && unary_budget <= 0) choice = pick(2);
        if (choice == 0) {  // dimix
            int i = pick((int)pool.size());
            int j = pick((int)pool.size());
            if (i == j) continue;
            Term c = canon(Term::node(
                Op::Before, {pool[i].conclusion, pool[j].conclusion}));
            ProofTree t{RuleName::Dimix, c, {}, {},
                        {std::move(pool[i]), std::move(pool[j])}};
            pool.erase(pool.begin() + std::max(i, j));
            pool.erase(pool.begin() + std::min(i, j));
            pool.push_back(std::move(t));
        } else if (choice == 1) {  // tensor / cut
            int i = pick((int)pool.size());
            int j = pick((int)pool.size());
            if (i == j) continue;
            auto active = [&](const Term& seq, Term& act,
                              std::vector<Term>& rest) {
                std::vector<Term> comps = components(seq);
                std::vector<int> ok;
                for (size_t k = 0; k < comps.size(); ++k)
                    if (calc == Calculus::Dicograph || is_block(comps[k]))
                        ok.push_back((int)k);
                if (ok.empty()) return false;
                int chosen = ok[pick((int)ok.size())];
                for (size_t k = 0; k < comps.size(); ++k)
                    if ((int)k != chosen) rest.push_back(comps[k]);
                act = comps[chosen];
                return true;
            };
            Term a, b;
            std::vector<Term> rest;
            if (!active(pool[i].conclusion, a, rest)) continue;
            if (!active(pool[j].conclusion, b, rest)) continue;
            rest.push_back(canon(Term::node(Op::Tensor, {a, b},
                                            calc == Calculus::SpPomset)));
            Term c = canon(Term::node(Op::Par, rest));
            ProofTree t{RuleName::TensorOrCut, c, {}, {},
                        {std::move(pool[i]), std::move(pool[j])}};
            pool.erase(pool.begin() + std::max(i, j));
            pool.erase(pool.begin() + std::min(i, j));
            pool.push_back(std::move(t));
        } else if (choice == 2) {  // entropy
            int i = pick((int)pool.size());
            std::vector<RewriteStep> steps;
            for (const auto& s :
                 applicable_steps(pool[i].conclusion, entropy_rules()))
                if (path_outside_tensor(pool[i].conclusion, s.path))
                    steps.push_back(s);
            if (steps.empty()) continue;
            auto after = apply_step(pool[i].conclusion,
                                    steps[pick((int)steps.size())]);
            if (!after || *after == pool[i].conclusion) continue;
            ProofTree t{RuleName::Entropy, *after, {}, {}, {std::move(pool[i])}};
            pool[i] = std::move(t);
            --unary_budget;
        } else {  // fold
            EquivKind kind = choice == 3   ? EquivKind::Par
                             : choice == 4 ? EquivKind::Before
                                           : EquivKind::Tensor;
            if (kind == EquivKind::Tensor && calc == Calculus::SpPomset) continue;
            RuleName rule = choice == 3   ? RuleName::ParIntro
                            : choice == 4 ? RuleName::BefIntro
                                          : RuleName::TensorIntro;
            int i = pick((int)pool.size());
            std::vector<EquivPair> eps;
            for (const auto& ep : equivalent_pairs(pool[i].conclusion))
                if (ep.kind == kind) eps.push_back(ep);
            if (eps.empty()) continue;
            const EquivPair& ep = eps[pick((int)eps.size())];
            auto folded = fold(pool[i].conclusion, ep.left, ep.right);
            if (!folded) continue;
            ProofTree t{rule, *folded, {}, {}, {std::move(pool[i])}};
            pool[i] = std::move(t);
            --unary_budget;
        }
    }
    while (pool.size() > 1) {  // guard exhausted: close with dimix
        Term c = canon(Term::node(Op::Before,
                                  {pool[0].conclusion, pool[1].conclusion}));
        ProofTree t{RuleName::Dimix, c, {}, {},
                    {std::move(pool[0]), std::move(pool[1])}};
        pool.erase(pool.begin(), pool.begin() + 2);
        pool.insert(pool.begin(), std::move(t));
    }
    return std::move(pool[0]);
}

}  // namespace pomset
