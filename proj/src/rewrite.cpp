// Dicograph inclusion rewriting: rule matching on canonical n-ary terms,
// breadth-first inclusion search, axiom derivations.

#include "pomset/rewrite.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace pomset {

namespace {

const std::pair<Rule, const char*> kRuleNames[] = {
    {Rule::TsPa4, "ts_pa4"},     {Rule::TsPa3, "ts_pa3"},
    {Rule::TsPa2, "ts_pa2"},     {Rule::TsBef4, "ts_bef4"},
    {Rule::TsBef3l, "ts_bef3l"}, {Rule::TsBef3r, "ts_bef3r"},
    {Rule::TsBef2, "ts_bef2"},   {Rule::BefPa4, "bef_pa4"},
    {Rule::BefPa3l, "bef_pa3l"}, {Rule::BefPa3r, "bef_pa3r"},
    {Rule::BefPa2, "bef_pa2"},
};

// Wrap a child list in op unless it is a single term.
Term grp(Op op, std::vector<Term> kids) {
    if (kids.size() == 1) return kids[0];
    return Term::node(op, std::move(kids));
}

std::vector<Term> pick(const std::vector<Term>& kids, unsigned mask) {
    std::vector<Term> out;
    for (size_t i = 0; i < kids.size(); ++i)
        if (mask & (1u << i)) out.push_back(kids[i]);
    return out;
}

std::vector<Term> slice(const std::vector<Term>& kids, size_t lo, size_t hi) {
    return std::vector<Term>(kids.begin() + lo, kids.begin() + hi);
}

// A child usable as a bound (X|Y) or (X<Y) operand: a structural node of
// the wanted op.  Formula nodes are opaque.
bool openable(const Term& t, Op op) {
    return t.op == op && !t.formula;
}

struct Collector {
    const std::set<Rule>* rules;
    std::vector<RewriteStep>* out;
    std::set<std::pair<std::pair<int, std::vector<int>>, Term>> seen;

    bool want(Rule r) const { return rules->count(r) != 0; }

    void emit_node(Rule r, const std::vector<int>& path, Op node_op,
                   std::vector<Term> new_kids) {
        Term rep = canon(grp(node_op, std::move(new_kids)));
        auto key = std::make_pair(std::make_pair((int)r, path), rep);
        if (!seen.insert(key).second) return;
        out->push_back(RewriteStep{r, path, std::move(rep)});
    }

    void tensor_rules(const Term& node, const std::vector<int>& path) {
        const auto& ks = node.kids;
        const size_t n = ks.size();
        const unsigned full = (1u << n) - 1;

        // leftover children of the node, excluding mask
        auto rest = [&](unsigned used) {
            std::vector<Term> r;
            for (size_t i = 0; i < n; ++i)
                if (!(used & (1u << i))) r.push_back(ks[i]);
            return r;
        };

        if (want(Rule::TsPa4)) {
            for (size_t i = 0; i < n; ++i) {
                if (!openable(ks[i], Op::Par)) continue;
                for (size_t j = i + 1; j < n; ++j) {
                    if (!openable(ks[j], Op::Par)) continue;
                    const auto& a = ks[i].kids;
                    const auto& b = ks[j].kids;
                    for (unsigned x = 1; x + 1 < (1u << a.size()); ++x)
                        for (unsigned u = 1; u + 1 < (1u << b.size()); ++u) {
                            std::vector<Term> xs = pick(a, x);
                            std::vector<Term> ys =
                                pick(a, ~x & ((1u << a.size()) - 1));
                            std::vector<Term> us = pick(b, u);
                            std::vector<Term> vs =
                                pick(b, ~u & ((1u << b.size()) - 1));
                            Term lhs = Term::node(
                                Op::Tensor, {grp(Op::Par, xs), grp(Op::Par, us)});
                            Term rhs = Term::node(
                                Op::Tensor, {grp(Op::Par, ys), grp(Op::Par, vs)});
                            std::vector<Term> nk =
                                rest((1u << i) | (1u << j));
                            nk.push_back(Term::node(Op::Par, {lhs, rhs}));
                            emit_node(Rule::TsPa4, path, Op::Tensor,
                                      std::move(nk));
                        }
                }
            }
        }

        if (want(Rule::TsPa3)) {
            for (size_t i = 0; i < n; ++i) {
                if (!openable(ks[i], Op::Par)) continue;
                const auto& a = ks[i].kids;
                unsigned others = full & ~(1u << i);
                for (unsigned x = 1; x + 1 < (1u << a.size()); ++x) {
                    // U: nonempty subset of the other children
                    for (unsigned u = others; u; u = (u - 1) & others) {
                        std::vector<Term> tk = pick(ks, u);
                        tk.push_back(grp(Op::Par, pick(a, x)));
                        std::vector<Term> nk = rest(u | (1u << i));
                        nk.push_back(Term::node(
                            Op::Par,
                            {grp(Op::Tensor, tk),
                             grp(Op::Par,
                                 pick(a, ~x & ((1u << a.size()) - 1)))}));
                        emit_node(Rule::TsPa3, path, Op::Tensor, std::move(nk));
                    }
                }
            }
        }

        if (want(Rule::TsPa2) || want(Rule::TsBef2)) {
            // ordered pairs (Y, U) of disjoint nonempty child subsets
            for (unsigned y = 1; y <= full; ++y) {
                unsigned others = full & ~y;
                for (unsigned u = others; u; u = (u - 1) & others) {
                    if (want(Rule::TsPa2) &&
                        (y & -y) < (u & -u)) {  // unordered, par commutes
                        std::vector<Term> nk = rest(y | u);
                        nk.push_back(Term::node(Op::Par,
                                                {grp(Op::Tensor, pick(ks, y)),
                                                 grp(Op::Tensor, pick(ks, u))}));
                        emit_node(Rule::TsPa2, path, Op::Tensor, std::move(nk));
                    }
                    if (want(Rule::TsBef2)) {  // Y*U ~> U<Y, ordered
                        std::vector<Term> nk = rest(y | u);
                        nk.push_back(
                            Term::node(Op::Before,
                                       {grp(Op::Tensor, pick(ks, u)),
                                        grp(Op::Tensor, pick(ks, y))}));
                        emit_node(Rule::TsBef2, path, Op::Tensor,
                                  std::move(nk));
                    }
                }
            }
        }

        if (want(Rule::TsBef4)) {
            for (size_t i = 0; i < n; ++i) {
                if (!openable(ks[i], Op::Before)) continue;
                for (size_t j = 0; j < n; ++j) {
                    if (j == i || !openable(ks[j], Op::Before)) continue;
                    if (j < i) continue;  // tensor commutes, swap is symmetric
                    const auto& a = ks[i].kids;
                    const auto& b = ks[j].kids;
                    for (size_t p = 1; p < a.size(); ++p)
                        for (size_t q = 1; q < b.size(); ++q) {
                            Term xu = Term::node(
                                Op::Tensor,
                                {grp(Op::Before, slice(a, 0, p)),
                                 grp(Op::Before, slice(b, 0, q))});
                            Term yv = Term::node(
                                Op::Tensor,
                                {grp(Op::Before, slice(a, p, a.size())),
                                 grp(Op::Before, slice(b, q, b.size()))});
                            std::vector<Term> nk = rest((1u << i) | (1u << j));
                            nk.push_back(Term::node(Op::Before, {xu, yv}));
                            emit_node(Rule::TsBef4, path, Op::Tensor,
                                      std::move(nk));
                        }
                }
            }
        }

        if (want(Rule::TsBef3l) || want(Rule::TsBef3r)) {
            for (size_t i = 0; i < n; ++i) {
                if (!openable(ks[i], Op::Before)) continue;
                const auto& a = ks[i].kids;
                unsigned others = full & ~(1u << i);
                for (size_t p = 1; p < a.size(); ++p) {
                    for (unsigned u = others; u; u = (u - 1) & others) {
                        if (want(Rule::TsBef3l)) {
                            // (X<Y)*U ~> (X*U)<Y
                            std::vector<Term> tk = pick(ks, u);
                            tk.push_back(grp(Op::Before, slice(a, 0, p)));
                            std::vector<Term> nk = rest(u | (1u << i));
                            nk.push_back(Term::node(
                                Op::Before,
                                {grp(Op::Tensor, tk),
                                 grp(Op::Before, slice(a, p, a.size()))}));
                            emit_node(Rule::TsBef3l, path, Op::Tensor,
                                      std::move(nk));
                        }
                        if (want(Rule::TsBef3r)) {
                            // Y*(U<V) ~> U<(Y*V)
                            std::vector<Term> tk = pick(ks, u);
                            tk.push_back(grp(Op::Before, slice(a, p, a.size())));
                            std::vector<Term> nk = rest(u | (1u << i));
                            nk.push_back(Term::node(
                                Op::Before,
                                {grp(Op::Before, slice(a, 0, p)),
                                 grp(Op::Tensor, tk)}));
                            emit_node(Rule::TsBef3r, path, Op::Tensor,
                                      std::move(nk));
                        }
                    }
                }
            }
        }
    }

    void before_rules(const Term& node, const std::vector<int>& path) {
        const auto& ks = node.kids;
        const size_t n = ks.size();

        auto splice = [&](size_t lo, size_t hi, Term mid) {
            std::vector<Term> nk = slice(ks, 0, lo);
            nk.push_back(std::move(mid));
            auto tail = slice(ks, hi, n);
            nk.insert(nk.end(), tail.begin(), tail.end());
            return nk;
        };

        if (want(Rule::BefPa4)) {
            for (size_t i = 0; i + 1 < n; ++i) {
                if (!openable(ks[i], Op::Par) || !openable(ks[i + 1], Op::Par))
                    continue;
                const auto& a = ks[i].kids;
                const auto& b = ks[i + 1].kids;
                for (unsigned x = 1; x + 1 < (1u << a.size()); ++x)
                    for (unsigned u = 1; u + 1 < (1u << b.size()); ++u) {
                        Term xu = Term::node(
                            Op::Before,
                            {grp(Op::Par, pick(a, x)), grp(Op::Par, pick(b, u))});
                        Term yv = Term::node(
                            Op::Before,
                            {grp(Op::Par, pick(a, ~x & ((1u << a.size()) - 1))),
                             grp(Op::Par, pick(b, ~u & ((1u << b.size()) - 1)))});
                        emit_node(Rule::BefPa4, path, Op::Before,
                                  splice(i, i + 2, Term::node(Op::Par, {xu, yv})));
                    }
            }
        }

        if (want(Rule::BefPa3l)) {
            for (size_t i = 0; i < n; ++i) {
                if (!openable(ks[i], Op::Par)) continue;
                const auto& a = ks[i].kids;
                for (unsigned x = 1; x + 1 < (1u << a.size()); ++x)
                    for (size_t j = i + 1; j < n; ++j) {
                        // (X|Y)<U with U = children i+1..j
                        std::vector<Term> bk;
                        bk.push_back(grp(Op::Par, pick(a, x)));
                        auto seg = slice(ks, i + 1, j + 1);
                        bk.insert(bk.end(), seg.begin(), seg.end());
                        Term par = Term::node(
                            Op::Par,
                            {grp(Op::Before, bk),
                             grp(Op::Par, pick(a, ~x & ((1u << a.size()) - 1)))});
                        emit_node(Rule::BefPa3l, path, Op::Before,
                                  splice(i, j + 1, std::move(par)));
                    }
            }
        }

        if (want(Rule::BefPa3r)) {
            for (size_t j = 0; j < n; ++j) {
                if (!openable(ks[j], Op::Par)) continue;
                const auto& b = ks[j].kids;
                for (unsigned u = 1; u + 1 < (1u << b.size()); ++u)
                    for (size_t i = 0; i < j; ++i) {
                        // Y<(U|V) with Y = children i..j-1
                        std::vector<Term> bk = slice(ks, i, j);
                        bk.push_back(
                            grp(Op::Par, pick(b, ~u & ((1u << b.size()) - 1))));
                        Term par =
                            Term::node(Op::Par, {grp(Op::Par, pick(b, u)),
                                                 grp(Op::Before, bk)});
                        emit_node(Rule::BefPa3r, path, Op::Before,
                                  splice(i, j + 1, std::move(par)));
                    }
            }
        }

        if (want(Rule::BefPa2)) {
            for (size_t i = 0; i < n; ++i)
                for (size_t m = i; m + 1 < n; ++m)
                    for (size_t j = m + 1; j < n; ++j) {
                        // Y<U ~> U|Y with Y = i..m, U = m+1..j
                        Term par = Term::node(
                            Op::Par, {grp(Op::Before, slice(ks, m + 1, j + 1)),
                                      grp(Op::Before, slice(ks, i, m + 1))});
                        emit_node(Rule::BefPa2, path, Op::Before,
                                  splice(i, j + 1, std::move(par)));
                    }
        }
    }

    void walk(const Term& t, std::vector<int>& path) {
        if (t.op == Op::Leaf || t.formula) return;
        if (t.op == Op::Tensor) tensor_rules(t, path);
        if (t.op == Op::Before) before_rules(t, path);
        for (size_t i = 0; i < t.kids.size(); ++i) {
            path.push_back((int)i);
            walk(t.kids[i], path);
            path.pop_back();
        }
    }
};

Term substitute(const Term& t, const std::vector<int>& path, size_t k,
                const Term& rep) {
    if (k == path.size()) return rep;
    Term out = t;
    out.kids[path[k]] = substitute(t.kids[path[k]], path, k + 1, rep);
    return out;
}

bool path_valid(const Term& t, const std::vector<int>& path) {
    const Term* cur = &t;
    for (int i : path) {
        if (i < 0 || (size_t)i >= cur->kids.size()) return false;
        cur = &cur->kids[i];
    }
    return true;
}

}  // namespace

const char* rule_name(Rule r) {
    for (auto& [k, v] : kRuleNames)
        if (k == r) return v;
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
    for (auto& [k, v] : kRuleNames)
        if (name == v) return k;
    return std::nullopt;
}

std::vector<Rule> all_rules() {
    std::vector<Rule> out;
    for (auto& [k, v] : kRuleNames) out.push_back(k);
    return out;
}

std::vector<Rule> dicograph_rules() {
    std::vector<Rule> out;
    for (auto& [k, v] : kRuleNames)
        if (k != Rule::TsPa4) out.push_back(k);
    return out;
}

std::vector<Rule> gmll_rules(bool mix) {
    std::vector<Rule> out{Rule::TsPa3};
    if (mix) out.push_back(Rule::TsPa2);
    return out;
}

std::vector<Rule> entropy_rules() {
    return {Rule::BefPa4, Rule::BefPa3l, Rule::BefPa3r, Rule::BefPa2};
}

std::string path_text(const std::vector<int>& path) {
    if (path.empty()) return "root";
    std::ostringstream os;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i) os << '.';
        os << path[i];
    }
    return os.str();
}

std::vector<RewriteStep> applicable_steps(const Term& t,
                                          const std::vector<Rule>& rules) {
    std::set<Rule> rs(rules.begin(), rules.end());
    std::vector<RewriteStep> out;
    Collector c{&rs, &out, {}};
    std::vector<int> path;
    c.walk(t, path);
    return out;
}

std::optional<Term> apply_step(const Term& t, const RewriteStep& step) {
    if (!path_valid(t, step.path)) return std::nullopt;
    return canon(substitute(t, step.path, 0, step.replacement));
}

std::string derivation_log(const Derivation& d) {
    std::ostringstream os;
    for (const auto& e : d.steps)
        os << rule_name(e.rule) << " @ " << path_text(e.path) << " : "
           << to_text(e.before) << " => " << to_text(e.after) << "\n";
    return os.str();
}

std::optional<Derivation> includes(const Term& big, const Term& small,
                                   const std::vector<Rule>& rules) {
    Term start = canon(big);
    Term goal = canon(small);
    if (start == goal) return Derivation{};

    Relation goal_rel = to_relation(goal);
    Relation start_rel = to_relation(start);
    if (start_rel.points != goal_rel.points) return std::nullopt;
    if (!relation_subset(goal_rel, start_rel)) return std::nullopt;

    struct Edge {
        Term prev;
        Rule rule;
        std::vector<int> path;
    };
    std::map<Term, Edge> came_from;
    std::deque<Term> frontier{start};
    std::set<Term> visited{start};

    while (!frontier.empty()) {
        Term cur = frontier.front();
        frontier.pop_front();
        for (const auto& step : applicable_steps(cur, rules)) {
            auto next = apply_step(cur, step);
            if (!next) continue;
            if (visited.count(*next)) continue;
            if (!relation_subset(goal_rel, to_relation(*next))) continue;
            visited.insert(*next);
            came_from[*next] = Edge{cur, step.rule, step.path};
            if (*next == goal) {
                Derivation d;
                Term at = goal;
                while (!(at == start)) {
                    const Edge& e = came_from.at(at);
                    d.steps.push_back(
                        Derivation::Entry{e.rule, e.path, e.prev, at});
                    at = e.prev;
                }
                std::reverse(d.steps.begin(), d.steps.end());
                return d;
            }
            frontier.push_back(*next);
        }
    }
    return std::nullopt;
}

Term ax_n(const std::vector<std::string>& names) {
    std::vector<Term> ks;
    for (size_t i = 0; i < names.size(); ++i) {
        Term pos = Term::atom(names[i], false, (int)(2 * i + 1));
        Term neg = Term::atom(names[i], true, (int)(2 * i + 2));
        ks.push_back(Term::node(Op::Par, {pos, neg}));
    }
    return canon(grp(Op::Tensor, std::move(ks)));
}

namespace {

// All ways to pair positive with negative occurrence ids, name by name.
void matchings(const std::map<std::string, std::pair<std::vector<int>,
                                                     std::vector<int>>>& occ,
               std::map<std::string, std::pair<std::vector<int>,
                                               std::vector<int>>>::const_iterator
                   it,
               std::vector<std::pair<std::pair<std::string, int>, int>>& acc,
               std::vector<std::vector<std::pair<std::pair<std::string, int>,
                                                 int>>>& out) {
    if (it == occ.end()) {
        out.push_back(acc);
        return;
    }
    std::vector<int> negs = it->second.second;
    std::sort(negs.begin(), negs.end());
    do {
        size_t base = acc.size();
        for (size_t i = 0; i < negs.size(); ++i)
            acc.push_back({{it->first, it->second.first[i]}, negs[i]});
        matchings(occ, std::next(it), acc, out);
        acc.resize(base);
    } while (std::next_permutation(negs.begin(), negs.end()));
}

}  // namespace

std::optional<Derivation> derive(const Term& target, System system) {
    std::vector<Rule> rules;
    switch (system) {
        case System::Gmll: rules = gmll_rules(false); break;
        case System::GmllMix: rules = gmll_rules(true); break;
        case System::Dicograph: rules = dicograph_rules(); break;
    }

    Term goal = canon(target);
    std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> occ;
    std::vector<const Term*> leaves;
    collect_leaves(goal, leaves);
    for (const Term* leaf : leaves) {
        if (leaf->neg)
            occ[leaf->name].second.push_back(leaf->id);
        else
            occ[leaf->name].first.push_back(leaf->id);
    }
    for (auto& [name, pn] : occ) {
        if (pn.first.size() != pn.second.size()) return std::nullopt;
        std::sort(pn.first.begin(), pn.first.end());
    }

    std::vector<std::vector<std::pair<std::pair<std::string, int>, int>>> all;
    std::vector<std::pair<std::pair<std::string, int>, int>> acc;
    matchings(occ, occ.begin(), acc, all);

    for (const auto& pairing : all) {
        std::vector<Term> ks;
        for (const auto& [pos, neg_id] : pairing) {
            ks.push_back(Term::node(Op::Par,
                                    {Term::atom(pos.first, false, pos.second),
                                     Term::atom(pos.first, true, neg_id)}));
        }
        if (ks.empty()) return std::nullopt;
        Term ax = canon(ks.size() == 1 ? ks[0]
                                       : Term::node(Op::Tensor, std::move(ks)));
        if (auto d = includes(ax, goal, rules)) return d;
    }
    return std::nullopt;
}

}  // namespace pomset
