// Proof-net grammar: lexical entries as partial nets, plugging and cutting,
// label-carrying cut elimination, word-order labelling, sentence parsing.

#include "pomset/grammar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

namespace pomset {

namespace {

// Top-level conclusion components: the children of a structural par.
std::vector<Term> components(const Term& t) {
    if (t.op == Op::Par && !t.formula) return t.kids;
    return {t};
}

Term shift_ids(Term t, int off) {
    if (t.is_leaf()) {
        t.id += off;
        return t;
    }
    for (auto& k : t.kids) k = shift_ids(std::move(k), off);
    return t;
}

void collect_tensor_leafsets(const Term& t, std::vector<std::set<int>>& out) {
    if (t.is_leaf()) return;
    if (t.op == Op::Tensor) out.push_back(leaf_ids(t));
    for (const auto& k : t.kids) collect_tensor_leafsets(k, out);
}

std::map<int, const Term*> leaf_pointers(const PartialNet& n) {
    std::map<int, const Term*> m;
    for (const auto& b : n.blocks) {
        std::vector<const Term*> ls;
        collect_leaves(b, ls);
        for (const Term* l : ls) m[l->id] = l;
    }
    return m;
}

}  // namespace

bool validate_entry(const LexEntry& e, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    std::map<int, std::pair<std::string, bool>> at;
    std::vector<const Term*> leaves;
    collect_leaves(e.body, leaves);
    for (const auto& x : e.aux) collect_leaves(x, leaves);
    for (const Term* l : leaves) {
        if (l->id == 0) return fail("occurrence without id");
        if (!at.emplace(l->id, std::make_pair(l->name, l->neg)).second)
            return fail("duplicate occurrence id");
    }
    // No tensor nested inside a tensor operand of the body.
    std::function<bool(const Term&, bool)> scan = [&](const Term& t,
                                                      bool inside) {
        if (t.is_leaf()) return true;
        if (t.op == Op::Tensor && inside) return false;
        bool in = inside || t.op == Op::Tensor;
        for (const auto& k : t.kids)
            if (!scan(k, in)) return false;
        return true;
    };
    if (!scan(e.body, false))
        return fail("tensor nested inside a tensor operand");

    std::set<int> used;
    bool worded = false;
    for (const auto& ax : e.axioms) {
        if (!at.count(ax.a) || !at.count(ax.b))
            return fail("axiom mentions unknown occurrence");
        if (!used.insert(ax.a).second || !used.insert(ax.b).second)
            return fail("occurrence in two axioms");
        if (at[ax.a].first != at[ax.b].first ||
            at[ax.a].second == at[ax.b].second)
            return fail("axiom endpoints are not dual atoms");
        if (!ax.word.empty()) worded = true;
    }
    if (e.axioms.empty() || !worded) return fail("no worded axiom");

    int pending_out = 0, pending = 0;
    bool out_linked = false;
    for (const Term* l : leaves) {
        if (used.count(l->id)) {
            if (l->name == e.output && !l->neg) out_linked = true;
            continue;
        }
        ++pending;
        if (l->name == e.output && !l->neg) ++pending_out;
    }
    if (pending_out > 1) return fail("more than one pending output");
    if (pending_out == 0 && !(pending == 0 && out_linked))
        return fail("no pending output occurrence");
    return true;
}

std::vector<std::string> entry_words(const LexEntry& e) {
    std::vector<std::string> ws;
    for (const auto& ax : e.axioms)
        if (!ax.word.empty()) ws.push_back(ax.word);
    std::sort(ws.begin(), ws.end());
    return ws;
}

std::set<int> pending_ids(const PartialNet& n) {
    std::set<int> ids;
    for (const auto& b : n.blocks) {
        auto ls = leaf_ids(b);
        ids.insert(ls.begin(), ls.end());
    }
    for (const auto& ax : n.axioms) {
        ids.erase(ax.a);
        ids.erase(ax.b);
    }
    return ids;
}

PartialNet instantiate(const LexEntry& e, int id_offset, int& label_counter) {
    PartialNet n;
    Term body = canon(shift_ids(e.body, id_offset));
    for (const auto& c : components(body)) n.blocks.push_back(c);
    for (const auto& x : e.aux)
        for (const auto& c : components(canon(shift_ids(x, id_offset))))
            n.blocks.push_back(c);
    collect_tensor_leafsets(body, n.entry_tensors);
    for (const auto& ax : e.axioms) {
        NetAxiom na{ax.a + id_offset, ax.b + id_offset, std::nullopt};
        if (!ax.word.empty())
            na.label = Term::atom(ax.word, false, ++label_counter);
        n.axioms.push_back(na);
    }
    return n;
}

std::optional<PartialNet> combine(const std::vector<PartialNet>& nets,
                                  const std::vector<Plug>& plugs,
                                  const std::vector<CutSpec>& cuts,
                                  std::string* err) {
    auto fail = [&](const std::string& m) {
        if (err) *err = m;
        return std::nullopt;
    };
    PartialNet n;
    for (const auto& x : nets) {
        n.blocks.insert(n.blocks.end(), x.blocks.begin(), x.blocks.end());
        n.axioms.insert(n.axioms.end(), x.axioms.begin(), x.axioms.end());
        n.entry_tensors.insert(n.entry_tensors.end(), x.entry_tensors.begin(),
                               x.entry_tensors.end());
    }
    auto at = leaf_pointers(n);
    std::set<int> used;
    for (const auto& ax : n.axioms) {
        if (!used.insert(ax.a).second || !used.insert(ax.b).second)
            return fail("reuse: occurrence in two axioms");
    }
    for (const auto& p : plugs) {
        auto ia = at.find(p.a), ib = at.find(p.b);
        if (ia == at.end() || ib == at.end())
            return fail("plug mentions unknown occurrence");
        if (!used.insert(p.a).second || !used.insert(p.b).second)
            return fail("reuse: occurrence plugged twice");
        const Term *la = ia->second, *lb = ib->second;
        if (la->name != lb->name || la->neg == lb->neg)
            return fail("type mismatch: plugged atoms are not dual");
        n.axioms.push_back({p.a, p.b, std::nullopt});
    }
    std::vector<char> in_cut(n.blocks.size(), 0);
    std::vector<Term> cut_blocks;
    for (const auto& c : cuts) {
        if (c.block >= n.blocks.size() || c.dual_blocks.empty())
            return fail("cut mentions unknown block");
        if (in_cut[c.block]) return fail("reuse: block in two cuts");
        in_cut[c.block] = 1;
        std::vector<Term> parts;
        for (std::size_t j : c.dual_blocks) {
            if (j >= n.blocks.size()) return fail("cut mentions unknown block");
            if (in_cut[j]) return fail("reuse: block in two cuts");
            in_cut[j] = 1;
            parts.push_back(n.blocks[j]);
        }
        Term grouped = canon(Term::node(Op::Par, parts));
        if (!equal_mod_ids(dual(n.blocks[c.block]), grouped))
            return fail("type mismatch: cut blocks are not dual");
        cut_blocks.push_back(
            canon(Term::node(Op::Tensor, {n.blocks[c.block], grouped})));
    }
    if (!cuts.empty()) {
        std::vector<Term> blocks;
        for (std::size_t i = 0; i < n.blocks.size(); ++i)
            if (!in_cut[i]) blocks.push_back(n.blocks[i]);
        blocks.insert(blocks.end(), cut_blocks.begin(), cut_blocks.end());
        n.blocks = std::move(blocks);
    }
    return n;
}

ProofStructure to_structure(const PartialNet& n) {
    ProofStructure ps;
    ps.conclusion = n.blocks.size() == 1 ? n.blocks[0]
                                         : canon(Term::node(Op::Par, n.blocks));
    for (const auto& ax : n.axioms) ps.axioms.push_back({ax.a, ax.b});
    return ps;
}

PartialNet normalize_labeled(const PartialNet& n, int* loops) {
    ProofStructure ps = to_structure(n);
    NormalizeResult nr = normalize(ps);
    if (loops) *loops = nr.loops;

    auto key = [](int a, int b) {
        return std::pair<int, int>(std::min(a, b), std::max(a, b));
    };
    std::map<std::pair<int, int>, std::optional<Term>> lab;
    for (const auto& ax : n.axioms) lab[key(ax.a, ax.b)] = ax.label;
    for (const auto& ch : nr.chains) {
        std::vector<Term> parts;
        for (auto [a, b] : ch.axioms) {
            auto it = lab.find(key(a, b));
            if (it != lab.end() && it->second) parts.push_back(*it->second);
        }
        if (ch.loop) continue;  // labels on dropped loops vanish
        // compose from the smaller endpoint outward
        if (ch.a > ch.b) std::reverse(parts.begin(), parts.end());
        std::optional<Term> l;
        if (!parts.empty()) l = canon(Term::node(Op::Before, parts));
        lab[key(ch.a, ch.b)] = l;
    }

    PartialNet out;
    out.blocks = components(nr.net.conclusion);
    std::set<int> alive;
    for (const auto& b : out.blocks) {
        auto ls = leaf_ids(b);
        alive.insert(ls.begin(), ls.end());
    }
    for (auto [a, b] : nr.net.axioms) {
        auto it = lab.find(key(a, b));
        out.axioms.push_back(
            {a, b, it != lab.end() ? it->second : std::nullopt});
    }
    for (const auto& s : n.entry_tensors)
        if (std::includes(alive.begin(), alive.end(), s.begin(), s.end()))
            out.entry_tensors.push_back(s);
    return out;
}

namespace {

// Label state during word-order propagation.
struct Label {
    int state = 0;  // 0 unknown, 1 empty order, 2 known order
    Term t;
};

struct LabelSolver {
    std::map<const Term*, Label> lab;
    bool conflict = false;
    bool changed = false;

    // one-directional: copy v into x when x is unknown
    void merge(Label& x, const Label& v) {
        if (v.state == 0) return;
        if (x.state == 0) {
            x = v;
            changed = true;
            return;
        }
        if (x.state != v.state || (x.state == 2 && x.t != v.t))
            conflict = true;
    }
    void unify(Label& x, Label& y) {
        merge(x, y);
        merge(y, x);
    }
};

}  // namespace

std::optional<Term> label_words(const PartialNet& n, int output_id,
                                std::string* err) {
    auto fail = [&](const std::string& m) {
        if (err) *err = m;
        return std::nullopt;
    };
    auto at = leaf_pointers(n);
    if (!at.count(output_id)) return fail("unknown output occurrence");
    std::set<std::set<int>> etens(n.entry_tensors.begin(),
                                  n.entry_tensors.end());

    std::vector<const Term*> nodes;
    std::function<void(const Term&)> walk = [&](const Term& t) {
        nodes.push_back(&t);
        for (const auto& k : t.kids) walk(k);
    };
    for (const auto& b : n.blocks) walk(b);

    LabelSolver s;
    for (const Term* t : nodes) s.lab[t];
    do {
        s.changed = false;
        for (const auto& ax : n.axioms) {
            auto ia = at.find(ax.a), ib = at.find(ax.b);
            if (ia == at.end() || ib == at.end())
                return fail("axiom mentions unknown occurrence");
            Label& la = s.lab[ia->second];
            Label& lb = s.lab[ib->second];
            s.unify(la, lb);
            if (ax.label) {
                Label w{2, *ax.label};
                s.merge(la, w);
                s.merge(lb, w);
            }
        }
        for (const Term* t : nodes) {
            if (t->is_leaf()) continue;
            Label& lt = s.lab[t];
            if (t->op == Op::Tensor) {
                bool entry = etens.count(leaf_ids(*t)) != 0;
                if (entry) s.merge(lt, Label{1, {}});
                if (entry || lt.state == 1) {
                    // empty order: all operand labels coincide
                    for (std::size_t i = 0; i + 1 < t->kids.size(); ++i)
                        s.unify(s.lab[&t->kids[i]], s.lab[&t->kids[i + 1]]);
                }
                continue;
            }
            bool known = true;
            std::vector<Term> parts;
            for (const auto& k : t->kids) {
                const Label& lk = s.lab[&k];
                if (lk.state == 0) known = false;
                if (lk.state == 2) parts.push_back(lk.t);
            }
            if (!known) continue;
            if (parts.empty())
                s.merge(lt, Label{1, {}});
            else
                s.merge(lt, Label{2, canon(Term::node(t->op, parts))});
        }
    } while (s.changed && !s.conflict);
    if (s.conflict) return fail("conflicting word-order labels");
    const Label& out = s.lab[at.at(output_id)];
    if (out.state != 2) return fail("output label undetermined");
    return out.t;
}

// ---- parsing ---------------------------------------------------------------

namespace {

std::string strip_ids(std::string text) {
    static const std::regex id_re("#[0-9]+");
    return std::regex_replace(text, id_re, "");
}

// All exact covers of the word multiset by lexicon entries.
void cover_words(const std::vector<LexEntry>& lexicon,
                 std::map<std::string, int>& need, std::vector<size_t>& cur,
                 std::vector<std::vector<size_t>>& out) {
    auto first = std::find_if(need.begin(), need.end(),
                              [](const auto& p) { return p.second > 0; });
    if (first == need.end()) {
        auto sel = cur;
        std::sort(sel.begin(), sel.end());
        if (std::find(out.begin(), out.end(), sel) == out.end())
            out.push_back(sel);
        return;
    }
    const std::string word = first->first;
    for (size_t i = 0; i < lexicon.size(); ++i) {
        auto ws = entry_words(lexicon[i]);
        if (std::find(ws.begin(), ws.end(), word) == ws.end()) continue;
        bool fits = true;
        for (const auto& w : ws)
            if (--need[w] < 0) fits = false;
        if (fits) {
            cur.push_back(i);
            cover_words(lexicon, need, cur, out);
            cur.pop_back();
        }
        for (const auto& w : ws) ++need[w];
    }
}

// All perfect matchings of pending duals, grouped by atom name.
void plug_matchings(
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& groups,
    size_t gi, std::vector<Plug>& cur, std::vector<std::vector<Plug>>& out) {
    if (gi == groups.size()) {
        out.push_back(cur);
        return;
    }
    const auto& [pos, neg] = groups[gi];
    std::vector<size_t> perm(neg.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        size_t base = cur.size();
        for (size_t i = 0; i < pos.size(); ++i)
            cur.push_back({pos[i], neg[perm[i]]});
        plug_matchings(groups, gi + 1, cur, out);
        cur.resize(base);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

// Candidate cuts: a block against a set of other blocks matching its dual's
// components, deduplicated by the set of blocks involved.
std::vector<CutSpec> cut_candidates(const std::vector<Term>& blocks) {
    std::vector<CutSpec> cands;
    std::set<std::set<std::size_t>> seen;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::vector<Term> comps = components(dual(blocks[i]));
        std::vector<char> taken(blocks.size(), 0);
        taken[i] = 1;
        std::vector<std::size_t> pick;
        std::function<void(std::size_t)> go = [&](std::size_t ci) {
            if (ci == comps.size()) {
                std::set<std::size_t> inv(pick.begin(), pick.end());
                inv.insert(i);
                if (seen.insert(inv).second)
                    cands.push_back(
                        {i, std::vector<std::size_t>(pick.begin(), pick.end())});
                return;
            }
            for (std::size_t j = 0; j < blocks.size(); ++j) {
                if (taken[j] || !equal_mod_ids(comps[ci], blocks[j])) continue;
                taken[j] = 1;
                pick.push_back(j);
                go(ci + 1);
                pick.pop_back();
                taken[j] = 0;
            }
        };
        go(0);
    }
    return cands;
}

}  // namespace

bool linear_extension(const Term& order,
                      const std::vector<std::string>& words) {
    std::vector<const Term*> leaves;
    collect_leaves(order, leaves);
    if (leaves.size() != words.size()) return false;
    std::map<std::string, int> id_of;
    for (const Term* l : leaves)
        if (!id_of.emplace(l->name, l->id).second) return false;
    for (const auto& w : words)
        if (!id_of.count(w)) return false;
    std::set<std::string> distinct(words.begin(), words.end());
    if (distinct.size() != words.size()) return false;
    Relation r = to_relation(order);
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j)
            if (r.arc(id_of[words[j]], id_of[words[i]])) return false;
    return true;
}

std::vector<Parse> parse_sentence(const std::vector<LexEntry>& lexicon,
                                  const std::vector<std::string>& words,
                                  const std::string& target,
                                  std::string* err) {
    std::vector<Parse> parses;
    for (const auto& w : words) {
        bool known = false;
        for (const auto& e : lexicon) {
            auto ws = entry_words(e);
            known |= std::find(ws.begin(), ws.end(), w) != ws.end();
        }
        if (!known) {
            if (err) *err = "unknown word: " + w;
            return parses;
        }
    }
    std::map<std::string, int> need;
    for (const auto& w : words) ++need[w];
    std::vector<std::vector<size_t>> selections;
    std::vector<size_t> cur;
    cover_words(lexicon, need, cur, selections);
    if (selections.empty()) {
        if (err) *err = "no lexical cover of the sentence";
        return parses;
    }

    std::set<std::string> seen;
    for (const auto& sel : selections) {
        std::vector<PartialNet> nets;
        int offset = 0, label_counter = 0;
        for (size_t idx : sel) {
            const LexEntry& e = lexicon[idx];
            nets.push_back(instantiate(e, offset, label_counter));
            int top = max_id(e.body);
            for (const auto& x : e.aux) top = std::max(top, max_id(x));
            offset += top;
        }
        int goal_id = offset + 1;
        PartialNet goal;
        goal.blocks.push_back(Term::atom(target, true, goal_id));
        nets.push_back(goal);

        auto merged = combine(nets, {}, {}, nullptr);
        if (!merged) continue;

        // group pending atoms by name and polarity
        std::map<std::string, std::pair<std::vector<int>, std::vector<int>>>
            by_name;
        auto at = leaf_pointers(*merged);
        for (int id : pending_ids(*merged)) {
            const Term* l = at.at(id);
            (l->neg ? by_name[l->name].second : by_name[l->name].first)
                .push_back(id);
        }
        bool balanced = true;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
        for (auto& [name, g] : by_name) {
            if (g.first.size() != g.second.size()) balanced = false;
            groups.push_back(g);
        }
        if (!balanced) continue;
        std::vector<std::vector<Plug>> matchings;
        std::vector<Plug> pcur;
        plug_matchings(groups, 0, pcur, matchings);

        std::vector<CutSpec> cands = cut_candidates(merged->blocks);
        for (const auto& plugs : matchings) {
            for (std::size_t mask = 0; mask < (std::size_t{1} << cands.size());
                 ++mask) {
                std::vector<CutSpec> cuts;
                std::set<std::size_t> taken;
                bool ok = true;
                for (std::size_t c = 0; c < cands.size(); ++c) {
                    if (!(mask >> c & 1)) continue;
                    std::set<std::size_t> inv(cands[c].dual_blocks.begin(),
                                              cands[c].dual_blocks.end());
                    inv.insert(cands[c].block);
                    for (std::size_t b : inv)
                        if (!taken.insert(b).second) ok = false;
                    cuts.push_back(cands[c]);
                }
                if (!ok) continue;
                auto net = combine({*merged}, plugs, cuts, nullptr);
                if (!net || !pending_ids(*net).empty()) continue;
                ProofStructure ps = to_structure(*net);
                if (!validate_structure(ps)) continue;
                // cut structures may fail the chord criterion before
                // reduction (a plug can join the two sides of a cut); a
                // parse is judged on its normalized net
                int loops = 0;
                PartialNet nrm = normalize_labeled(*net, &loops);
                ProofStructure fin = to_structure(nrm);
                if (!find_cuts(fin).empty() || !is_correct(fin)) continue;
                auto order = label_words(nrm, goal_id, nullptr);
                if (!order) continue;
                std::vector<const Term*> wl;
                collect_leaves(*order, wl);
                std::multiset<std::string> got, want(words.begin(),
                                                     words.end());
                for (const Term* l : wl) got.insert(l->name);
                if (got != want) continue;

                std::ostringstream k;
                k << strip_ids(to_text(*order)) << "||"
                  << strip_ids(to_text(fin.conclusion)) << "||";
                std::vector<std::string> axs;
                for (const auto& ax : nrm.axioms) {
                    std::string l =
                        ax.label ? strip_ids(to_text(*ax.label)) : "";
                    axs.push_back(strip_ids(to_text(*at.at(ax.a))) + "-" +
                                  strip_ids(to_text(*at.at(ax.b))) + ":" + l);
                }
                std::sort(axs.begin(), axs.end());
                for (const auto& a : axs) k << a << ";";
                if (!seen.insert(k.str()).second) continue;
                parses.push_back({fin, nrm.axioms, *order, loops});
            }
        }
    }
    return parses;
}

}  // namespace pomset
