#include "pomset/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace pomset {

Term Term::node(Op op, std::vector<Term> kids, bool formula) {
    Term t;
    t.op = op;
    t.formula = formula;
    t.kids = std::move(kids);
    return canon(std::move(t));
}

static int op_rank(Op op) {
    switch (op) {
        case Op::Leaf: return 0;
        case Op::Par: return 1;
        case Op::Before: return 2;
        case Op::Tensor: return 3;
    }
    return 0;
}

int compare(const Term& a, const Term& b) {
    if (op_rank(a.op) != op_rank(b.op)) return op_rank(a.op) < op_rank(b.op) ? -1 : 1;
    if (a.is_leaf()) {
        if (a.name != b.name) return a.name < b.name ? -1 : 1;
        if (a.neg != b.neg) return a.neg < b.neg ? -1 : 1;
        if (a.id != b.id) return a.id < b.id ? -1 : 1;
        return 0;
    }
    if (a.formula != b.formula) return a.formula < b.formula ? -1 : 1;
    size_t n = std::min(a.kids.size(), b.kids.size());
    for (size_t i = 0; i < n; ++i) {
        int c = compare(a.kids[i], b.kids[i]);
        if (c != 0) return c;
    }
    if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
    return 0;
}

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }

bool equal_mod_ids(const Term& a, const Term& b) {
    if (a.op != b.op) return false;
    if (a.is_leaf()) return a.name == b.name && a.neg == b.neg;
    if (a.formula != b.formula || a.kids.size() != b.kids.size()) return false;
    if (a.op == Op::Before) {
        for (size_t i = 0; i < a.kids.size(); ++i)
            if (!equal_mod_ids(a.kids[i], b.kids[i])) return false;
        return true;
    }
    // par/tensor children: canonical sorting tie-breaks on occurrence ids, so
    // equal shapes may come in different orders; match them as a multiset
    size_t n = a.kids.size();
    std::vector<bool> used(n, false);
    std::vector<size_t> pick(n, 0);
    size_t i = 0;
    while (i < n) {
        size_t& j = pick[i];
        while (j < n && (used[j] || !equal_mod_ids(a.kids[i], b.kids[j]))) ++j;
        if (j == n) {
            if (i == 0) return false;
            j = 0;
            --i;
            used[pick[i]] = false;
            ++pick[i];
            continue;
        }
        used[j] = true;
        ++i;
    }
    return true;
}

Term canon(Term t) {
    if (t.is_leaf()) return t;
    for (auto& k : t.kids) k = canon(std::move(k));
    // flatten children sharing operator and fold level
    std::vector<Term> flat;
    for (auto& k : t.kids) {
        if (!k.is_leaf() && k.op == t.op && k.formula == t.formula) {
            for (auto& g : k.kids) flat.push_back(std::move(g));
        } else {
            flat.push_back(std::move(k));
        }
    }
    t.kids = std::move(flat);
    if (t.kids.size() == 1) return std::move(t.kids[0]);
    if (t.op == Op::Par || t.op == Op::Tensor)
        std::sort(t.kids.begin(), t.kids.end(),
                  [](const Term& a, const Term& b) { return compare(a, b) < 0; });
    return t;
}

Term dual(const Term& t) {
    if (t.is_leaf()) {
        Term r = t;
        r.neg = !r.neg;
        return r;
    }
    Op op = t.op == Op::Par ? Op::Tensor : t.op == Op::Tensor ? Op::Par : Op::Before;
    std::vector<Term> kids;
    kids.reserve(t.kids.size());
    for (const auto& k : t.kids) kids.push_back(dual(k));
    Term r;
    r.op = op;
    r.formula = t.formula;
    r.kids = std::move(kids);
    return canon(std::move(r));
}

// --- relations ---------------------------------------------------------------

static void relate(Relation& r, const std::set<int>& xs, const std::set<int>& ys, Op op) {
    for (int x : xs)
        for (int y : ys) {
            if (op == Op::Before) {
                r.pairs.insert({x, y});
            } else if (op == Op::Tensor) {
                r.pairs.insert({x, y});
                r.pairs.insert({y, x});
            }
        }
}

static std::set<int> to_relation_rec(const Term& t, Relation& r) {
    if (t.is_leaf()) {
        r.points.insert(t.id);
        r.atoms[t.id] = {t.name, t.neg};
        return {t.id};
    }
    std::vector<std::set<int>> parts;
    for (const auto& k : t.kids) parts.push_back(to_relation_rec(k, r));
    std::set<int> all;
    for (size_t i = 0; i < parts.size(); ++i) {
        for (size_t j = i + 1; j < parts.size(); ++j) relate(r, parts[i], parts[j], t.op);
        all.insert(parts[i].begin(), parts[i].end());
    }
    return all;
}

Relation to_relation(const Term& t) {
    Relation r;
    to_relation_rec(t, r);
    return r;
}

Relation dual_relation(const Relation& r) {
    Relation d;
    d.points = r.points;
    d.atoms = r.atoms;
    for (auto& [id, a] : d.atoms) a.second = !a.second;
    for (int x : r.points)
        for (int y : r.points) {
            if (x == y) continue;
            if (r.arc(x, y)) d.pairs.insert({x, y});
            if (r.none(x, y) && x < y) {
                d.pairs.insert({x, y});
                d.pairs.insert({y, x});
            }
        }
    return d;
}

bool relation_subset(const Relation& a, const Relation& b) {
    for (const auto& p : a.pairs)
        if (!b.pairs.count(p)) return false;
    return true;
}

// connected components of an ad-hoc symmetric adjacency predicate
static std::vector<std::set<int>> components(
    const std::set<int>& pts, const std::function<bool(int, int)>& adj) {
    std::vector<std::set<int>> comps;
    std::set<int> seen;
    for (int s : pts) {
        if (seen.count(s)) continue;
        std::set<int> comp;
        std::vector<int> stack{s};
        seen.insert(s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.insert(x);
            for (int y : pts)
                if (!seen.count(y) && (adj(x, y) || adj(y, x))) {
                    seen.insert(y);
                    stack.push_back(y);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

static Relation restrict_to(const Relation& r, const std::set<int>& pts) {
    Relation s;
    s.points = pts;
    for (int p : pts) s.atoms[p] = r.atoms.at(p);
    for (const auto& [x, y] : r.pairs)
        if (pts.count(x) && pts.count(y)) s.pairs.insert({x, y});
    return s;
}

std::optional<Term> from_relation(const Relation& r) {
    if (r.points.empty()) return std::nullopt;
    if (r.points.size() == 1) {
        int id = *r.points.begin();
        auto [name, neg] = r.atoms.at(id);
        return Term::atom(name, neg, id);
    }
    auto build = [&](Op op, const std::vector<std::set<int>>& comps,
                     bool ordered) -> std::optional<Term> {
        std::vector<Term> kids;
        for (const auto& c : comps) {
            auto sub = from_relation(restrict_to(r, c));
            if (!sub) return std::nullopt;
            kids.push_back(std::move(*sub));
        }
        (void)ordered;
        return Term::node(op, std::move(kids));
    };

    // parallel: components of the full relation
    auto par = components(r.points, [&](int x, int y) { return r.has(x, y); });
    if (par.size() > 1) return build(Op::Par, par, false);

    // before: components after removing arcs; blocks must form a linear order
    auto bef = components(r.points,
                          [&](int x, int y) { return r.none(x, y) || r.edge(x, y); });
    if (bef.size() > 1) {
        size_t k = bef.size();
        // uniform arc direction between every pair of blocks
        std::vector<std::vector<int>> dir(k, std::vector<int>(k, 0));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j) {
                int d = 0;
                for (int x : bef[i])
                    for (int y : bef[j]) {
                        int cur = r.arc(x, y) ? 1 : r.arc(y, x) ? -1 : 0;
                        if (cur == 0) return std::nullopt;
                        if (d == 0) d = cur;
                        if (cur != d) return std::nullopt;
                    }
                dir[i][j] = d;
                dir[j][i] = -d;
            }
        std::vector<size_t> order(k);
        for (size_t i = 0; i < k; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
            return dir[i][j] > 0;
        });
        // sort only yields a valid chain if the tournament is transitive
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                if (dir[order[i]][order[j]] != 1) return std::nullopt;
        std::vector<std::set<int>> blocks;
        for (size_t i : order) blocks.push_back(bef[i]);
        return build(Op::Before, blocks, true);
    }

    // tensor: components after removing edges; all cross pairs are edges
    auto ten = components(r.points,
                          [&](int x, int y) { return r.none(x, y) || r.arc(x, y); });
    if (ten.size() > 1) return build(Op::Tensor, ten, false);

    return std::nullopt;
}

bool is_dicograph(const Relation& r) {
    std::vector<int> pts(r.points.begin(), r.points.end());
    size_t n = pts.size();
    // arc part transitive (hence a strict order)
    for (int a : pts)
        for (int b : pts)
            for (int c : pts) {
                if (a == b || b == c || a == c) continue;
                if (r.arc(a, b) && r.arc(b, c) && !r.arc(a, c)) return false;
            }
    // weak transitivity in both directions
    for (int a : pts)
        for (int b : pts)
            for (int c : pts) {
                if (a == b || b == c || a == c) continue;
                if (r.arc(a, b) && r.has(b, c) && !r.has(a, c)) return false;
                if (r.has(a, b) && r.arc(b, c) && !r.has(a, c)) return false;
            }
    // arc part N-free: no induced subposet a->b, c->b, c->d
    for (size_t ia = 0; ia < n; ++ia)
        for (size_t ib = 0; ib < n; ++ib)
            for (size_t ic = 0; ic < n; ++ic)
                for (size_t id = 0; id < n; ++id) {
                    int a = pts[ia], b = pts[ib], c = pts[ic], d = pts[id];
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    if (!(r.arc(a, b) && r.arc(c, b) && r.arc(c, d))) continue;
                    bool extra = r.arc(a, c) || r.arc(c, a) || r.arc(a, d) ||
                                 r.arc(d, a) || r.arc(b, d) || r.arc(d, b);
                    if (!extra) return false;
                }
    // edge part P4-free
    for (size_t ia = 0; ia < n; ++ia)
        for (size_t ib = 0; ib < n; ++ib)
            for (size_t ic = 0; ic < n; ++ic)
                for (size_t id = 0; id < n; ++id) {
                    int a = pts[ia], b = pts[ib], c = pts[ic], d = pts[id];
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    if (ia > id) continue;  // path and its reverse coincide
                    if (r.edge(a, b) && r.edge(b, c) && r.edge(c, d) &&
                        !r.edge(a, c) && !r.edge(a, d) && !r.edge(b, d))
                        return false;
                }
    return true;
}

// --- equivalence and folding --------------------------------------------------

std::set<int> leaf_ids(const Term& t) {
    std::set<int> out;
    std::vector<const Term*> leaves;
    collect_leaves(t, leaves);
    for (auto* l : leaves) out.insert(l->id);
    return out;
}

void collect_leaves(const Term& t, std::vector<const Term*>& out) {
    if (t.is_leaf()) {
        out.push_back(&t);
        return;
    }
    for (const auto& k : t.kids) collect_leaves(k, out);
}

int max_id(const Term& t) {
    if (t.is_leaf()) return t.id;
    int m = 0;
    for (const auto& k : t.kids) m = std::max(m, max_id(k));
    return m;
}

static bool is_block(const Term& t) { return t.is_leaf() || t.formula; }

static EquivKind kind_of(Op op) {
    return op == Op::Par ? EquivKind::Par
                         : op == Op::Before ? EquivKind::Before : EquivKind::Tensor;
}

static void equivalent_pairs_rec(const Term& t, std::vector<EquivPair>& out) {
    if (t.is_leaf() || t.formula) return;
    size_t n = t.kids.size();
    if (t.op == Op::Before) {
        for (size_t i = 0; i + 1 < n; ++i)
            if (is_block(t.kids[i]) && is_block(t.kids[i + 1]))
                out.push_back({leaf_ids(t.kids[i]), leaf_ids(t.kids[i + 1]),
                               EquivKind::Before});
    } else {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (is_block(t.kids[i]) && is_block(t.kids[j]))
                    out.push_back({leaf_ids(t.kids[i]), leaf_ids(t.kids[j]),
                                   kind_of(t.op)});
    }
    for (const auto& k : t.kids) equivalent_pairs_rec(k, out);
}

std::vector<EquivPair> equivalent_pairs(const Term& t) {
    std::vector<EquivPair> out;
    equivalent_pairs_rec(t, out);
    return out;
}

std::optional<EquivKind> equivalent_points(const Relation& r, int a, int b) {
    if (a == b || !r.points.count(a) || !r.points.count(b)) return std::nullopt;
    for (int x : r.points) {
        if (x == a || x == b) continue;
        if (r.has(a, x) != r.has(b, x) || r.has(x, a) != r.has(x, b))
            return std::nullopt;
    }
    if (r.none(a, b)) return EquivKind::Par;
    if (r.edge(a, b)) return EquivKind::Tensor;
    if (r.arc(a, b)) return EquivKind::Before;
    return std::nullopt;  // arc b -> a: caller should query swapped
}

static bool fold_rec(Term& t, const std::set<int>& left, const std::set<int>& right) {
    if (t.is_leaf()) return false;
    if (!t.formula) {
        int li = -1, ri = -1;
        for (size_t i = 0; i < t.kids.size(); ++i) {
            if (!is_block(t.kids[i])) continue;
            auto ids = leaf_ids(t.kids[i]);
            if (ids == left) li = (int)i;
            if (ids == right) ri = (int)i;
        }
        if (li >= 0 && ri >= 0 && li != ri) {
            if (t.op == Op::Before && std::abs(li - ri) != 1) return false;
            Term merged;
            merged.op = t.op;
            merged.formula = true;
            if (t.op == Op::Before && ri < li) std::swap(li, ri);
            merged.kids = {t.kids[li], t.kids[ri]};
            t.kids[li] = canon(std::move(merged));
            t.kids.erase(t.kids.begin() + ri);
            return true;
        }
    }
    for (auto& k : t.kids)
        if (fold_rec(k, left, right)) return true;
    return false;
}

std::optional<Term> fold(const Term& t, const std::set<int>& left,
                         const std::set<int>& right) {
    Term copy = t;
    if (!fold_rec(copy, left, right)) return std::nullopt;
    return canon(std::move(copy));
}

static bool unfold_rec(Term& t, const std::set<int>& block) {
    if (t.is_leaf()) return false;
    if (t.formula && leaf_ids(t) == block) {
        t.formula = false;
        return true;
    }
    for (auto& k : t.kids)
        if (unfold_rec(k, block)) return true;
    return false;
}

std::optional<Term> unfold(const Term& t, const std::set<int>& block) {
    Term copy = t;
    if (!unfold_rec(copy, block)) return std::nullopt;
    return canon(std::move(copy));
}

static void strip_formula(Term& t) {
    t.formula = false;
    for (auto& k : t.kids) strip_formula(k);
}

Term unfold_all(const Term& t) {
    Term copy = t;
    strip_formula(copy);
    return canon(std::move(copy));
}

// --- text format ----------------------------------------------------------------

static void count_atoms(const Term& t, std::map<std::pair<std::string, bool>, int>& n) {
    if (t.is_leaf()) {
        n[{t.name, t.neg}]++;
        return;
    }
    for (const auto& k : t.kids) count_atoms(k, n);
}

static char op_char(Op op) {
    return op == Op::Par ? '|' : op == Op::Before ? '<' : '*';
}

static void print_rec(const Term& t,
                      const std::map<std::pair<std::string, bool>, int>* dup,
                      std::string& out) {
    if (t.is_leaf()) {
        out += t.name;
        if (t.neg) out += '^';
        if (!dup || dup->at({t.name, t.neg}) > 1) {
            out += '#';
            out += std::to_string(t.id);
        }
        return;
    }
    for (size_t i = 0; i < t.kids.size(); ++i) {
        if (i) out += op_char(t.op);
        const Term& k = t.kids[i];
        if (k.is_leaf()) {
            print_rec(k, dup, out);
        } else {
            out += k.formula ? '[' : '(';
            print_rec(k, dup, out);
            out += k.formula ? ']' : ')';
        }
    }
}

static std::string print_term(const Term& t,
                              const std::map<std::pair<std::string, bool>,
                                             int>* dup) {
    std::string out;
    if (t.formula && !t.is_leaf()) out += '[';
    print_rec(t, dup, out);
    if (t.formula && !t.is_leaf()) out += ']';
    return out;
}

std::string to_text(const Term& t) {
    std::map<std::pair<std::string, bool>, int> dup;
    count_atoms(t, dup);
    return print_term(t, &dup);
}

std::string to_text_ids(const Term& t) { return print_term(t, nullptr); }

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    ParseError err;
    bool failed = false;

    explicit Parser(const std::string& text) : s(text) {}

    void fail(const std::string& m) {
        if (!failed) {
            failed = true;
            err = {m, pos};
        }
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    Term primary() {
        skip_ws();
        if (eat('(')) {
            Term t = expr();
            if (!eat(')')) fail("expected ')'");
            return t;
        }
        if (eat('[')) {
            Term t = expr();
            if (!eat(']')) fail("expected ']'");
            if (!t.is_leaf()) t.formula = true;
            return t;
        }
        if (pos >= s.size() ||
            !(std::isalpha((unsigned char)s[pos]) || s[pos] == '_')) {
            fail("expected atom or '('");
            return Term::atom("?", false, 0);
        }
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
            ++pos;
        Term t = Term::atom(s.substr(start, pos - start), false, 0);
        if (pos < s.size() && s[pos] == '^') {
            t.neg = true;
            ++pos;
        }
        if (pos < s.size() && s[pos] == '#') {
            ++pos;
            size_t d = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (d == pos) {
                fail("expected occurrence index after '#'");
                return t;
            }
            t.id = std::stoi(s.substr(d, pos - d));
        } else {
            t.id = -1;  // assigned later
        }
        return t;
    }

    Term expr() {
        Term first = primary();
        skip_ws();
        if (failed || pos >= s.size() ||
            (s[pos] != '|' && s[pos] != '<' && s[pos] != '*'))
            return first;
        char opc = s[pos];
        Op op = opc == '|' ? Op::Par : opc == '<' ? Op::Before : Op::Tensor;
        std::vector<Term> kids{std::move(first)};
        while (!failed && peek(opc)) {
            ++pos;
            kids.push_back(primary());
        }
        skip_ws();
        if (!failed && pos < s.size() &&
            (s[pos] == '|' || s[pos] == '<' || s[pos] == '*'))
            fail("mixed operators need parentheses");
        Term t;
        t.op = op;
        t.kids = std::move(kids);
        return t;
    }
};

void assign_ids(Term& t, std::set<int>& used, int& next) {
    if (t.is_leaf()) {
        if (t.id < 0) {
            while (used.count(next)) ++next;
            t.id = next;
            used.insert(next);
        }
        return;
    }
    for (auto& k : t.kids) assign_ids(k, used, next);
}

void collect_ids(const Term& t, std::set<int>& used) {
    if (t.is_leaf()) {
        if (t.id >= 0) used.insert(t.id);
        return;
    }
    for (const auto& k : t.kids) collect_ids(k, used);
}

}  // namespace

std::optional<Term> parse_term(const std::string& text, ParseError* err) {
    Parser p(text);
    Term t = p.expr();
    p.skip_ws();
    if (!p.failed && p.pos != text.size()) p.fail("trailing input");
    if (p.failed) {
        if (err) *err = p.err;
        return std::nullopt;
    }
    std::set<int> used;
    collect_ids(t, used);
    int next = 1;
    assign_ids(t, used, next);
    // duplicate occurrence ids are rejected
    std::vector<const Term*> leaves;
    collect_leaves(t, leaves);
    std::set<int> seen;
    for (auto* l : leaves)
        if (!seen.insert(l->id).second) {
            if (err) *err = {"duplicate occurrence id", 0};
            return std::nullopt;
        }
    return canon(std::move(t));
}

}  // namespace pomset
