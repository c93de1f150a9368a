// Coherence-space semantics: experiments, interpretations, the clique test,
// and the calibration search over all four-token spaces.

#include "pomset/coherence.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace pomset {

bool Space::nondegenerate() const {
    bool coh = !strict.empty();
    size_t pairs = tokens.size() * (tokens.size() - 1) / 2;
    bool incoh = strict.size() < pairs;
    return coh && incoh;
}

Cls dual_class(Cls c) {
    if (c == Cls::Scoh) return Cls::Sincoh;
    if (c == Cls::Sincoh) return Cls::Scoh;
    return Cls::Equal;
}

Cls leaf_class(const Space& s, bool neg, const std::string& x,
               const std::string& y) {
    if (x == y) return Cls::Equal;
    bool coh = s.strictly_coherent(x, y);
    if (neg) coh = !coh;
    return coh ? Cls::Scoh : Cls::Sincoh;
}

Cls combine(Op op, const std::vector<Cls>& kids) {
    bool all_equal = true;
    for (Cls c : kids) all_equal &= c == Cls::Equal;
    if (all_equal) return Cls::Equal;
    switch (op) {
        case Op::Tensor:
            for (Cls c : kids)
                if (c == Cls::Sincoh) return Cls::Sincoh;
            return Cls::Scoh;
        case Op::Par:
            for (Cls c : kids)
                if (c == Cls::Scoh) return Cls::Scoh;
            return Cls::Sincoh;
        case Op::Before:
            for (Cls c : kids)
                if (c != Cls::Equal) return c;
            return Cls::Equal;
        default:
            assert(false && "leaf has no combine rule");
            return Cls::Equal;
    }
}

namespace {

Cls eval_term(const Space& s, const Term& t,
              const std::function<Cls(const Term&)>& at_leaf) {
    if (t.is_leaf()) return at_leaf(t);
    std::vector<Cls> ks;
    ks.reserve(t.kids.size());
    for (const auto& k : t.kids) ks.push_back(eval_term(s, k, at_leaf));
    return combine(t.op, ks);
}

}  // namespace

Cls result_class(const Space& s, const Term& conclusion,
                 const std::map<int, std::string>& r1,
                 const std::map<int, std::string>& r2) {
    return eval_term(s, conclusion, [&](const Term& leaf) {
        return leaf_class(s, leaf.neg, r1.at(leaf.id), r2.at(leaf.id));
    });
}

std::optional<std::vector<std::map<int, std::string>>> interpretation(
    const ProofStructure& ps, const Space& s) {
    CutAnalysis ca = analyze_cuts(ps);
    if (!ca.residual) return std::nullopt;
    std::set<int> keep = leaf_ids(*ca.residual);

    const size_t n = ps.axioms.size();
    std::set<std::map<int, std::string>> results;
    std::vector<size_t> idx(n, 0);
    while (true) {
        std::map<int, std::string> tok;
        for (size_t i = 0; i < n; ++i) {
            tok[ps.axioms[i].first] = s.tokens[idx[i]];
            tok[ps.axioms[i].second] = s.tokens[idx[i]];
        }
        bool ok = true;
        for (const auto& cut : ca.atom_pairs)
            for (auto [p, q] : cut)
                if (tok.at(p) != tok.at(q)) {
                    ok = false;
                    break;
                }
        if (ok) {
            std::map<int, std::string> res;
            for (int id : keep) res[id] = tok.at(id);
            results.insert(std::move(res));
        }
        size_t i = 0;
        while (i < n && ++idx[i] == s.tokens.size()) idx[i++] = 0;
        if (i == n) break;
    }
    return std::vector<std::map<int, std::string>>(results.begin(),
                                                   results.end());
}

namespace {

// cut-free fast path: the class of a result pair only depends on the class
// chosen per axiom, and every achievable class vector is realized
bool clique_over_class_vectors(const ProofStructure& ps, const Space& s) {
    std::vector<Cls> achievable{Cls::Equal};
    size_t pairs = s.tokens.size() * (s.tokens.size() - 1) / 2;
    if (!s.strict.empty()) achievable.push_back(Cls::Scoh);
    if (s.strict.size() < pairs) achievable.push_back(Cls::Sincoh);

    std::map<int, size_t> axiom_of;
    for (size_t i = 0; i < ps.axioms.size(); ++i) {
        axiom_of[ps.axioms[i].first] = i;
        axiom_of[ps.axioms[i].second] = i;
    }
    const size_t n = ps.axioms.size();
    std::vector<size_t> idx(n, 0);
    Term conc = canon(ps.conclusion);
    while (true) {
        Cls top = eval_term(s, conc, [&](const Term& leaf) {
            Cls c = achievable[idx[axiom_of.at(leaf.id)]];
            return leaf.neg ? dual_class(c) : c;
        });
        if (top == Cls::Sincoh) return false;
        size_t i = 0;
        while (i < n && ++idx[i] == achievable.size()) idx[i++] = 0;
        if (i == n) break;
    }
    return true;
}

}  // namespace

std::optional<bool> semantic_correct(const ProofStructure& ps,
                                     const Space& s) {
    CutAnalysis ca = analyze_cuts(ps);
    if (!ca.residual) return std::nullopt;
    if (ca.atom_pairs.empty())
        return clique_over_class_vectors(ps, s);

    auto interp = interpretation(ps, s);
    if (!interp) return std::nullopt;
    for (size_t i = 0; i < interp->size(); ++i)
        for (size_t j = i + 1; j < interp->size(); ++j)
            if (result_class(s, *ca.residual, (*interp)[i], (*interp)[j]) ==
                Cls::Sincoh)
                return false;
    return true;
}

bool interpretation_preserved(const ProofStructure& ps, const Space& s) {
    auto before = interpretation(ps, s);
    auto after = interpretation(normalize(ps).net, s);
    if (!before || !after) return before.has_value() == after.has_value();
    return *before == *after;
}

std::vector<Space> all_four_token_spaces() {
    std::vector<Space> out;
    std::vector<std::string> toks{"0", "1", "2", "3"};
    std::vector<std::pair<std::string, std::string>> pairs;
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j) pairs.push_back({toks[i], toks[j]});
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
        Space s;
        s.tokens = toks;
        for (size_t k = 0; k < pairs.size(); ++k)
            if (mask & (1u << k)) s.strict.insert(pairs[k]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Space> calibrate(int max_axioms) {
    // test corpus: every structure over the small name lists
    std::vector<std::vector<std::string>> name_lists{{"a"}};
    if (max_axioms >= 2) {
        name_lists.push_back({"a", "b"});
        name_lists.push_back({"a", "a"});
    }
    std::vector<ProofStructure> corpus;
    for (const auto& names : name_lists) {
        std::vector<Term> atoms;
        int id = 1;
        for (const auto& n : names) {
            atoms.push_back(Term::atom(n, false, id++));
            atoms.push_back(Term::atom(n, true, id++));
        }
        // the clique criterion is an equivalence on cut-free nets only
        for (auto& ps : enumerate_structures(atoms))
            if (find_cuts(ps).empty()) corpus.push_back(std::move(ps));
    }
    std::vector<char> verdict(corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i)
        verdict[i] = is_correct(corpus[i]);

    std::vector<Space> passing;
    for (const auto& s : all_four_token_spaces()) {
        bool ok = true;
        for (size_t i = 0; i < corpus.size() && ok; ++i) {
            auto sc = semantic_correct(corpus[i], s);
            if (sc && *sc != (bool)verdict[i]) ok = false;
        }
        if (ok) passing.push_back(s);
    }
    return passing;
}

Space default_space() {
    Space s;
    s.tokens = {"0", "1", "2", "3"};
    s.strict = {{"0", "1"}};
    return s;
}

}  // namespace pomset
