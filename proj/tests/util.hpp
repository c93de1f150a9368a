// Shared helpers for the test suites: deterministic RNG, random dicograph
// terms, and exhaustive enumeration of small irreflexive relations.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "pomset/term.hpp"

namespace testutil {

using pomset::Op;
using pomset::Relation;
using pomset::Term;

using Rng = std::mt19937;

// Random canonical structural term over the given leaves.
inline Term random_term(std::vector<Term> leaves, Rng& rng) {
    if (leaves.size() == 1) return leaves[0];
    std::shuffle(leaves.begin(), leaves.end(), rng);
    // split into 2..k groups, pick an operator, recurse
    size_t n = leaves.size();
    size_t groups = 2 + rng() % std::max<size_t>(1, n - 1);
    groups = std::min(groups, n);
    std::vector<std::vector<Term>> parts(groups);
    for (size_t i = 0; i < n; ++i) parts[i < groups ? i : rng() % groups].push_back(leaves[i]);
    std::vector<Term> kids;
    for (auto& p : parts) kids.push_back(random_term(std::move(p), rng));
    Op ops[3] = {Op::Par, Op::Before, Op::Tensor};
    return Term::node(ops[rng() % 3], std::move(kids));
}

// n distinct named positive atoms a1..an
inline std::vector<Term> atoms(int n) {
    std::vector<Term> out;
    for (int i = 1; i <= n; ++i)
        out.push_back(Term::atom("x" + std::to_string(i), false, i));
    return out;
}

// Enumerate all irreflexive relations on points {1..n}: each unordered pair
// is none / arc / reverse arc / edge.  Calls fn for each.
template <class Fn>
void for_each_relation(int n, Fn&& fn) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) slots.push_back({i, j});
    size_t total = 1;
    for (size_t i = 0; i < slots.size(); ++i) total *= 4;
    for (size_t code = 0; code < total; ++code) {
        Relation r;
        for (int i = 1; i <= n; ++i) {
            r.points.insert(i);
            r.atoms[i] = {"x" + std::to_string(i), false};
        }
        size_t c = code;
        for (auto [x, y] : slots) {
            switch (c % 4) {
                case 1: r.pairs.insert({x, y}); break;
                case 2: r.pairs.insert({y, x}); break;
                case 3:
                    r.pairs.insert({x, y});
                    r.pairs.insert({y, x});
                    break;
                default: break;
            }
            c /= 4;
        }
        fn(r);
    }
}

}  // namespace testutil
