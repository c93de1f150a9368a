// JSON readers/writers for nets, spaces, proofs, and lexicons.

#include "pomset/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pomset {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::runtime_error(std::string("malformed JSON in ") + what);
    return j;
}

Term parse_term_or_throw(const std::string& text, const char* what) {
    ParseError err;
    auto t = parse_term(text, &err);
    if (!t)
        throw std::runtime_error(std::string(what) + ": " + err.message +
                                 " at offset " + std::to_string(err.pos));
    return *t;
}

}  // namespace

ProofStructure net_from_json(const std::string& text) {
    json j = parse_json(text, "net");
    if (!j.is_object() || !j.contains("axioms") || !j.contains("conclusion"))
        throw std::runtime_error("net: expected axioms and conclusion");
    ProofStructure ps;
    for (const auto& a : j.at("axioms")) {
        if (!a.is_array() || a.size() != 2)
            throw std::runtime_error("net: axiom must be a pair of ids");
        ps.axioms.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
    }
    ps.conclusion =
        parse_term_or_throw(j.at("conclusion").get<std::string>(), "net");
    return ps;
}

std::string net_to_json(const ProofStructure& ps) {
    json j;
    j["axioms"] = json::array();
    for (auto [a, b] : ps.axioms) j["axioms"].push_back({a, b});
    j["conclusion"] = to_text_ids(ps.conclusion);
    return j.dump(2);
}

Space space_from_json(const std::string& text) {
    json j = parse_json(text, "space");
    if (!j.is_object() || !j.contains("tokens") || !j.contains("strict_coh"))
        throw std::runtime_error("space: expected tokens and strict_coh");
    Space s;
    for (const auto& t : j.at("tokens")) s.tokens.push_back(t.get<std::string>());
    for (const auto& p : j.at("strict_coh")) {
        if (!p.is_array() || p.size() != 2)
            throw std::runtime_error("space: strict_coh entries are pairs");
        std::string a = p.at(0).get<std::string>(), b = p.at(1).get<std::string>();
        if (a > b) std::swap(a, b);
        s.strict.insert({a, b});
    }
    return s;
}

std::string space_to_json(const Space& s) {
    json j;
    j["tokens"] = s.tokens;
    j["strict_coh"] = json::array();
    for (const auto& [a, b] : s.strict) j["strict_coh"].push_back({a, b});
    return j.dump(2);
}

namespace {

ProofTree proof_from(const json& j) {
    if (!j.is_object() || !j.contains("rule") || !j.contains("conclusion"))
        throw std::runtime_error("proof: expected rule and conclusion");
    ProofTree p;
    auto rule = rule_from_label(j.at("rule").get<std::string>());
    if (!rule)
        throw std::runtime_error("proof: unknown rule " +
                                 j.at("rule").get<std::string>());
    p.rule = *rule;
    p.conclusion = parse_term_or_throw(j.at("conclusion").get<std::string>(),
                                       "proof conclusion");
    if (j.contains("params")) {
        const auto& ps = j.at("params");
        if (ps.contains("a"))
            for (const auto& x : ps.at("a")) p.a_ids.insert(x.get<int>());
        if (ps.contains("b"))
            for (const auto& x : ps.at("b")) p.b_ids.insert(x.get<int>());
    }
    if (j.contains("premises"))
        for (const auto& q : j.at("premises")) p.premises.push_back(proof_from(q));
    return p;
}

json proof_to(const ProofTree& p) {
    json j;
    j["rule"] = rule_label(p.rule);
    j["conclusion"] = to_text_ids(p.conclusion);
    if (!p.a_ids.empty() || !p.b_ids.empty()) {
        json ps = json::object();
        if (!p.a_ids.empty()) ps["a"] = p.a_ids;
        if (!p.b_ids.empty()) ps["b"] = p.b_ids;
        j["params"] = ps;
    }
    if (!p.premises.empty()) {
        j["premises"] = json::array();
        for (const auto& q : p.premises) j["premises"].push_back(proof_to(q));
    }
    return j;
}

}  // namespace

ProofTree proof_from_json(const std::string& text) {
    return proof_from(parse_json(text, "proof"));
}

std::string proof_to_json(const ProofTree& p) { return proof_to(p).dump(2); }

std::vector<LexEntry> lexicon_from_json(const std::string& text) {
    json j = parse_json(text, "lexicon");
    if (!j.is_array()) throw std::runtime_error("lexicon: expected an array");
    std::vector<LexEntry> lex;
    for (const auto& e : j) {
        LexEntry le;
        le.word = e.at("word").get<std::string>();
        le.output = e.at("output").get<std::string>();
        le.body = parse_term_or_throw(e.at("body").get<std::string>(),
                                      "lexicon body");
        if (e.contains("aux"))
            for (const auto& x : e.at("aux"))
                le.aux.push_back(
                    parse_term_or_throw(x.get<std::string>(), "lexicon aux"));
        for (const auto& a : e.at("axioms")) {
            if (!a.is_array() || a.size() < 2 || a.size() > 3)
                throw std::runtime_error(
                    "lexicon: axiom is [a, b] or [a, b, word]");
            LexAxiom ax{a.at(0).get<int>(), a.at(1).get<int>(), ""};
            if (a.size() == 3) ax.word = a.at(2).get<std::string>();
            le.axioms.push_back(ax);
        }
        std::string why;
        if (!validate_entry(le, &why))
            throw std::runtime_error("lexicon entry '" + le.word +
                                     "': " + why);
        lex.push_back(std::move(le));
    }
    return lex;
}

std::string lexicon_to_json(const std::vector<LexEntry>& lex) {
    json j = json::array();
    for (const auto& e : lex) {
        json je;
        je["word"] = e.word;
        je["output"] = e.output;
        je["body"] = to_text_ids(e.body);
        if (!e.aux.empty()) {
            je["aux"] = json::array();
            for (const auto& x : e.aux) je["aux"].push_back(to_text_ids(x));
        }
        je["axioms"] = json::array();
        for (const auto& a : e.axioms) {
            json ja = {a.a, a.b};
            if (!a.word.empty()) ja.push_back(a.word);
            je["axioms"].push_back(ja);
        }
        j.push_back(je);
    }
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace pomset
