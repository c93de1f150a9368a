// Command-line front end: correctness checking, inclusion and derivation
// search, cut elimination, proof checking, sequentialisation, sentence
// parsing, the unsplittable-net search, and space calibration.
//
// Exit codes: 0 for a positive answer, 1 for a negative one, 2 on input
// errors (unreadable files, malformed JSON or terms, bad flags).

#include <cstdlib>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pomset/coherence.hpp"
#include "pomset/grammar.hpp"
#include "pomset/io.hpp"
#include "pomset/proofnet.hpp"
#include "pomset/rewrite.hpp"
#include "pomset/sequent.hpp"
#include "pomset/term.hpp"

namespace {

using namespace pomset;

// POMSET_SPACE names a space file; otherwise the built-in default applies.
Space active_space() {
    const char* path = std::getenv("POMSET_SPACE");
    if (!path || !*path) return default_space();
    return space_from_json(read_file(path));
}

Term term_arg(const std::string& text) {
    ParseError err;
    auto t = parse_term(text, &err);
    if (!t)
        throw std::runtime_error("bad term '" + text + "': " + err.message +
                                 " at offset " + std::to_string(err.pos));
    return *t;
}

int cmd_check(const std::string& file, bool semantic) {
    ProofStructure ps = net_from_json(read_file(file));
    std::string why;
    if (!validate_structure(ps, &why))
        throw std::runtime_error("invalid net: " + why);
    bool ok = true;
    if (auto circuit = chordless_circuit(ps)) {
        std::cout << "INCORRECT\n" << "circuit:";
        for (const auto& v : *circuit) std::cout << " " << v;
        std::cout << "\n";
        ok = false;
    } else {
        std::cout << "CORRECT\n";
    }
    if (semantic) {
        auto sem = semantic_correct(ps, active_space());
        if (!sem.has_value()) {
            std::cout << "SEMANTIC-UNDEFINED\n";
        } else {
            std::cout << (*sem ? "SEMANTIC-CORRECT\n" : "SEMANTIC-INCORRECT\n");
            ok = ok && *sem;
        }
    }
    return ok ? 0 : 1;
}

int cmd_include(const std::string& big, const std::string& small) {
    auto d = includes(term_arg(big), term_arg(small));
    if (!d) {
        std::cout << "NOT-INCLUDED\n";
        return 1;
    }
    std::cout << derivation_log(*d);
    return 0;
}

int cmd_derive(const std::string& system, const std::string& target) {
    static const std::map<std::string, System> systems{
        {"gmll", System::Gmll},
        {"gmll-mix", System::GmllMix},
        {"dicograph", System::Dicograph}};
    auto it = systems.find(system);
    if (it == systems.end())
        throw std::runtime_error("unknown system: " + system);
    auto d = derive(term_arg(target), it->second);
    if (!d) {
        std::cout << "NOT-DERIVABLE\n";
        return 1;
    }
    std::cout << derivation_log(*d);
    return 0;
}

int cmd_normalize(const std::string& file) {
    ProofStructure ps = net_from_json(read_file(file));
    std::string why;
    if (!validate_structure(ps, &why))
        throw std::runtime_error("invalid net: " + why);
    NormalizeResult r = normalize(ps);
    std::cout << net_to_json(r.net) << "\n";
    if (r.loops) std::cerr << "loops: " << r.loops << "\n";
    return 0;
}

int cmd_prove_check(const std::string& calculus, const std::string& file) {
    Calculus calc;
    if (calculus == "sp")
        calc = Calculus::SpPomset;
    else if (calculus == "dicograph")
        calc = Calculus::Dicograph;
    else
        throw std::runtime_error("unknown calculus: " + calculus);
    ProofTree p = proof_from_json(read_file(file));
    CheckResult r = check_proof(p, calc);
    if (!r.ok()) {
        std::cout << "VIOLATION at " << rule_label(r.violation->rule) << ": "
                  << r.violation->reason << "\n";
        return 1;
    }
    std::cout << "OK " << to_text(r.conclusion) << "\n";
    return 0;
}

int cmd_sequentialize(const std::string& file) {
    ProofStructure ps = net_from_json(read_file(file));
    std::string why;
    if (!validate_structure(ps, &why))
        throw std::runtime_error("invalid net: " + why);
    auto p = sequentialize(ps);
    if (!p) {
        std::cout << "NOT-SEQUENTIALIZABLE\n";
        return 1;
    }
    std::cout << proof_to_json(*p) << "\n";
    return 0;
}

int cmd_parse(const std::string& lexicon_file, const std::string& target,
              const std::vector<std::string>& words) {
    auto lex = lexicon_from_json(read_file(lexicon_file));
    std::string err;
    auto parses = parse_sentence(lex, words, target, &err);
    if (parses.empty() && !err.empty()) throw std::runtime_error(err);
    if (parses.empty()) {
        std::cout << "NO-PARSE\n";
        return 1;
    }
    // keep the analyses compatible with the given surface order
    std::vector<std::string> lines;
    for (const auto& p : parses)
        if (linear_extension(p.order, words)) lines.push_back(to_text(p.order));
    if (lines.empty()) {
        std::cout << "NO-PARSE\n";
        return 1;
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) std::cout << l << "\n";
    return 0;
}

int cmd_search_counterexample(int axioms) {
    auto nets = unsplittable_nets(axioms);
    if (nets.empty()) {
        std::cout << "NONE-FOUND\n";
        return 1;
    }
    for (const auto& ps : nets)
        std::cout << to_text_ids(ps.conclusion) << "\n";
    std::cout << "found: " << nets.size() << "\n";
    return 0;
}

int cmd_calibrate_space(int max_axioms) {
    auto spaces = calibrate(max_axioms);
    for (const auto& s : spaces) {
        std::cout << "strict:";
        for (const auto& [a, b] : s.strict)
            std::cout << " (" << a << "," << b << ")";
        std::cout << "\n";
    }
    std::cout << "agreeing: " << spaces.size() << "\n";
    return spaces.empty() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pomset logic toolkit"};
    app.require_subcommand(1);

    std::string net_file, big, small, target, system = "dicograph";
    std::string calculus = "sp", proof_file, lexicon_file, parse_target;
    std::vector<std::string> words;
    bool semantic = false;
    int axioms = 6, max_axioms = 2;

    auto* check = app.add_subcommand("check", "chord criterion on a net");
    check->add_option("net", net_file)->required();
    check->add_flag("--semantic", semantic, "also run the coherence oracle");

    auto* incl = app.add_subcommand("include", "dicograph inclusion rewrite");
    incl->add_option("big", big)->required();
    incl->add_option("small", small)->required();

    auto* der = app.add_subcommand("derive", "derive a term from its axiom");
    der->add_option("--system", system, "gmll|gmll-mix|dicograph");
    der->add_option("target", target)->required();

    auto* norm = app.add_subcommand("normalize", "eliminate all cuts");
    norm->add_option("net", net_file)->required();

    auto* pc = app.add_subcommand("prove-check", "check a sequent proof");
    pc->add_option("--calculus", calculus, "sp|dicograph");
    pc->add_option("proof", proof_file)->required();

    auto* seq = app.add_subcommand("sequentialize", "net to sequent proof");
    seq->add_option("net", net_file)->required();

    auto* par = app.add_subcommand("parse", "parse a sentence");
    par->add_option("--lexicon", lexicon_file)->required();
    par->add_option("--target", parse_target)->required();
    par->add_option("words", words)->required();

    auto* sc = app.add_subcommand("search-counterexample",
                                  "correct nets without a splitting");
    sc->add_option("--axioms", axioms);

    auto* cal = app.add_subcommand("calibrate-space",
                                   "spaces agreeing with the criterion");
    cal->add_option("--max-axioms", max_axioms);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(net_file, semantic);
        if (incl->parsed()) return cmd_include(big, small);
        if (der->parsed()) return cmd_derive(system, target);
        if (norm->parsed()) return cmd_normalize(net_file);
        if (pc->parsed()) return cmd_prove_check(calculus, proof_file);
        if (seq->parsed()) return cmd_sequentialize(net_file);
        if (par->parsed()) return cmd_parse(lexicon_file, parse_target, words);
        if (sc->parsed()) return cmd_search_counterexample(axioms);
        if (cal->parsed()) return cmd_calibrate_space(max_axioms);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
