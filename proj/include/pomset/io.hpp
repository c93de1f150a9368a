// JSON (de)serialization of the on-disk formats: proof nets, coherence
// spaces, sequent proofs, and grammar lexicons.  Readers throw
// std::runtime_error with a human-readable message on malformed input.

#pragma once

#include <string>
#include <vector>

#include "pomset/coherence.hpp"
#include "pomset/grammar.hpp"
#include "pomset/proofnet.hpp"
#include "pomset/sequent.hpp"

namespace pomset {

// {"axioms": [[id, id], ...], "conclusion": "<term text>"}
ProofStructure net_from_json(const std::string& text);
std::string net_to_json(const ProofStructure& ps);

// {"tokens": ["0", ...], "strict_coh": [["0", "1"], ...]}
Space space_from_json(const std::string& text);
std::string space_to_json(const Space& s);

// {"rule": "...", "conclusion": "<sequent text>",
//  "params": {"a": [ids], "b": [ids]}, "premises": [...]}
// params and premises may be omitted.
ProofTree proof_from_json(const std::string& text);
std::string proof_to_json(const ProofTree& p);

// JSON array of entries {"word": "...", "output": "...",
//  "body": "<term text>", "aux": ["<term text>", ...],
//  "axioms": [[a, b] or [a, b, "word"], ...]}; aux may be omitted.
std::vector<LexEntry> lexicon_from_json(const std::string& text);
std::string lexicon_to_json(const std::vector<LexEntry>& lex);

// whole-file helpers
std::string read_file(const std::string& path);

}  // namespace pomset
