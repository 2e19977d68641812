#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ptlsep/cfg.hpp"
#include "ptlsep/engine.hpp"
#include "ptlsep/ideal.hpp"
#include "ptlsep/lang.hpp"
#include "ptlsep/nfa.hpp"
#include "ptlsep/pattern.hpp"
#include "ptlsep/ptl.hpp"

namespace ptlsep {

using Json = nlohmann::json;

// Grammar text:
//   # comment
//   alphabet a b c      (optional; declares letters that no rule mentions)
//   start S             (optional; defaults to the first left-hand side)
//   S -> a S b |        (| separates alternatives, an empty one is ε)
// Tokens that appear on a left-hand side are nonterminals, the rest are
// terminals.
Cfg parse_grammar(std::string_view text);
std::string format_grammar(const Cfg& g);

Json to_json(const Nfa& m);
Nfa nfa_from_json(const Json& j);

Json to_json(const PtlFormula& f);
PtlFormula formula_from_json(const Json& j);

Json to_json(const Pattern& p);
Pattern pattern_from_json(const Json& j);

Json to_json(const Ideal& ideal);
Ideal ideal_from_json(const Json& j);

Json to_json(const Outcome& outcome);
Json to_json(const Certificate& cert);
/// Certificates only; an undecided outcome is rejected.
Certificate certificate_from_json(const Json& j);
ResumeState resume_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Json parse_json(std::string_view text);

/// .cfg (grammar text) or .nfa (NFA JSON); rejects reserved symbols.
LangRef load_language(const std::string& path);
Nfa load_nfa(const std::string& path);

}  // namespace ptlsep
