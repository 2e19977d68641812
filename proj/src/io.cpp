#include "ptlsep/io.hpp"

#include <fstream>
#include <sstream>

#include "ptlsep/error.hpp"

namespace ptlsep {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

void check_token(std::size_t line, const std::string& tok) {
  if (is_reserved_symbol(tok)) {
    throw Error(ErrorKind::reserved_symbol,
                "line " + std::to_string(line) + ": symbol '" + tok + "' uses the reserved '$' prefix");
  }
}

struct Rule {
  std::size_t line;
  std::string lhs;
  std::vector<std::vector<std::string>> alternatives;
};

}  // namespace

Cfg parse_grammar(std::string_view text) {
  std::vector<std::string> declared;
  std::optional<std::string> start;
  std::vector<Rule> rules;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream toks(raw);
    std::vector<std::string> t;
    for (std::string s; toks >> s;) t.push_back(s);
    if (t.empty()) continue;

    const bool is_rule = t.size() >= 2 && t[1] == "->";
    if (t[0] == "alphabet" && !is_rule) {
      for (std::size_t k = 1; k < t.size(); ++k) {
        check_token(line, t[k]);
        declared.push_back(t[k]);
      }
    } else if (t[0] == "start" && !is_rule) {
      if (t.size() != 2) parse_error(line, "expected 'start <nonterminal>'");
      if (start) parse_error(line, "duplicate start declaration");
      check_token(line, t[1]);
      start = t[1];
    } else if (t[0] == "|") {
      if (rules.empty()) parse_error(line, "alternative without a rule");
      auto& alts = rules.back().alternatives;
      alts.emplace_back();
      for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k] == "|") {
          alts.emplace_back();
        } else {
          check_token(line, t[k]);
          alts.back().push_back(t[k]);
        }
      }
    } else {
      if (!is_rule) parse_error(line, "expected '<nonterminal> -> ...'");
      check_token(line, t[0]);
      Rule rule{line, t[0], {{}}};
      for (std::size_t k = 2; k < t.size(); ++k) {
        if (t[k] == "->") parse_error(line, "unexpected '->'");
        if (t[k] == "|") {
          rule.alternatives.emplace_back();
        } else {
          check_token(line, t[k]);
          rule.alternatives.back().push_back(t[k]);
        }
      }
      rules.push_back(std::move(rule));
    }
  }
  if (rules.empty() && !start) parse_error(line, "grammar has no rules");

  std::vector<std::string> nonterminals;
  std::set<std::string> is_nt;
  auto add_nt = [&](const std::string& name) {
    if (is_nt.insert(name).second) nonterminals.push_back(name);
  };
  for (const auto& r : rules) add_nt(r.lhs);
  if (start) add_nt(*start);

  std::vector<std::string> letters = declared;
  for (const auto& r : rules) {
    for (const auto& alt : r.alternatives) {
      for (const auto& tok : alt) {
        if (!is_nt.count(tok)) letters.push_back(tok);
      }
    }
  }
  for (const auto& d : declared) {
    if (is_nt.count(d)) parse_error(1, "'" + d + "' is declared as a letter but used as a nonterminal");
  }

  Cfg g{Alphabet(letters)};
  for (const auto& name : nonterminals) g.add_nonterminal(name);
  g.set_start(*g.find_nonterminal(start ? *start : rules.front().lhs));
  for (const auto& r : rules) {
    for (const auto& alt : r.alternatives) g.add_production(r.lhs, alt);
  }
  return g;
}

std::string format_grammar(const Cfg& g) {
  std::string out = "alphabet";
  for (const auto& letter : g.alphabet()) out += " " + letter;
  out += "\n";
  out += to_text(g);
  // A start symbol without rules still needs its declaration.
  if (g.num_nonterminals() == 0) out += "start S\n";
  return out;
}

namespace {

[[noreturn]] void json_error(const std::string& what) { throw Error(ErrorKind::parse, what); }

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& err) {
    json_error(std::string(what) + ": " + err.what());
  }
}

std::vector<std::string> tokens(const Json& j, const char* what) {
  if (!j.is_array()) json_error(std::string(what) + " must be an array of symbols");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) json_error(std::string(what) + " must contain strings");
    auto s = x.get<std::string>();
    if (is_reserved_symbol(s)) {
      throw Error(ErrorKind::reserved_symbol, "symbol '" + s + "' uses the reserved '$' prefix");
    }
    out.push_back(std::move(s));
  }
  return out;
}

Json letters_json(const Alphabet& a) { return Json(std::vector<std::string>(a.begin(), a.end())); }

}  // namespace

Json to_json(const Nfa& m) {
  Json out;
  out["alphabet"] = letters_json(m.alphabet());
  out["states"] = m.num_states();
  out["initial"] = m.initial_states();
  out["final"] = m.final_states();
  Json edges = Json::array();
  for (State s = 0; s < m.num_states(); ++s) {
    for (const auto& e : m.edges(s)) {
      edges.push_back(Json::array({s, e.label == kEpsilon ? std::string() : m.alphabet()[e.label], e.to}));
    }
  }
  out["transitions"] = edges;
  return out;
}

Nfa nfa_from_json(const Json& j) {
  return guarded("NFA JSON", [&] {
    if (!j.is_object()) json_error("NFA JSON must be an object");
    for (const char* key : {"alphabet", "states", "initial", "final", "transitions"}) {
      if (!j.contains(key)) json_error(std::string("NFA JSON lacks \"") + key + "\"");
    }
    Alphabet a(tokens(j.at("alphabet"), "alphabet"));
    auto n = j.at("states").get<long long>();
    if (n < 0) json_error("NFA JSON: negative state count");
    Nfa m(a);
    m.add_states(static_cast<std::size_t>(n));
    auto state = [&](const Json& x) {
      auto s = x.get<long long>();
      if (s < 0 || s >= n) json_error("NFA JSON: state " + std::to_string(s) + " out of range");
      return static_cast<State>(s);
    };
    for (const auto& s : j.at("initial")) m.set_initial(state(s));
    for (const auto& s : j.at("final")) m.set_final(state(s));
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 3) json_error("NFA JSON: transitions are [from, label, to]");
      auto label = t[1].get<std::string>();
      if (is_reserved_symbol(label)) {
        throw Error(ErrorKind::reserved_symbol, "symbol '" + label + "' uses the reserved '$' prefix");
      }
      if (!label.empty() && !a.contains(label)) json_error("NFA JSON: label '" + label + "' not in the alphabet");
      m.add_transition(state(t[0]), label, state(t[2]));
    }
    return m;
  });
}

Json to_json(const PtlFormula& f) {
  using Op = PtlFormula::Op;
  Json out;
  switch (f.op()) {
    case Op::truth: out["op"] = "true"; break;
    case Op::falsity: out["op"] = "false"; break;
    case Op::piece:
      out["op"] = "piece";
      out["word"] = f.word();
      break;
    case Op::negation:
    case Op::conjunction:
    case Op::disjunction: {
      out["op"] = f.op() == Op::negation ? "not" : f.op() == Op::conjunction ? "and" : "or";
      Json args = Json::array();
      for (const auto& a : f.args()) args.push_back(to_json(a));
      out["args"] = args;
      break;
    }
  }
  return out;
}

PtlFormula formula_from_json(const Json& j) {
  return guarded("formula JSON", [&] {
    if (!j.is_object() || !j.contains("op")) json_error("formula JSON needs an \"op\"");
    const auto op = j.at("op").get<std::string>();
    if (op == "true") return PtlFormula::truth();
    if (op == "false") return PtlFormula::falsity();
    if (op == "piece") return PtlFormula::piece(tokens(j.at("word"), "piece word"));
    std::vector<PtlFormula> args;
    for (const auto& a : j.at("args")) args.push_back(formula_from_json(a));
    if (op == "not") {
      if (args.size() != 1) json_error("\"not\" takes one argument");
      return PtlFormula::negate(std::move(args[0]));
    }
    if (op == "and") return PtlFormula::all_of(std::move(args));
    if (op == "or") return PtlFormula::any_of(std::move(args));
    json_error("unknown formula op '" + op + "'");
  });
}

Json to_json(const Pattern& p) {
  Json u = Json::array();
  for (const auto& w : p.u) u.push_back(w);
  Json b = Json::array();
  for (const auto& block : p.blocks) b.push_back(letters_json(block));
  return Json{{"u", u}, {"B", b}};
}

Pattern pattern_from_json(const Json& j) {
  return guarded("pattern JSON", [&] {
    if (!j.is_object() || !j.contains("u") || !j.contains("B")) json_error("pattern JSON needs \"u\" and \"B\"");
    Pattern p;
    for (const auto& w : j.at("u")) p.u.push_back(tokens(w, "pattern word"));
    for (const auto& b : j.at("B")) p.blocks.emplace_back(tokens(b, "pattern block"));
    try {
      p.validate();
    } catch (const Error& err) {
      json_error(std::string("pattern JSON: ") + err.what());
    }
    return p;
  });
}

Json to_json(const Ideal& ideal) {
  Json atoms = Json::array();
  for (const auto& a : ideal.atoms) {
    if (a.is_block()) {
      atoms.push_back(Json{{"block", letters_json(a.letters)}});
    } else {
      atoms.push_back(Json{{"opt", a.letter()}});
    }
  }
  return Json{{"atoms", atoms}};
}

Ideal ideal_from_json(const Json& j) {
  return guarded("ideal JSON", [&] {
    if (!j.is_object() || !j.contains("atoms")) json_error("ideal JSON needs \"atoms\"");
    Ideal out;
    for (const auto& a : j.at("atoms")) {
      if (a.contains("block")) {
        auto letters = tokens(a.at("block"), "ideal block");
        if (letters.empty()) json_error("ideal JSON: empty block");
        out.atoms.push_back(Atom::block(Alphabet(letters)));
      } else if (a.contains("opt")) {
        auto letter = tokens(Json::array({a.at("opt")}), "ideal letter");
        out.atoms.push_back(Atom::opt(letter[0]));
      } else {
        json_error("ideal JSON: atoms are {\"block\":[...]} or {\"opt\":\"x\"}");
      }
    }
    return out;
  });
}

Json to_json(const Certificate& cert) {
  if (const auto* sep = std::get_if<Separable>(&cert)) {
    return Json{{"verdict", "separable"},
                {"level", sep->level},
                {"formula", to_json(sep->formula)},
                {"separator_nfa", to_json(sep->separator)}};
  }
  return Json{{"verdict", "inseparable"}, {"pattern", to_json(std::get<Inseparable>(cert).pattern)}};
}

Json to_json(const Outcome& outcome) {
  if (const auto* sep = std::get_if<Separable>(&outcome)) return to_json(Certificate(*sep));
  if (const auto* ins = std::get_if<Inseparable>(&outcome)) return to_json(Certificate(*ins));
  const auto& u = std::get<Undecided>(outcome);
  Json resume{{"round", u.resume.round},
              {"positive_done", u.resume.positive_done},
              {"next_pattern", u.resume.next_pattern},
              {"positive_exhausted", u.resume.positive_exhausted}};
  return Json{{"verdict", "undecided"}, {"budget", u.budget}, {"resume", resume}, {"reason", u.reason}};
}

Certificate certificate_from_json(const Json& j) {
  return guarded("certificate JSON", [&]() -> Certificate {
    if (!j.is_object() || !j.contains("verdict")) json_error("certificate JSON needs a \"verdict\"");
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict == "separable") {
      return Separable{j.at("level").get<std::size_t>(), formula_from_json(j.at("formula")),
                       nfa_from_json(j.at("separator_nfa"))};
    }
    if (verdict == "inseparable") return Inseparable{pattern_from_json(j.at("pattern"))};
    json_error("certificate verdict must be \"separable\" or \"inseparable\", got \"" + verdict + "\"");
  });
}

ResumeState resume_from_json(const Json& j) {
  return guarded("resume JSON", [&] {
    ResumeState r;
    r.round = j.at("round").get<std::size_t>();
    r.positive_done = j.at("positive_done").get<bool>();
    r.next_pattern = j.at("next_pattern").get<std::size_t>();
    r.positive_exhausted = j.at("positive_exhausted").get<bool>();
    return r;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::io, "write to '" + path + "' failed");
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw Error(ErrorKind::parse, std::string("JSON: ") + err.what());
  }
}

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Nfa load_nfa(const std::string& path) {
  try {
    Nfa m = nfa_from_json(parse_json(read_file(path)));
    check_user_alphabet(m.alphabet());
    return m;
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::io) throw;
    throw Error(err.kind(), path + ": " + err.what());
  }
}

LangRef load_language(const std::string& path) {
  if (ends_with(path, ".nfa") || ends_with(path, ".json")) return load_nfa(path);
  if (ends_with(path, ".cfg")) {
    try {
      Cfg g = parse_grammar(read_file(path));
      check_user_alphabet(g.alphabet());
      return g;
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::io) throw;
      throw Error(err.kind(), path + ": " + err.what());
    }
  }
  throw Error(ErrorKind::invalid_argument, path + ": expected a .cfg or .nfa file");
}

}  // namespace ptlsep
