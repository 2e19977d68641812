#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptlsep/closures.hpp"
#include "ptlsep/engine.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/io.hpp"

using namespace ptlsep;

namespace {

// Default step budget for separate and is-ptl; --budget 0 lifts it.
constexpr std::size_t kDefaultBudget = 20000;

enum Exit : int {
  yes = 0,
  no = 1,
  undecided = 2,
  usage = 3,
  io_error = 4,
  parse_error = 5,
  reserved = 6,
  ill_formed = 7,
  guard = 8,
  internal = 9,
  not_closed = 10,
  mismatch = 11,
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return usage;
    case ErrorKind::io: return io_error;
    case ErrorKind::parse: return parse_error;
    case ErrorKind::reserved_symbol: return reserved;
    case ErrorKind::ill_formed_instance: return ill_formed;
    case ErrorKind::guard: return guard;
    case ErrorKind::not_downward_closed: return not_closed;
    case ErrorKind::alphabet_mismatch: return mismatch;
  }
  return internal;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

void diagnose(const std::string& kind, const std::string& message) {
  std::cerr << "error: " << kind << ": " << one_line(message) << "\n";
}

struct Args {
  std::string first;
  std::string second;
  std::string third;
  std::size_t budget = kDefaultBudget;
  std::string order;
  std::string emit;
  std::string dot;
  std::string resume;
  bool parallel = false;
};

std::vector<Symbol> split_order(const std::string& text) {
  std::vector<Symbol> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw Error(ErrorKind::invalid_argument, "empty letter in --order");
    out.push_back(item);
  }
  if (out.empty()) throw Error(ErrorKind::invalid_argument, "--order needs at least one letter");
  return out;
}

void emit_json(const Json& j, const Args& args) {
  std::string text = j.dump(2);
  if (args.emit.empty()) {
    std::cout << text << "\n";
  } else {
    write_file(args.emit, text + "\n");
  }
}

SeparateOptions engine_options(const Args& args) {
  SeparateOptions opts;
  if (args.budget != 0) opts.budget = args.budget;
  opts.parallel = args.parallel;
  if (!args.resume.empty()) {
    Json j = parse_json(read_file(args.resume));
    opts.resume = resume_from_json(j.contains("resume") ? j["resume"] : j);
  }
  return opts;
}

int report(const Outcome& out, const Args& args) {
  Json j = to_json(out);
  std::cout << j["verdict"].get<std::string>() << "\n";
  if (const auto* u = std::get_if<Undecided>(&out)) std::cerr << "note: " << one_line(u->reason) << "\n";
  emit_json(j, args);
  if (!args.dot.empty()) {
    if (const auto* s = std::get_if<Separable>(&out)) write_file(args.dot, to_dot(s->separator, "separator"));
  }
  if (std::holds_alternative<Separable>(out)) return yes;
  if (std::holds_alternative<Inseparable>(out)) return no;
  return undecided;
}

int answer(bool value) {
  std::cout << (value ? "yes" : "no") << "\n";
  return value ? yes : no;
}

int run_separate(const Args& args) {
  return report(separate(load_language(args.first), load_language(args.second), engine_options(args)), args);
}

int run_diagonal(const Args& args) { return answer(diagonal(load_language(args.first))); }

int run_sup(const Args& args) {
  LangRef l = load_language(args.first);
  try {
    return answer(sup_decide(l, split_order(args.order)));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::ill_formed_instance) throw;
    std::cout << "ill-formed\n";
    throw;
  }
}

int run_dclosure(const Args& args) {
  Nfa closure = downward_closure(load_language(args.first));
  emit_json(to_json(closure), args);
  if (!args.dot.empty()) write_file(args.dot, to_dot(closure, "closure"));
  return yes;
}

int run_ideals(const Args& args) {
  auto ideals = ideal_decompose(load_nfa(args.first));
  Json list = Json::array();
  for (const auto& ideal : ideals) {
    Json item = to_json(ideal);
    item["text"] = to_string(ideal);
    list.push_back(item);
  }
  emit_json(Json{{"ideals", list}}, args);
  return yes;
}

int run_pattern_check(const Args& args) {
  LangRef l = load_language(args.first);
  Pattern p = pattern_from_json(parse_json(read_file(args.second)));
  Alphabet letters = l.alphabet();
  for (const auto& w : p.u) letters = letters.unite(Alphabet(w));
  for (const auto& b : p.blocks) letters = letters.unite(b);
  return answer(contains_pattern(pad(l, letters), p));
}

int run_is_ptl(const Args& args) {
  Nfa l = load_nfa(args.first);
  return report(separate(l, complement(l), engine_options(args)), args);
}

int run_validate(const Args& args) {
  Certificate cert = certificate_from_json(parse_json(read_file(args.first)));
  bool ok = validate(cert, load_language(args.second), load_language(args.third));
  std::cout << (ok ? "pass" : "fail") << "\n";
  return ok ? yes : no;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PTL separability of regular and context-free languages"};
  app.require_subcommand(1);
  Args args;

  auto budget_flag = [&](CLI::App* cmd) {
    cmd->add_option("--budget", args.budget, "step budget, 0 for unlimited")
        ->capture_default_str();
    cmd->add_flag("--parallel", args.parallel, "run both sides on separate threads");
    cmd->add_option("--resume", args.resume, "continue from an undecided result JSON")
        ->check(CLI::ExistingFile);
  };

  auto* sep = app.add_subcommand("separate", "decide PTL separability of I and E");
  sep->add_option("I", args.first, "first language (.cfg or .nfa)")->required();
  sep->add_option("E", args.second, "second language (.cfg or .nfa)")->required();
  sep->add_option("--emit", args.emit, "write the result JSON here");
  sep->add_option("--dot", args.dot, "write the separator automaton as DOT");
  budget_flag(sep);

  auto* diag = app.add_subcommand("diagonal", "decide the diagonal problem");
  diag->add_option("L", args.first, "language")->required();

  auto* sup = app.add_subcommand("sup", "decide SUP for L inside b1*...bn*");
  sup->add_option("L", args.first, "language")->required();
  sup->add_option("--order", args.order, "letters b1,...,bn")->required();

  auto* dc = app.add_subcommand("dclosure", "compute the downward closure");
  dc->add_option("L", args.first, "language")->required();
  dc->add_option("--emit", args.emit, "write the NFA JSON here");
  dc->add_option("--dot", args.dot, "write the automaton as DOT");

  auto* ideals = app.add_subcommand("ideals", "decompose a downward-closed NFA into ideals");
  ideals->add_option("D", args.first, "downward-closed NFA")->required();
  ideals->add_option("--emit", args.emit, "write the ideal list here");

  auto* pc = app.add_subcommand("pattern-check", "decide whether L contains a pattern");
  pc->add_option("L", args.first, "language")->required();
  pc->add_option("P", args.second, "pattern JSON")->required();

  auto* ptl = app.add_subcommand("is-ptl", "decide whether a regular language is piecewise testable");
  ptl->add_option("L", args.first, "NFA")->required();
  ptl->add_option("--emit", args.emit, "write the result JSON here");
  ptl->add_option("--dot", args.dot, "write the separator automaton as DOT");
  budget_flag(ptl);

  auto* val = app.add_subcommand("validate", "check a certificate against an instance");
  val->add_option("cert", args.first, "certificate JSON")->required();
  val->add_option("I", args.second, "first language")->required();
  val->add_option("E", args.third, "second language")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnose("usage", e.what());
    return usage;
  }

  try {
    if (*sep) return run_separate(args);
    if (*diag) return run_diagonal(args);
    if (*sup) return run_sup(args);
    if (*dc) return run_dclosure(args);
    if (*ideals) return run_ideals(args);
    if (*pc) return run_pattern_check(args);
    if (*ptl) return run_is_ptl(args);
    if (*val) return run_validate(args);
  } catch (const Error& err) {
    diagnose(to_string(err.kind()), err.what());
    return exit_code(err.kind());
  } catch (const std::exception& err) {
    diagnose("internal", err.what());
    return internal;
  }
  return usage;
}
