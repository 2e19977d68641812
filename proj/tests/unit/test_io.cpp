#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "ptlsep/engine.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/io.hpp"

using namespace ptlsep;

namespace {

const Alphabet kAb{"a", "b"};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::invalid_argument;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("ptlsep_io_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("grammar text") {
  Cfg g = parse_grammar("# balanced\nstart S\nS -> a S b |\n");
  CHECK(g.alphabet() == kAb);
  for (const auto& w : std::vector<std::string>{"", "ab", "aabb"}) CHECK(member(g, char_word(w)));
  for (const auto& w : std::vector<std::string>{"a", "ba", "abab"}) CHECK_FALSE(member(g, char_word(w)));

  Cfg cont = parse_grammar("S -> a S\n   | b\n");
  CHECK(member(cont, char_word("aab")));
  CHECK_FALSE(member(cont, char_word("")));

  Cfg declared = parse_grammar("alphabet a b c\nS -> a\n");
  CHECK(declared.alphabet() == Alphabet{"a", "b", "c"});
  // a start symbol without rules derives nothing
  CHECK(is_empty(parse_grammar("start X\nS -> a\n")));
  Cfg named = parse_grammar("start T\nU -> b\nT -> a U\n");
  CHECK(member(named, char_word("ab")));
  CHECK_FALSE(member(named, char_word("b")));
}

TEST_CASE("grammar errors carry line numbers") {
  CHECK(kind_of([] { parse_grammar("S -> a\nthis is wrong\n"); }) == ErrorKind::parse);
  CHECK(message_of([] { parse_grammar("S -> a\nthis is wrong\n"); }).find("line 2") != std::string::npos);
  CHECK(kind_of([] { parse_grammar("S -> $1 a\n"); }) == ErrorKind::reserved_symbol);
  CHECK(kind_of([] { parse_grammar(""); }) == ErrorKind::parse);
  CHECK(kind_of([] { parse_grammar("| a\n"); }) == ErrorKind::parse);
  CHECK(kind_of([] { parse_grammar("alphabet a\na -> b\n"); }) == ErrorKind::parse);
}

TEST_CASE("grammar round trip") {
  std::mt19937 rng(91);
  for (int k = 0; k < 40; ++k) {
    Cfg g = oracle::random_cfg(rng, 3, Alphabet{"a", "b", "c"});
    std::string text = format_grammar(g);
    Cfg back = parse_grammar(text);
    CHECK(format_grammar(back) == text);
    CHECK(oracle::cfg_words(back, 5) == oracle::cfg_words(g, 5));
  }
}

TEST_CASE("NFA JSON round trip") {
  std::mt19937 rng(92);
  for (int k = 0; k < 40; ++k) {
    Nfa m = oracle::random_nfa(rng, 5, kAb);
    Json j = to_json(m);
    Nfa back = nfa_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(to_json(nfa_from_json(parse_json(j.dump()))) == j);
    CHECK(equivalent(back, m));
  }
  Json eps = parse_json(R"({"alphabet":["a"],"states":2,"initial":[0],"final":[1],
                            "transitions":[[0,"",1],[1,"a",1]]})");
  Nfa m = nfa_from_json(eps);
  CHECK(member(m, Word{}));
  CHECK(member(m, Word{"a", "a"}));
}

TEST_CASE("NFA JSON errors") {
  auto bad = [](const char* text) { return kind_of([&] { nfa_from_json(parse_json(text)); }); };
  CHECK(bad(R"({"alphabet":["a"],"states":1,"initial":[1],"final":[],"transitions":[]})") ==
        ErrorKind::parse);
  CHECK(bad(R"({"alphabet":["a"],"states":1,"initial":[0],"final":[],"transitions":[[0,"b",0]]})") ==
        ErrorKind::parse);
  CHECK(bad(R"({"alphabet":["a"],"states":1})") == ErrorKind::parse);
  CHECK(bad(R"({"alphabet":["$1"],"states":1,"initial":[0],"final":[],"transitions":[]})") ==
        ErrorKind::reserved_symbol);
  CHECK(kind_of([] { parse_json("{not json"); }) == ErrorKind::parse);
}

TEST_CASE("formula, pattern and ideal round trips") {
  auto f = PtlFormula::any_of({PtlFormula::all_of({PtlFormula::piece(char_word("ab")),
                                                   PtlFormula::negate(PtlFormula::piece(char_word("ba")))}),
                               PtlFormula::falsity(), PtlFormula::truth()});
  CHECK(formula_from_json(to_json(f)) == f);
  CHECK(formula_from_json(parse_json(to_json(f).dump())) == f);

  std::mt19937 rng(93);
  for (int k = 0; k < 30; ++k) {
    Pattern p = oracle::random_proper_pattern(rng, kAb, 3, 2);
    CHECK(pattern_from_json(to_json(p)) == p);
  }
  CHECK(kind_of([] { pattern_from_json(parse_json(R"({"u":[[]],"B":[["a"]]})")); }) ==
        ErrorKind::parse);

  Ideal ideal{{Atom::block(kAb), Atom::opt("a"), Atom::block(Alphabet{"b"})}};
  CHECK(ideal_from_json(to_json(ideal)) == ideal);
  CHECK(ideal_from_json(parse_json(R"({"atoms":[]})")) == Ideal{});
}

TEST_CASE("certificates round trip") {
  Cfg dyck = parse_grammar("S -> a S b |\n");
  Cfg near = parse_grammar("S -> A | B\nA -> a A | a T\nB -> B b | T b\nT -> a T b |\n");
  auto in = separate(dyck, near);
  Json j = to_json(in);
  CHECK(j["verdict"] == "inseparable");
  Certificate back = certificate_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(validate(back, dyck, near));

  Nfa a_plus = concat(word_nfa(Word{"a"}, kAb), star_of(Alphabet{"a"}, kAb));
  Nfa b_plus = concat(word_nfa(Word{"b"}, kAb), star_of(Alphabet{"b"}, kAb));
  auto sep = separate(a_plus, b_plus);
  Json js = to_json(sep);
  CHECK(js["verdict"] == "separable");
  Certificate sback = certificate_from_json(parse_json(js.dump()));
  CHECK(to_json(sback) == js);
  CHECK(validate(sback, a_plus, b_plus));

  SeparateOptions opts;
  opts.budget = 2;
  Json ju = to_json(separate(dyck, near, opts));
  CHECK(ju["verdict"] == "undecided");
  CHECK(kind_of([&] { certificate_from_json(ju); }) == ErrorKind::parse);
  ResumeState r = resume_from_json(ju["resume"]);
  opts.resume = r;
  opts.budget.reset();
  CHECK(to_json(separate(dyck, near, opts)) == j);
}

TEST_CASE("loading by extension") {
  TempDir dir;
  write_file(dir.file("d.cfg"), "S -> a S b |\n");
  write_file(dir.file("m.nfa"), to_json(star_of(kAb, kAb)).dump());
  write_file(dir.file("m.json"), to_json(star_of(kAb, kAb)).dump());
  write_file(dir.file("m.txt"), "x");
  write_file(dir.file("bad.cfg"), "S -> a\nnonsense\n");
  CHECK_FALSE(load_language(dir.file("d.cfg")).is_regular());
  CHECK(load_language(dir.file("m.nfa")).is_regular());
  CHECK(load_language(dir.file("m.json")).is_regular());
  CHECK(load_nfa(dir.file("m.nfa")).alphabet() == kAb);
  CHECK(kind_of([&] { load_language(dir.file("m.txt")); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] { load_language(dir.file("missing.cfg")); }) == ErrorKind::io);
  std::string msg = message_of([&] { load_language(dir.file("bad.cfg")); });
  CHECK(msg.find("bad.cfg") != std::string::npos);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(kind_of([&] { load_nfa(dir.file("d.cfg")); }) == ErrorKind::parse);
}
