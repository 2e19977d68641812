#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptlsep/cfg.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/io.hpp"

using namespace ptlsep;

namespace {

const Alphabet kAb{"a", "b"};

Cfg grammar(const char* text) { return parse_grammar(text); }

}  // namespace

TEST_CASE("nonterminal names") {
  Cfg g(kAb);
  auto s = g.add_nonterminal("S");
  CHECK_THROWS_AS(g.add_nonterminal("S"), Error);
  CHECK_THROWS_AS(g.add_nonterminal("a"), Error);
  auto s2 = g.add_fresh_nonterminal("S");
  CHECK(g.name(s2) == "S'");
  CHECK(g.find_nonterminal("S") == s);
  CHECK_THROWS_AS(g.add_production("S", {"c"}), Error);
  CHECK_THROWS_AS(g.add_production("T", {"a"}), Error);
}

TEST_CASE("productive symbols and reduction") {
  Cfg g = grammar("S -> a S | A\nA -> A b\nB -> b\n");
  auto prod = productive_nonterminals(g);
  CHECK_FALSE(prod[*g.find_nonterminal("S")]);
  CHECK(prod[*g.find_nonterminal("B")]);
  CHECK(is_empty_cfg(g));
  Cfg r = reduce_cfg(g);
  CHECK(r.num_nonterminals() == 1);
  CHECK(r.productions().empty());

  Cfg h = grammar("S -> a S b | \nU -> a\n");
  Cfg rh = reduce_cfg(h);
  CHECK_FALSE(rh.find_nonterminal("U"));
  CHECK(oracle::cfg_words(rh, 8) == oracle::cfg_words(h, 8));
}

TEST_CASE("slices agree with the derivation fixpoint") {
  std::mt19937 rng(21);
  for (int k = 0; k < 80; ++k) {
    Cfg g = oracle::random_cfg(rng, 3, kAb);
    auto expect = oracle::cfg_words(g, 6);
    CHECK(slice(g, 6) == expect);
    CHECK(is_empty_cfg(g) == oracle::cfg_words(g, 10).empty());
    if (!is_empty_cfg(g)) CHECK_FALSE((expect.empty() && oracle::cfg_words(g, 12).empty()));
  }
}

TEST_CASE("right-linear grammar of an automaton") {
  std::mt19937 rng(22);
  for (int k = 0; k < 60; ++k) {
    Nfa m = oracle::random_nfa(rng, 5, kAb);
    Cfg g = nfa_to_rlcfg(m);
    CHECK(oracle::cfg_words(g, 6) == oracle::nfa_words(m, 6));
  }
}

TEST_CASE("pump alphabets") {
  Cfg g = reduce_cfg(grammar("S -> a S b | T\nT -> c T | \n"));
  auto pumps = pump_alphabets(g);
  CHECK(pumps.at("S") == Alphabet{"a", "b"});
  CHECK(pumps.at("T") == Alphabet{"c"});
  Cfg fin = reduce_cfg(grammar("S -> a b\n"));
  CHECK(pump_alphabets(fin).at("S").empty());
}

TEST_CASE("diagonal of grammars") {
  CHECK(diagonal_cfg(grammar("S -> a S b | \n")));
  CHECK_FALSE(diagonal_cfg(grammar("S -> a S | b\n")));
  CHECK_FALSE(diagonal_cfg(grammar("S -> a S | \nT -> b T | \n")));
  // both letters pumped, but in different branches
  CHECK_FALSE(diagonal_cfg(grammar("S -> A | B\nA -> a A | \nB -> b B | \n")));
  CHECK(diagonal_cfg(grammar("S -> A B\nA -> a A | \nB -> b B | \n")));
  CHECK_FALSE(diagonal_cfg(grammar("S -> S a\n")));
  std::mt19937 rng(23);
  for (int k = 0; k < 200; ++k) {
    Nfa m = oracle::random_nfa(rng, 5, k % 3 ? kAb : Alphabet{"a", "b", "c"});
    CHECK(diagonal_cfg(nfa_to_rlcfg(m)) == oracle::nfa_diagonal(m));
  }
}

TEST_CASE("intersection with regular languages") {
  std::mt19937 rng(24);
  for (int k = 0; k < 80; ++k) {
    Nfa x = oracle::random_nfa(rng, 4, kAb);
    Nfa y = oracle::random_nfa(rng, 4, kAb);
    CHECK(intersects(nfa_to_rlcfg(x), y) == !is_empty(intersect(x, y)));
  }
  for (int k = 0; k < 80; ++k) {
    Cfg g = oracle::random_cfg(rng, 3, kAb);
    Nfa m = oracle::random_nfa(rng, 4, kAb);
    bool witness = false;
    for (const auto& w : oracle::cfg_words(g, 6)) witness = witness || oracle::nfa_accepts(m, w);
    if (witness) CHECK(intersects(g, m));
    if (!intersects(g, m)) CHECK_FALSE(witness);
  }
  Cfg dyck = grammar("S -> a S b | \n");
  Nfa ba = concat(concat(universal_nfa(kAb), word_nfa(char_word("ba"), kAb)), universal_nfa(kAb));
  CHECK_FALSE(intersects(dyck, ba));
  CHECK(intersects(dyck, word_nfa(char_word("aabb"), kAb)));
  CHECK_FALSE(intersects(dyck, word_nfa(char_word("aab"), kAb)));
}

TEST_CASE("reachable states of a deterministic walker") {
  std::mt19937 rng(25);
  for (int k = 0; k < 50; ++k) {
    Cfg g = oracle::random_cfg(rng, 3, kAb);
    Nfa d = determinize(oracle::random_nfa(rng, 4, kAb));
    auto got = reachable_states(g, d);
    std::set<State> got_set(got.begin(), got.end());
    for (State q = 0; q < d.num_states(); ++q) {
      Nfa target = d;
      for (State r = 0; r < d.num_states(); ++r) target.set_final(r, r == q);
      bool hit = got_set.count(q) > 0;
      CHECK(hit == intersects(g, target));
    }
  }
}

TEST_CASE("alphabet padding keeps the language") {
  Cfg g = grammar("S -> a S b | \n");
  Cfg big = g.with_alphabet(Alphabet{"a", "b", "c"});
  CHECK(big.alphabet().size() == 3);
  CHECK(slice(big, 6) == slice(g, 6));
  CHECK_THROWS_AS(g.with_alphabet(Alphabet{"a"}), Error);
}
