#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/io.hpp"
#include "ptlsep/transducer.hpp"

using namespace ptlsep;

namespace {

const Alphabet kAb{"a", "b"};

std::set<Word> image(const std::set<Word>& inputs, const Fst& t, std::size_t max_out) {
  std::set<Word> out;
  for (const auto& v : inputs) {
    auto o = oracle::fst_outputs(t, v, max_out);
    out.insert(o.begin(), o.end());
  }
  return out;
}

Fst random_fst(std::mt19937& rng, const Alphabet& in, const Alphabet& out) {
  std::uniform_int_distribution<std::size_t> states(1, 3);
  std::bernoulli_distribution coin(0.3);
  std::uniform_int_distribution<std::size_t> out_len(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
  Fst t(in, out);
  const std::size_t n = states(rng);
  t.add_states(n);
  t.set_initial(0);
  t.set_final(static_cast<State>(n - 1));
  for (State q = 0; q < n; ++q) {
    for (State r = 0; r < n; ++r) {
      for (int x = -1; x < static_cast<int>(in.size()); ++x) {
        if (!coin(rng)) continue;
        std::vector<int> o;
        // input-free edges always write, so no output-free cycles
        std::size_t len = out_len(rng);
        if (x == kEpsilon && len == 0) len = 1;
        for (std::size_t k = 0; k < len; ++k) o.push_back(static_cast<int>(pick(rng)));
        t.add_transition(q, x, o, r);
      }
    }
  }
  return t;
}

}  // namespace

TEST_CASE("normalization keeps the relation") {
  std::mt19937 rng(31);
  for (int k = 0; k < 40; ++k) {
    Fst t = random_fst(rng, kAb, kAb);
    Fst n = normalize_fst(t);
    CHECK(n.is_normalized());
    for (const auto& v : oracle::all_words(kAb, 3)) CHECK(oracle::fst_outputs(n, v, 5) == oracle::fst_outputs(t, v, 5));
  }
}

TEST_CASE("applying transducers to automata") {
  std::mt19937 rng(32);
  for (int k = 0; k < 40; ++k) {
    Nfa m = oracle::random_nfa(rng, 4, kAb);
    Fst t = random_fst(rng, kAb, kAb);
    Nfa tm = apply_fst_nfa(m, t);
    // Outputs of inputs up to length 4 with output up to 4; every edge
    // reading input writes at most 2, so longer inputs could add more.
    auto expect = image(oracle::nfa_words(m, 4), t, 4);
    auto got = oracle::nfa_words(tm, 4);
    for (const auto& w : expect) CHECK(got.count(w));
  }
}

TEST_CASE("canned transducers") {
  Nfa a_only = word_nfa(char_word("a"), Alphabet{"a"});
  Nfa padded = apply_fst_nfa(a_only, pad_upward(Alphabet{"a"}, Alphabet{"b"}));
  CHECK(equivalent(padded, uc_nfa(a_only, Alphabet{"b"})));

  Nfa m = star(word_nfa(char_word("ab"), kAb));
  CHECK(equivalent(apply_fst_nfa(m, project(kAb, Alphabet{"a"})), star_of(Alphabet{"a"}, Alphabet{"a"})));

  Nfa r = piece_nfa(char_word("bb"), kAb);
  CHECK(equivalent(apply_fst_nfa(universal_nfa(kAb), restrict(r)), r));

  Fst d = doubling({"a", "b"}, kAb);
  CHECK(oracle::fst_outputs(d, char_word("aab"), 10) == std::set<Word>{char_word("aaaabb")});
  CHECK(oracle::fst_outputs(d, char_word("ba"), 10).empty());
  CHECK(oracle::fst_outputs(d, {}, 10) == std::set<Word>{{}});
}

TEST_CASE("grammar route agrees with the automaton route") {
  std::mt19937 rng(33);
  for (int k = 0; k < 50; ++k) {
    Nfa m = oracle::random_nfa(rng, 4, kAb);
    Fst t = normalize_fst(random_fst(rng, kAb, kAb));
    Cfg g = apply_fst_cfg(nfa_to_rlcfg(m), t);
    Nfa n = apply_fst_nfa(m, t);
    CHECK(oracle::cfg_words(g, 5) == oracle::nfa_words(n, 5));
    CHECK(is_empty_cfg(g) == is_empty(n));
  }
  for (int k = 0; k < 30; ++k) {
    Nfa m = oracle::random_nfa(rng, 4, kAb);
    Fst t = normalize_fst(pad_upward(kAb, Alphabet{"c"}));
    Cfg g = apply_fst_cfg(nfa_to_rlcfg(m), t);
    CHECK(oracle::cfg_words(g, 4) == oracle::nfa_words(apply_fst_nfa(m, t), 4));
  }
}

TEST_CASE("transducers on grammars") {
  Cfg dyck = parse_grammar("S -> a S b | \n");
  Cfg doubled = apply_fst_cfg(dyck, normalize_fst(doubling({"a", "b"}, kAb)));
  CHECK(slice(doubled, 8) ==
        std::set<Word>{{}, char_word("aabb"), char_word("aaaabbbb")});
  Cfg only_a = apply_fst_cfg(dyck, project(kAb, Alphabet{"a"}));
  CHECK(slice(only_a, 3) == std::set<Word>{{}, char_word("a"), char_word("aa"), char_word("aaa")});
  CHECK_THROWS_AS(apply_fst_cfg(dyck, doubling({"a", "b"}, kAb)), Error);
  // random grammars: exact on outputs of short inputs when outputs never shrink
  std::mt19937 rng(34);
  for (int k = 0; k < 40; ++k) {
    Cfg g = oracle::random_cfg(rng, 3, kAb);
    Nfa r = oracle::random_nfa(rng, 3, kAb);
    Cfg restricted = apply_fst_cfg(g, restrict(r));
    std::set<Word> expect;
    for (const auto& w : oracle::cfg_words(g, 5)) {
      if (oracle::nfa_accepts(r, w)) expect.insert(w);
    }
    CHECK(oracle::cfg_words(restricted, 5) == expect);
  }
}

TEST_CASE("ideal probe counts completed block words") {
  Ideal ideal{{Atom::block(Alphabet{"a", "b"}), Atom::opt("a"), Atom::block(Alphabet{"b"})}};
  Fst t = ideal_probe(ideal, kAb);
  auto outs = oracle::fst_outputs(t, char_word("ababab"), 10);
  // (ab)^2 then a then b: $0 $0 $1
  CHECK(outs.count(Word{"$0", "$0", "$1"}));
  CHECK_FALSE(outs.count(Word{"$0", "$0", "$0"}));
  CHECK(outs.count(Word{}));
  CHECK(oracle::fst_outputs(t, char_word("bbb"), 10).empty());
}
