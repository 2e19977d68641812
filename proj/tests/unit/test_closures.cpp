#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "ptlsep/closures.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/io.hpp"

using namespace ptlsep;

namespace {

const Alphabet kAb{"a", "b"};

Ideal random_ideal(std::mt19937& rng, const Alphabet& a) {
  std::uniform_int_distribution<int> len(0, 4);
  std::bernoulli_distribution block(0.5);
  std::uniform_int_distribution<LetterSet> bits(1, a.mask());
  std::uniform_int_distribution<std::size_t> letter(0, a.size() - 1);
  Ideal out;
  for (int k = len(rng); k > 0; --k) {
    out.atoms.push_back(block(rng) ? Atom::block(a.subset(bits(rng))) : Atom::opt(a[letter(rng)]));
  }
  return out;
}

Nfa union_of(const std::vector<Ideal>& ideals, const Alphabet& a) {
  Nfa out = empty_nfa(a);
  for (const auto& i : ideals) out = unite(out, ideal_to_nfa(i, a));
  return out;
}

}  // namespace

TEST_CASE("syntactic ideal inclusion agrees with automata") {
  std::mt19937 rng(71);
  for (int k = 0; k < 400; ++k) {
    Ideal x = random_ideal(rng, kAb);
    Ideal y = random_ideal(rng, kAb);
    CHECK(ideal_includes(x, y) == includes(ideal_to_nfa(x, kAb), ideal_to_nfa(y, kAb)));
  }
}

TEST_CASE("canonical ideals by size") {
  for (std::size_t s = 0; s <= 4; ++s) {
    auto ideals = canonical_ideals_of_size(kAb, s);
    std::set<Ideal> distinct(ideals.begin(), ideals.end());
    CHECK(distinct.size() == ideals.size());
    for (const auto& i : ideals) {
      CHECK(is_canonical(i));
      CHECK(i.size() == s);
    }
  }
  CHECK(canonical_ideals_of_size(kAb, 0).size() == 1);
  // a?, b?, {a}*, {b}*
  CHECK(canonical_ideals_of_size(kAb, 1).size() == 4);
}

TEST_CASE("ideal decomposition round trip") {
  std::mt19937 rng(72);
  for (int k = 0; k < 50; ++k) {
    Nfa d = dc_nfa(oracle::random_nfa(rng, 4, kAb));
    auto ideals = ideal_decompose(d);
    CHECK(equivalent(union_of(ideals, kAb), d));
    for (const auto& i : ideals) CHECK(includes(ideal_to_nfa(i, kAb), d));
    for (const auto& x : ideals) {
      for (const auto& y : ideals) {
        if (!(x == y)) CHECK_FALSE(ideal_includes(x, y));
      }
    }
  }
  Nfa not_closed = word_nfa(char_word("ab"), kAb);
  try {
    ideal_decompose(not_closed);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_downward_closed);
  }
  auto ab = ideal_decompose(dc_nfa(star(word_nfa(char_word("ab"), kAb))));
  REQUIRE(ab.size() == 1);
  CHECK(ab[0] == Ideal{{Atom::block(kAb)}});
  CHECK(ideal_decompose(empty_nfa(kAb)).empty());
}

TEST_CASE("ideal inclusion in a downward closure") {
  std::mt19937 rng(73);
  for (int k = 0; k < 60; ++k) {
    Nfa m = oracle::random_nfa(rng, 4, kAb);
    Nfa d = dc_nfa(m);
    Cfg g = nfa_to_rlcfg(m);
    for (int j = 0; j < 5; ++j) {
      Ideal i = random_ideal(rng, kAb);
      bool expect = includes(ideal_to_nfa(i, kAb), d);
      CHECK(ideal_in_dc(m, i) == expect);
      CHECK(ideal_in_dc(g, i) == expect);
    }
  }
  Cfg dyck = parse_grammar("S -> a S b | \n");
  CHECK(ideal_in_dc(dyck, Ideal{{Atom::block(Alphabet{"a"}), Atom::block(Alphabet{"b"})}}));
  CHECK_FALSE(ideal_in_dc(dyck, Ideal{{Atom::block(Alphabet{"b"}), Atom::opt("a")}}));
  CHECK_FALSE(ideal_in_dc(dyck, Ideal{{Atom::opt("c")}}));
  CHECK(ideal_in_dc(dyck, Ideal{}));
}

TEST_CASE("downward closure of grammars") {
  Cfg dyck = parse_grammar("S -> a S b | \n");
  Nfa expect = concat(star_of(Alphabet{"a"}, kAb), star_of(Alphabet{"b"}, kAb));
  CHECK(equivalent(dc_cfg(dyck), expect));
  CHECK(equivalent(downward_closure(dyck), expect));

  std::mt19937 rng(74);
  for (int k = 0; k < 50; ++k) {
    Nfa m = oracle::random_nfa(rng, 4, kAb);
    CHECK(equivalent(dc_cfg(nfa_to_rlcfg(m)), dc_nfa(m)));
  }
  for (int k = 0; k < 30; ++k) {
    Cfg g = oracle::random_cfg(rng, 3, kAb);
    Nfa d = dc_cfg(g);
    // everything below a short word of L is in, and d is downward closed
    for (const auto& w : oracle::cfg_words(g, 5)) CHECK(accepts(d, w));
    CHECK(equivalent(dc_nfa(d), d));
    CHECK(!intersects(g, complement(d)));
  }
  Cfg empty = parse_grammar("S -> S a\n");
  CHECK(is_empty(dc_cfg(empty)));
}

TEST_CASE("budgeted closure search resumes") {
  Cfg g = parse_grammar("S -> a S b | c\n");
  IdealSearch full = dc_cfg_search(g);
  full.run();
  IdealSearch stepped = dc_cfg_search(g);
  int rounds = 0;
  while (!stepped.run(2)) ++rounds;
  CHECK(rounds > 1);
  CHECK(stepped.maximal() == full.maximal());
  CHECK(stepped.oracle_calls() == full.oracle_calls());
}

TEST_CASE("SUP") {
  Cfg dyck = parse_grammar("S -> a S b | \n");
  CHECK(sup_decide(dyck, {"a", "b"}));
  Nfa a_star_b = concat(star_of(Alphabet{"a"}, kAb), word_nfa(char_word("b"), kAb));
  CHECK_FALSE(sup_decide(a_star_b, {"a", "b"}));
  CHECK_FALSE(sup_decide(word_nfa({}, Alphabet{"a"}), {"a"}));
  CHECK(sup_decide(word_nfa({}, Alphabet{}), {}));
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::io;
  };
  CHECK(kind([&] { sup_decide(dyck, {"b", "a"}); }) == ErrorKind::ill_formed_instance);
  CHECK(kind([&] { sup_decide(dyck, {"a", "a"}); }) == ErrorKind::ill_formed_instance);
  CHECK(kind([&] { sup_decide(dyck, {"a", "c"}); }) == ErrorKind::ill_formed_instance);
  CHECK(equivalent(bounded_nfa({"b", "a"}, kAb), concat(star_of(Alphabet{"b"}, kAb), star_of(Alphabet{"a"}, kAb))));
}

TEST_CASE("diagonal through SUP") {
  std::mt19937 rng(75);
  for (int k = 0; k < 60; ++k) {
    Nfa m = oracle::random_nfa(rng, 5, k % 3 ? kAb : Alphabet{"a", "b", "c"});
    CHECK(diagonal_via_sup(m) == oracle::nfa_diagonal(m));
  }
  CHECK(diagonal_via_sup(parse_grammar("S -> a S b | \n")));
  CHECK_FALSE(diagonal_via_sup(parse_grammar("S -> a S | b\n")));
}
