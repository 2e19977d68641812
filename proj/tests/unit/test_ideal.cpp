#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/ideal.hpp"

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

}  // namespace

TEST_CASE("atoms and printing") {
  CHECK_THROWS_AS(Atom::block(Alphabet{}), Error);
  Ideal i{{Atom::block(kAb), Atom::opt("a")}};
  CHECK(i.size() == 3);
  CHECK(i.num_blocks() == 1);
  CHECK(to_string(i) == "{a,b}* a?");
  CHECK(to_string(Ideal{}) == "ε");
}

TEST_CASE("automaton of an ideal") {
  std::mt19937 rng(41);
  for (int k = 0; k < 100; ++k) {
    Ideal i = random_ideal(rng, kAb);
    Nfa m = ideal_to_nfa(i, kAb);
    for (const auto& w : oracle::all_words(kAb, 5)) CHECK(oracle::nfa_accepts(m, w) == oracle::in_ideal(w, i));
  }
}

TEST_CASE("canonical form keeps the language") {
  std::mt19937 rng(42);
  Alphabet abc{"a", "b", "c"};
  for (int k = 0; k < 200; ++k) {
    Ideal i = random_ideal(rng, k % 2 ? kAb : abc);
    Ideal c = canonicalize(i);
    CHECK(is_canonical(c));
    CHECK(c.size() <= i.size());
    for (const auto& w : oracle::all_words(k % 2 ? kAb : abc, 4)) CHECK(oracle::in_ideal(w, i) == oracle::in_ideal(w, c));
  }
  Ideal merge{{Atom::block(Alphabet{"a"}), Atom::block(kAb)}};
  CHECK(canonicalize(merge) == Ideal{{Atom::block(kAb)}});
  Ideal absorb{{Atom::opt("a"), Atom::block(kAb), Atom::opt("b")}};
  CHECK(canonicalize(absorb) == Ideal{{Atom::block(kAb)}});
  CHECK(is_canonical(Ideal{{Atom::opt("a"), Atom::opt("a")}}));
}

TEST_CASE("canonical elements cover the ideal") {
  std::mt19937 rng(43);
  for (int k = 0; k < 60; ++k) {
    Ideal i = random_ideal(rng, kAb);
    for (std::size_t n = 0; n <= 3; ++n) CHECK(oracle::in_ideal(canonical_element(i, n), i));
    Word big = canonical_element(i, 5);
    for (const auto& w : oracle::all_words(kAb, 5)) {
      if (oracle::in_ideal(w, i)) CHECK(oracle::subword(w, big));
    }
  }
}
