#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/words.hpp"

using namespace ptlsep;

TEST_CASE("alphabet is sorted and deduplicated") {
  Alphabet a{"b", "a", "b"};
  CHECK(a.size() == 2);
  CHECK(a[0] == "a");
  CHECK(a.index_of("b") == 1);
  CHECK_FALSE(a.index_of("c"));
  CHECK_THROWS_AS(a.require("c"), Error);
  CHECK(Alphabet{"a"}.is_subset_of(a));
  CHECK(a.subset(0b10) == Alphabet{"b"});
  CHECK(a.mask_of(Alphabet{"b"}) == 0b10);
}

TEST_CASE("word helpers") {
  CHECK(parse_word("  a bb   c ") == Word{"a", "bb", "c"});
  CHECK(parse_word("").empty());
  CHECK(char_word("aab") == Word{"a", "a", "b"});
  CHECK(format_word({}) == "ε");
  CHECK(is_reserved_symbol("$1"));
  CHECK_FALSE(is_reserved_symbol("a$"));
  CHECK_THROWS_AS(check_user_alphabet(Alphabet{"a", "$x"}), Error);
}

TEST_CASE("subword relation matches the brute-force oracle") {
  Alphabet a{"a", "b"};
  auto words = oracle::all_words(a, 5);
  for (const auto& w : words) {
    auto subs = oracle::all_subwords(w);
    for (const auto& v : oracle::all_words(a, 4)) {
      CHECK(is_subword(v, w) == (subs.count(v) > 0));
    }
  }
}

TEST_CASE("B-subword deletes only letters of B") {
  Alphabet b{"a"};
  CHECK(is_subword_b(char_word("bb"), char_word("abab"), b));
  CHECK_FALSE(is_subword_b(char_word("ab"), char_word("abb"), b));
  CHECK(is_subword_b(char_word("abb"), char_word("abb"), b));
  CHECK(is_subword_b({}, char_word("aaa"), b));
  // oracle: delete any subset of the B-positions
  for (const auto& w : oracle::all_words(Alphabet{"a", "b"}, 5)) {
    std::set<Word> expect;
    std::vector<std::size_t> bpos;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == "a") bpos.push_back(i);
    }
    for (std::uint32_t bits = 0; bits < (1U << bpos.size()); ++bits) {
      Word v;
      std::set<std::size_t> drop;
      for (std::size_t k = 0; k < bpos.size(); ++k) {
        if (bits >> k & 1U) drop.insert(bpos[k]);
      }
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!drop.count(i)) v.push_back(w[i]);
      }
      expect.insert(v);
    }
    for (const auto& v : oracle::all_words(Alphabet{"a", "b"}, 5)) {
      CHECK(is_subword_b(v, w, b) == (expect.count(v) > 0));
    }
  }
}

TEST_CASE("subword profiles and Simon equivalence") {
  Alphabet a{"a", "b"};
  auto words = oracle::all_words(a, 5);
  for (const auto& w : words) {
    for (std::size_t n = 0; n <= 3; ++n) CHECK(subwords_upto(w, n).members == oracle::subwords_upto(w, n));
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int k = 0; k < 400; ++k) {
    const auto& v = words[pick(rng)];
    const auto& w = words[pick(rng)];
    for (std::size_t n = 0; n <= 3; ++n) CHECK(simon_equiv(v, w, n) == oracle::simon(v, w, n));
  }
  // a^k b^k ~k a^k b^(k+1)
  for (std::size_t k = 1; k <= 6; ++k) {
    Word x(k, "a");
    x.insert(x.end(), k, "b");
    Word y = x;
    y.push_back("b");
    CHECK(simon_equiv(x, y, k));
    CHECK_FALSE(simon_equiv(x, y, k + 1));
  }
}

TEST_CASE("leftmost embedding") {
  auto e = leftmost_embedding(char_word("ab"), char_word("bab"));
  REQUIRE(e);
  CHECK(*e == std::vector<std::size_t>{1, 2});
  CHECK_FALSE(leftmost_embedding(char_word("bb"), char_word("ab")));
  CHECK(leftmost_embedding({}, {})->empty());
}

TEST_CASE("letter counts and word enumeration") {
  Alphabet a{"a", "b"};
  auto c = letter_counts(char_word("abba"), a);
  CHECK(c["a"] == 2);
  CHECK(c["b"] == 2);
  CHECK_THROWS_AS(letter_counts(char_word("c"), a), Error);
  auto ws = words_upto(a, 2);
  CHECK(ws.size() == 7);
  CHECK(ws[0].empty());
  CHECK(ws[1] == Word{"a"});
  CHECK(ws[3] == char_word("aa"));
  CHECK(ws[6] == char_word("bb"));
}
