#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ptlsep {

/// A letter is an arbitrary printable token. Tokens starting with '$' are
/// reserved for generated marker symbols.
using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Bit set over the letters of a small alphabet (bit i = i-th letter).
using LetterSet = std::uint32_t;

inline constexpr char kMarkerPrefix = '$';

bool is_reserved_symbol(std::string_view symbol);

/// Splits on whitespace: "a b  c" -> {a, b, c}.
Word parse_word(std::string_view text);

/// One letter per character: "aab" -> {a, a, b}. Convenient for single
/// character alphabets.
Word char_word(std::string_view text);

std::string format_word(const Word& w);

/// Finite ordered set of letters.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<Symbol> letters);
  explicit Alphabet(std::vector<Symbol> letters);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const std::vector<Symbol>& letters() const noexcept { return letters_; }
  const Symbol& operator[](std::size_t i) const { return letters_[i]; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  bool contains(std::string_view symbol) const;
  std::optional<std::size_t> index_of(std::string_view symbol) const;
  /// Like index_of but throws Error{alphabet_mismatch}.
  std::size_t require(std::string_view symbol) const;

  bool is_subset_of(const Alphabet& other) const;
  Alphabet unite(const Alphabet& other) const;

  /// Letters as a bit set; requires size() <= 32.
  LetterSet mask() const;
  LetterSet mask_of(const Alphabet& subset) const;
  Alphabet subset(LetterSet bits) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
  friend auto operator<=>(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Symbol> letters_;
};

Alphabet alph(const Word& w);

/// Rejects reserved ('$'-prefixed) symbols with Error{reserved_symbol}.
void check_user_alphabet(const Alphabet& a);

/// Words of length <= n that are subwords of some word, plus the bound.
struct SubwordProfile {
  std::size_t bound = 0;
  std::set<Word> members;

  friend bool operator==(const SubwordProfile&, const SubwordProfile&) = default;
};

/// v arises from w by deleting only occurrences of letters in b.
bool is_subword_b(const Word& v, const Word& w, const Alphabet& b);
/// Plain subword (scattered subsequence) relation.
bool is_subword(const Word& v, const Word& w);

SubwordProfile subwords_upto(const Word& w, std::size_t n);

/// v ~n w: same subwords up to length n.
bool simon_equiv(const Word& v, const Word& w, std::size_t n);

/// 0-based positions of the pointwise-minimal embedding of x into y.
std::optional<std::vector<std::size_t>> leftmost_embedding(const Word& x,
                                                           const Word& y);

std::map<Symbol, std::size_t> letter_counts(const Word& w, const Alphabet& a);

/// All words over a of length <= n, shortest first, then lexicographic.
std::vector<Word> words_upto(const Alphabet& a, std::size_t n);

}  // namespace ptlsep
