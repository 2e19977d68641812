#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ptlsep/lang.hpp"
#include "ptlsep/nfa.hpp"
#include "ptlsep/words.hpp"

namespace ptlsep {

/// Factorization pattern (u0..up, B1..Bp): blocks[i] sits between u[i] and
/// u[i+1].
struct Pattern {
  std::vector<Word> u;
  std::vector<Alphabet> blocks;

  std::size_t p() const noexcept { return blocks.size(); }
  /// Σ|u_i| + p.
  std::size_t size() const noexcept;
  Alphabet letters() const;
  /// Shape check: |u| = p + 1 and every block nonempty.
  void validate() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

std::string to_string(const Pattern& pattern);

/// Boundary letters of u_i are not absorbable into adjacent blocks, and the
/// blocks around an empty inner u_i are ⊆-incomparable. First/last letter
/// conditions are vacuous for empty words.
bool is_proper(const Pattern& pattern);

/// Rewrites to a proper pattern P' with L(P,n) ⊆ L(P',n) for every n:
/// boundary letters are absorbed into the adjacent block and comparable
/// blocks meeting at an empty word are merged into the larger one.
Pattern normalize_proper(const Pattern& pattern);

/// u0 (B1^⊛)^n u1 ... (Bp^⊛)^n up over ambient alphabet a.
Nfa pattern_lang_nfa(const Pattern& pattern, std::size_t n, const Alphabet& a);

/// Marker symbols $1..$p used by the containment pipeline.
std::vector<Symbol> pattern_markers(std::size_t p);

/// Candidate count above which pattern enumeration throws Error{guard}.
inline constexpr std::size_t kMaxPatternCandidates = 2000000;

/// All proper patterns over a of the given size: fewer blocks first, then
/// lexicographic.

std::vector<Pattern> proper_patterns_of_size(const Alphabet& a, std::size_t size);

/// Restartable stream of every proper pattern over an alphabet, ordered by
/// size; the cursor (size, index) identifies the next pattern.
class PatternEnumerator {
 public:
  struct Cursor {
    std::size_t size = 0;
    std::size_t index = 0;
  };

  explicit PatternEnumerator(Alphabet a);
  PatternEnumerator(Alphabet a, Cursor start);

  Pattern next();
  Cursor cursor() const noexcept { return cursor_; }

 private:
  void load(std::size_t size);

  Alphabet alphabet_;
  Cursor cursor_;
  std::size_t loaded_size_ = static_cast<std::size_t>(-1);
  std::vector<Pattern> batch_;
};

/// Whether L meets L(P,n) for every n >= 1, decided by the $-marker pipeline
/// followed by the diagonal problem.
bool contains_pattern(const LangRef& l, const Pattern& pattern);

}  // namespace ptlsep
