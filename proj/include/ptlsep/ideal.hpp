#pragma once

#include <string>
#include <vector>

#include "ptlsep/nfa.hpp"
#include "ptlsep/words.hpp"

namespace ptlsep {

/// One factor of an ideal: B* for a nonempty block B, or {b, ε}.
struct Atom {
  enum class Kind : std::uint8_t { block, opt };

  Kind kind = Kind::block;
  Alphabet letters;  // the block, or the single optional letter

  static Atom block(Alphabet b);
  static Atom opt(Symbol b);

  bool is_block() const noexcept { return kind == Kind::block; }
  const Symbol& letter() const { return letters[0]; }
  /// Description size: |B| for a block, 1 for an optional letter.
  std::size_t size() const noexcept { return letters.size(); }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// B0* {b1,ε} B1* ... as an arbitrary atom sequence; empty means {ε}.
struct Ideal {
  std::vector<Atom> atoms;

  std::size_t size() const noexcept;
  std::size_t num_blocks() const noexcept;
  Alphabet letters() const;

  friend bool operator==(const Ideal&, const Ideal&) = default;
  friend auto operator<=>(const Ideal&, const Ideal&) = default;
};

std::string to_string(const Ideal& ideal);

/// Merges adjacent comparable blocks and drops optional letters absorbed by
/// a neighbouring block. The language is unchanged.
Ideal canonicalize(const Ideal& ideal);
bool is_canonical(const Ideal& ideal);

/// Linear-size automaton over the ambient alphabet a.
Nfa ideal_to_nfa(const Ideal& ideal, const Alphabet& a);

/// The n-th canonical element r0^n b1 r1^n ..., where r_i lists the block's
/// letters once in alphabet order. Every word of the ideal embeds into some
/// canonical element.
Word canonical_element(const Ideal& ideal, std::size_t n);

}  // namespace ptlsep
