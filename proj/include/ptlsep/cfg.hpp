#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptlsep/nfa.hpp"
#include "ptlsep/words.hpp"

namespace ptlsep {

/// Grammar symbol: a terminal (index into the alphabet) or a nonterminal id.
struct GSym {
  enum class Kind : std::uint8_t { terminal, nonterminal };

  Kind kind;
  std::uint32_t id;

  static GSym t(std::uint32_t id) { return {Kind::terminal, id}; }
  static GSym nt(std::uint32_t id) { return {Kind::nonterminal, id}; }
  bool terminal() const noexcept { return kind == Kind::terminal; }

  friend bool operator==(const GSym&, const GSym&) = default;
  friend auto operator<=>(const GSym&, const GSym&) = default;
};

struct Production {
  std::uint32_t lhs;
  std::vector<GSym> body;

  friend bool operator==(const Production&, const Production&) = default;
  friend auto operator<=>(const Production&, const Production&) = default;
};

/// Context-free grammar over an alphabet. Nonterminals are named; names are
/// unique and disjoint from the terminal tokens.
class Cfg {
 public:
  explicit Cfg(Alphabet alphabet = {});

  /// Throws if the name is taken or collides with a terminal.
  std::uint32_t add_nonterminal(const std::string& name);
  /// Adds a nonterminal named after base, priming it until it is unique.
  std::uint32_t add_fresh_nonterminal(const std::string& base);
  std::optional<std::uint32_t> find_nonterminal(const std::string& name) const;
  void set_start(std::uint32_t nt);
  void add_production(std::uint32_t lhs, std::vector<GSym> body);
  /// Terminals given by symbol and nonterminals by name; unknown names are
  /// an error.
  void add_production(const std::string& lhs, const std::vector<std::string>& body);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_nonterminals() const noexcept { return names_.size(); }
  const std::string& name(std::uint32_t nt) const { return names_.at(nt); }
  std::uint32_t start() const noexcept { return start_; }
  const std::vector<Production>& productions() const noexcept { return productions_; }

  /// Copy with a larger alphabet (terminal ids remapped).
  Cfg with_alphabet(const Alphabet& larger) const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::uint32_t start_ = 0;
  std::vector<Production> productions_;
};

/// Nonterminals that derive some terminal word.
std::vector<char> productive_nonterminals(const Cfg& g);

/// Keeps productive and reachable nonterminals only. An empty language gives
/// the canonical empty grammar: a lone start symbol "S" without productions.
Cfg reduce_cfg(const Cfg& g);
bool is_empty_cfg(const Cfg& g);

/// Right-linear grammar with one nonterminal per state plus a start symbol.
Cfg nfa_to_rlcfg(const Nfa& m);

/// Letters occurring in some word derivable from each nonterminal.
std::vector<LetterSet> producible_letters(const Cfg& g);

/// For each useful nonterminal N, the letters a with N =>+ uNv and a in uv.
/// Keyed by nonterminal name; expects a reduced grammar.
std::map<std::string, Alphabet> pump_alphabets(const Cfg& g);
/// Same, indexed by nonterminal id as letter masks.
std::vector<LetterSet> pump_masks(const Cfg& g);

/// Diagonal property of L(g) via the pump-coverage fixpoint.
bool diagonal_cfg(const Cfg& g);

inline constexpr std::size_t kMaxSliceLength = 12;

/// {w ∈ L(g) : |w| <= max_len}; max_len is capped at kMaxSliceLength.
std::set<Word> slice(const Cfg& g, std::size_t max_len);

/// Whether L(g) ∩ L(m) ≠ ∅ (alphabets must match).
bool intersects(const Cfg& g, const Nfa& m);

/// States q of m such that some w ∈ L(g) leads from an initial state of m to
/// q. Used with deterministic m to collect the classes hit by a language.
std::vector<State> reachable_states(const Cfg& g, const Nfa& m);

std::string to_text(const Cfg& g);

}  // namespace ptlsep
