#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ptlsep/words.hpp"

namespace ptlsep {

using State = std::uint32_t;

/// Label of an epsilon transition; letter labels are indices into the
/// automaton's alphabet.
inline constexpr int kEpsilon = -1;

struct Edge {
  int label;
  State to;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Nondeterministic finite automaton with epsilon transitions.
class Nfa {
 public:
  explicit Nfa(Alphabet alphabet = {});

  State add_state();
  /// Adds k states and returns the first one.
  State add_states(std::size_t k);
  void add_transition(State from, int label, State to);
  /// Symbolic variant; the empty string denotes epsilon.
  void add_transition(State from, std::string_view symbol, State to);
  void add_epsilon(State from, State to) { add_transition(from, kEpsilon, to); }
  void set_initial(State s, bool value = true);
  void set_final(State s, bool value = true);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return edges_.size(); }
  std::size_t num_transitions() const noexcept;
  const std::vector<Edge>& edges(State s) const { return edges_.at(s); }
  bool is_initial(State s) const { return initial_.at(s) != 0; }
  bool is_final(State s) const { return final_.at(s) != 0; }
  std::vector<State> initial_states() const;
  std::vector<State> final_states() const;

  /// One initial state, no epsilon edges, at most one edge per letter.
  bool is_deterministic() const;

 private:
  void check_state(State s) const;

  Alphabet alphabet_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<char> initial_;
  std::vector<char> final_;
};

/// Epsilon closure of a set of states, returned sorted.
std::vector<State> epsilon_closure(const Nfa& m, std::vector<State> states);
/// Successors of a (closed) state set on a letter, epsilon-closed.
std::vector<State> post(const Nfa& m, const std::vector<State>& states, int letter);

bool accepts(const Nfa& m, const Word& w);
bool is_empty(const Nfa& m);
std::optional<Word> shortest_word(const Nfa& m);

/// Binary operations require equal alphabets; use pad_alphabet first.
Nfa intersect(const Nfa& x, const Nfa& y);
Nfa unite(const Nfa& x, const Nfa& y);
Nfa concat(const Nfa& x, const Nfa& y);
Nfa star(const Nfa& x);

/// Complete DFA for the same language (subset construction).
Nfa determinize(const Nfa& m);
/// Complement with respect to A* over the automaton's alphabet.
Nfa complement(const Nfa& m);

/// L(x) ⊆ L(y).
bool includes(const Nfa& x, const Nfa& y);
bool equivalent(const Nfa& x, const Nfa& y);

/// Keeps only states that are reachable and co-reachable.
Nfa trim(const Nfa& m);
/// Same language over a larger alphabet (new letters are dead).
Nfa pad_alphabet(const Nfa& m, const Alphabet& larger);
/// Throws Error{alphabet_mismatch} unless both share one alphabet.
void require_same_alphabet(const Nfa& x, const Nfa& y);

Nfa empty_nfa(const Alphabet& a);
Nfa universal_nfa(const Alphabet& a);
Nfa word_nfa(const Word& w, const Alphabet& a);
/// b* over ambient alphabet a.
Nfa star_of(const Alphabet& b, const Alphabet& a);

/// A* u1 A* u2 ... A* un A*.
Nfa piece_nfa(const Word& u, const Alphabet& a);
/// Words over b whose alphabet is exactly b; ambient alphabet defaults to b.
Nfa exact_alphabet_nfa(const Alphabet& b);
Nfa exact_alphabet_nfa(const Alphabet& b, const Alphabet& ambient);

/// Downward closure: every letter edge gets a parallel epsilon edge.
Nfa dc_nfa(const Nfa& m);
/// b-upward closure over alphabet A ∪ b: b-labelled self-loops everywhere.
Nfa uc_nfa(const Nfa& m, const Alphabet& b);

/// Maximum alphabet size accepted by the diagonal procedures.
inline constexpr std::size_t kMaxDiagonalAlphabet = 16;

/// Whether every (m,...,m) is dominated by the Parikh image of L(m).
bool diagonal_nfa(const Nfa& m);

/// {w ∈ L(m) : |w| <= max_len}.
std::set<Word> slice_nfa(const Nfa& m, std::size_t max_len);

std::string to_dot(const Nfa& m, std::string_view name = "nfa");

}  // namespace ptlsep
