#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ptlsep/cfg.hpp"
#include "ptlsep/ideal.hpp"
#include "ptlsep/nfa.hpp"
#include "ptlsep/words.hpp"

namespace ptlsep {

struct FstEdge {
  int input;                // kEpsilon or a letter of the input alphabet
  std::vector<int> output;  // letters of the output alphabet
  State to;
};

/// Rational transducer: reads words over the input alphabet and writes words
/// over the output alphabet.
class Fst {
 public:
  Fst(Alphabet input, Alphabet output);

  State add_state();
  State add_states(std::size_t k);
  void add_transition(State from, int input, std::vector<int> output, State to);
  /// Symbolic variant; "" reads nothing.
  void add_transition(State from, std::string_view input, const Word& output, State to);
  void set_initial(State s, bool value = true);
  void set_final(State s, bool value = true);

  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& output_alphabet() const noexcept { return output_; }
  std::size_t num_states() const noexcept { return edges_.size(); }
  const std::vector<FstEdge>& edges(State s) const { return edges_.at(s); }
  bool is_initial(State s) const { return initial_.at(s) != 0; }
  bool is_final(State s) const { return final_.at(s) != 0; }
  std::vector<State> initial_states() const;
  std::vector<State> final_states() const;

  /// Every transition writes at most one letter.
  bool is_normalized() const;

 private:
  void check_state(State s) const;

  Alphabet input_;
  Alphabet output_;
  std::vector<std::vector<FstEdge>> edges_;
  std::vector<char> initial_;
  std::vector<char> final_;
};

/// Splits multi-letter outputs through fresh intermediate states.
Fst normalize_fst(const Fst& t);

/// T L(m) = {w : ∃v ∈ L(m), (v,w) ∈ T}.
Nfa apply_fst_nfa(const Nfa& m, const Fst& t);

/// Grammar for T L(g) by the triple construction; t must be normalized.
/// The result is reduced.
Cfg apply_fst_cfg(const Cfg& g, const Fst& t);

/// Identity on A plus spontaneous output of letters of b: the b-upward
/// closure. Output alphabet A ∪ b.
Fst pad_upward(const Alphabet& a, const Alphabet& b);
/// Erases letters outside b. Output alphabet b.
Fst project(const Alphabet& a, const Alphabet& b);
/// Identity restricted to L(r): realizes intersection with a regular language.
Fst restrict(const Nfa& r);
/// a1^k1 ... an^kn  ->  a1^2k1 ... an^2kn for the given letter order.
Fst doubling(const std::vector<Symbol>& order, const Alphabet& a);

/// Marker emitted by ideal_probe for the i-th block of an ideal.
Symbol probe_marker(std::size_t block_index);

/// Reads v and matches r0^j0 b1 r1^j1 ... as a subword of v (optional
/// letters are matched mandatorily), writing $0^j0 $1^j1 ... where $i counts
/// completed copies of the i-th block word.
Fst ideal_probe(const Ideal& ideal, const Alphabet& a);

}  // namespace ptlsep
