#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ptlsep/nfa.hpp"
#include "ptlsep/words.hpp"

namespace ptlsep {

/// Boolean combination of piece languages. Conjunctions and disjunctions are
/// n-ary; an empty conjunction is true and an empty disjunction false.
class PtlFormula {
 public:
  enum class Op : std::uint8_t { piece, negation, conjunction, disjunction, truth, falsity };

  static PtlFormula piece(Word u);
  static PtlFormula negate(PtlFormula f);
  static PtlFormula all_of(std::vector<PtlFormula> fs);
  static PtlFormula any_of(std::vector<PtlFormula> fs);
  static PtlFormula truth();
  static PtlFormula falsity();

  Op op() const noexcept { return op_; }
  const Word& word() const noexcept { return word_; }
  const std::vector<PtlFormula>& args() const noexcept { return args_; }

  /// Longest piece word; the formula is a union of ~n classes for this n.
  std::size_t max_piece_length() const;
  Alphabet letters() const;

  friend bool operator==(const PtlFormula&, const PtlFormula&) = default;

 private:
  PtlFormula(Op op, Word word, std::vector<PtlFormula> args)
      : op_(op), word_(std::move(word)), args_(std::move(args)) {}

  Op op_;
  Word word_;
  std::vector<PtlFormula> args_;
};

std::string to_string(const PtlFormula& f);

bool eval_formula(const PtlFormula& f, const Word& w);

/// Complete deterministic automaton for the formula over alphabet a.
Nfa formula_to_nfa(const PtlFormula& f, const Alphabet& a);

/// Refuses alphabets/levels with more than this many words of length <= n.
inline constexpr std::size_t kMaxProfileCandidates = 100000;
inline constexpr std::size_t kMaxProfileStates = 200000;

/// Deterministic automaton whose state after reading w is the set of
/// subwords of w of length <= bound. States are stored by their maximal
/// elements; state 0 is {ε}.
struct ProfileDfa {
  Alphabet alphabet;
  std::size_t bound = 0;
  std::vector<std::vector<Word>> maximal;
  /// A shortest word reaching each state.
  std::vector<Word> representative;
  /// next[state][letter index]
  std::vector<std::vector<State>> next;

  std::size_t num_states() const noexcept { return maximal.size(); }
  State run(const Word& w) const;
  /// The full (downward closed) profile of a state.
  SubwordProfile profile(State s) const;
  /// The automaton with the given accepting states.
  Nfa to_nfa(const std::vector<State>& accepting) const;
};

ProfileDfa profile_automaton(const Alphabet& a, std::size_t n);

/// Shared memoized instance per (alphabet, n); safe to call concurrently.
std::shared_ptr<const ProfileDfa> cached_profile_automaton(const Alphabet& a, std::size_t n);

/// Formula for the ~n class of w over alphabet a.
PtlFormula class_formula(const Word& w, std::size_t n, const Alphabet& a);

struct Separator {
  PtlFormula formula;
  Nfa automaton;
};

/// The union of the ~n classes whose profiles are listed, as a disjunction
/// of class formulas and as the profile automaton with those states accepting.
Separator canonical_separator(const std::vector<State>& profiles, const ProfileDfa& p);

}  // namespace ptlsep
