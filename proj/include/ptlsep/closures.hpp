#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "ptlsep/cfg.hpp"
#include "ptlsep/ideal.hpp"
#include "ptlsep/lang.hpp"
#include "ptlsep/nfa.hpp"

namespace ptlsep {

/// Syntactic inclusion L(x) ⊆ L(y) of ideals by greedy left-to-right
/// matching of atoms.
bool ideal_includes(const Ideal& x, const Ideal& y);

/// All canonical ideals of a given description size over a.
std::vector<Ideal> canonical_ideals_of_size(const Alphabet& a, std::size_t size);

/// Enumerates canonical ideals by description size, keeping those accepted
/// by an inclusion oracle, until the union of the accepted ideals covers the
/// target. Budgeted and resumable: run() may be called again after it
/// returns false.
class IdealSearch {
 public:
  /// included(I): L(I) ⊆ target.  covered(D): target ⊆ L(D).
  IdealSearch(Alphabet a, std::function<bool(const Ideal&)> included,
              std::function<bool(const Nfa&)> covered);

  /// Performs at most `budget` oracle calls (unbounded when empty); returns
  /// whether the search has finished.
  bool run(std::optional<std::size_t> budget = std::nullopt);

  bool done() const noexcept { return done_; }
  std::size_t oracle_calls() const noexcept { return calls_; }
  std::size_t current_size() const noexcept { return size_; }
  /// ⊆-maximal accepted ideals so far; exact once done().
  std::vector<Ideal> maximal() const;
  Nfa union_nfa() const;

 private:
  void prepare_level();
  bool finish_level();

  Alphabet alphabet_;
  std::function<bool(const Ideal&)> included_;
  std::function<bool(const Nfa&)> covered_;
  std::set<Ideal> accepted_;
  std::vector<std::vector<Ideal>> accepted_by_size_;
  std::vector<Ideal> level_;
  std::size_t position_ = 0;
  std::size_t size_ = 0;
  bool level_ready_ = false;
  bool level_found_ = false;
  bool done_ = false;
  std::size_t calls_ = 0;
};

/// Decomposes a downward-closed regular language into its ⊆-maximal ideals.
/// Throws Error{not_downward_closed} otherwise.
std::vector<Ideal> ideal_decompose(const Nfa& m);

/// L(I) ⊆ ↓L, as the diagonal of the ideal probe applied to L.
bool ideal_in_dc(const LangRef& l, const Ideal& ideal);

/// ↓L(g) as an automaton (union of its ideals). Unbounded search.
Nfa dc_cfg(const Cfg& g);
/// Search object for budgeted closure computations.
IdealSearch dc_cfg_search(const Cfg& g);

/// ↓L for either representation.
Nfa downward_closure(const LangRef& l);

/// b1* b2* ... bn* over ambient alphabet a.
Nfa bounded_nfa(const std::vector<Symbol>& order, const Alphabet& a);

/// Throws Error{ill_formed_instance} unless the order letters are distinct
/// letters of L and L ⊆ b1*...bn*.
void check_bounded_instance(const LangRef& l, const std::vector<Symbol>& order);

/// Whether ↓L = b1*...bn*. Requires L ⊆ b1*...bn* with distinct letters;
/// otherwise Error{ill_formed_instance}.
bool sup_decide(const LangRef& l, const std::vector<Symbol>& order);

/// Diagonal property through ↓L and SUP instances ↓L ∩ b1*...bn* for every
/// ordering of the alphabet.
bool diagonal_via_sup(const LangRef& l);

}  // namespace ptlsep
