#pragma once

#include <set>
#include <variant>
#include <vector>

#include "ptlsep/cfg.hpp"
#include "ptlsep/nfa.hpp"
#include "ptlsep/transducer.hpp"

namespace ptlsep {

/// A language given either by a finite automaton or by a context-free
/// grammar. Every decision procedure dispatches on the representation.
class LangRef {
 public:
  LangRef(Nfa m) : lang_(std::move(m)) {}  // NOLINT(google-explicit-constructor)
  LangRef(Cfg g) : lang_(std::move(g)) {}  // NOLINT(google-explicit-constructor)

  bool is_regular() const noexcept { return std::holds_alternative<Nfa>(lang_); }
  const Nfa& nfa() const { return std::get<Nfa>(lang_); }
  const Cfg& cfg() const { return std::get<Cfg>(lang_); }
  const Alphabet& alphabet() const;
  const std::variant<Nfa, Cfg>& value() const noexcept { return lang_; }

 private:
  std::variant<Nfa, Cfg> lang_;
};

bool is_empty(const LangRef& l);
bool member(const LangRef& l, const Word& w);
LangRef pad(const LangRef& l, const Alphabet& larger);
/// T L, staying in the same representation.
LangRef apply(const LangRef& l, const Fst& t);
/// L ∩ L(r), via the restrict transducer for grammars.
LangRef restrict_to(const LangRef& l, const Nfa& r);
/// L ∩ L(r) ≠ ∅ without materializing the intersection.
bool meets(const LangRef& l, const Nfa& r);
/// States of r reachable from its initial states by words of L.
std::vector<State> reachable_states(const LangRef& l, const Nfa& r);
bool diagonal(const LangRef& l);
std::set<Word> slice(const LangRef& l, std::size_t max_len);

}  // namespace ptlsep
