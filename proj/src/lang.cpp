#include "ptlsep/lang.hpp"

#include <algorithm>
#include <deque>

namespace ptlsep {

const Alphabet& LangRef::alphabet() const {
  return is_regular() ? nfa().alphabet() : cfg().alphabet();
}

bool is_empty(const LangRef& l) {
  return l.is_regular() ? is_empty(l.nfa()) : is_empty_cfg(l.cfg());
}

bool member(const LangRef& l, const Word& w) {
  for (const auto& s : w) {
    if (!l.alphabet().contains(s)) return false;
  }
  if (l.is_regular()) return accepts(l.nfa(), w);
  return intersects(l.cfg(), word_nfa(w, l.alphabet()));
}

LangRef pad(const LangRef& l, const Alphabet& larger) {
  if (l.alphabet() == larger) return l;
  if (l.is_regular()) return pad_alphabet(l.nfa(), larger);
  return l.cfg().with_alphabet(larger);
}

LangRef apply(const LangRef& l, const Fst& t) {
  if (l.is_regular()) return apply_fst_nfa(l.nfa(), t);
  return apply_fst_cfg(l.cfg(), normalize_fst(t));
}

LangRef restrict_to(const LangRef& l, const Nfa& r) {
  if (l.is_regular()) return trim(intersect(l.nfa(), r));
  return apply_fst_cfg(l.cfg(), restrict(r));
}

bool meets(const LangRef& l, const Nfa& r) {
  if (l.is_regular()) return !is_empty(intersect(l.nfa(), r));
  return intersects(l.cfg(), r);
}

std::vector<State> reachable_states(const LangRef& l, const Nfa& r) {
  if (!l.is_regular()) return reachable_states(l.cfg(), r);
  // Search over state pairs; r-states paired with a final state of the
  // language automaton are hit.
  const Nfa& m = l.nfa();
  require_same_alphabet(m, r);
  std::vector<State> out;
  const std::size_t nm = m.num_states();
  const std::size_t nr = r.num_states();
  std::vector<char> seen(nm * nr, 0);
  std::deque<std::pair<State, State>> queue;
  for (State p : m.initial_states()) {
    for (State q : r.initial_states()) {
      if (!seen[p * nr + q]) {
        seen[p * nr + q] = 1;
        queue.emplace_back(p, q);
      }
    }
  }
  std::vector<char> hit(nr, 0);
  auto push = [&](State p, State q) {
    if (!seen[p * nr + q]) {
      seen[p * nr + q] = 1;
      queue.emplace_back(p, q);
    }
  };
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    if (m.is_final(p)) hit[q] = 1;
    for (const auto& em : m.edges(p)) {
      if (em.label == kEpsilon) {
        push(em.to, q);
        continue;
      }
      for (const auto& er : r.edges(q)) {
        if (er.label == em.label) push(em.to, er.to);
      }
    }
    for (const auto& er : r.edges(q)) {
      if (er.label == kEpsilon) push(p, er.to);
    }
  }
  for (State q = 0; q < nr; ++q) {
    if (hit[q]) out.push_back(q);
  }
  return out;
}

bool diagonal(const LangRef& l) {
  return l.is_regular() ? diagonal_nfa(l.nfa()) : diagonal_cfg(l.cfg());
}

std::set<Word> slice(const LangRef& l, std::size_t max_len) {
  return l.is_regular() ? slice_nfa(l.nfa(), max_len) : slice(l.cfg(), max_len);
}

}  // namespace ptlsep
