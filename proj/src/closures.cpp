#include "ptlsep/closures.hpp"

#include <algorithm>
#include <functional>

#include "ptlsep/error.hpp"
#include "ptlsep/transducer.hpp"

namespace ptlsep {

bool ideal_includes(const Ideal& x, const Ideal& y) {
  // Greedy: each atom of x goes to the first remaining atom of y that
  // contains it. Blocks of y absorb any number of atoms.
  std::size_t j = 0;
  for (const auto& atom : x.atoms) {
    while (j < y.atoms.size()) {
      const auto& target = y.atoms[j];
      bool fits = atom.letters.is_subset_of(target.letters) && (target.is_block() || !atom.is_block());
      if (fits) break;
      ++j;
    }
    if (j == y.atoms.size()) return false;
    if (!y.atoms[j].is_block()) ++j;
  }
  return true;
}

std::vector<Ideal> canonical_ideals_of_size(const Alphabet& a, std::size_t size) {
  if (a.size() > kMaxDiagonalAlphabet) throw Error(ErrorKind::guard, "alphabet too large for ideal enumeration");
  std::vector<Atom> choices;
  for (const auto& letter : a) choices.push_back(Atom::opt(letter));
  for (LetterSet bits = 1; bits <= a.mask(); ++bits) choices.push_back(Atom::block(a.subset(bits)));
  std::sort(choices.begin(), choices.end());

  std::vector<Ideal> out;
  Ideal current;
  std::function<void(std::size_t)> extend = [&](std::size_t left) {
    if (left == 0) {
      out.push_back(current);
      return;
    }
    for (const auto& atom : choices) {
      if (atom.size() > left) continue;
      current.atoms.push_back(atom);
      // Canonical sequences stay canonical under truncation, so prune early.
      if (is_canonical(current)) extend(left - atom.size());
      current.atoms.pop_back();
    }
  };
  extend(size);
  return out;
}

IdealSearch::IdealSearch(Alphabet a, std::function<bool(const Ideal&)> included,
                         std::function<bool(const Nfa&)> covered)
    : alphabet_(std::move(a)), included_(std::move(included)), covered_(std::move(covered)) {}

void IdealSearch::prepare_level() {
  level_ = canonical_ideals_of_size(alphabet_, size_);
  position_ = 0;
  level_found_ = false;
  level_ready_ = true;
}

namespace {

// Canonical ideals strictly below `ideal` of smaller size; if any of them
// is not included, neither is `ideal`.
std::vector<Ideal> smaller_neighbours(const Ideal& ideal) {
  std::vector<Ideal> out;
  if (ideal.atoms.empty()) return out;
  Ideal prefix = ideal;
  prefix.atoms.pop_back();
  out.push_back(canonicalize(prefix));
  const Atom& last = ideal.atoms.back();
  if (last.is_block()) {
    for (const auto& letter : last.letters) {
      Ideal smaller = prefix;
      if (last.letters.size() == 1) {
        smaller.atoms.push_back(Atom::opt(letter));
      } else {
        std::vector<Symbol> rest;
        for (const auto& other : last.letters) {
          if (other != letter) rest.push_back(other);
        }
        smaller.atoms.push_back(Atom::block(Alphabet(rest)));
      }
      out.push_back(canonicalize(smaller));
    }
  }
  return out;
}

}  // namespace

bool IdealSearch::finish_level() {
  ++calls_;
  return covered_(union_nfa());
}

bool IdealSearch::run(std::optional<std::size_t> budget) {
  std::size_t spent = 0;
  auto exhausted = [&] { return budget && spent >= *budget; };
  while (!done_) {
    if (!level_ready_) prepare_level();
    while (position_ < level_.size()) {
      if (exhausted()) return false;
      const Ideal& ideal = level_[position_];
      bool possible = true;
      for (const auto& below : smaller_neighbours(ideal)) {
        if (below.size() < ideal.size() && !accepted_.count(below)) {
          possible = false;
          break;
        }
      }
      if (possible) {
        ++spent;
        ++calls_;
        if (included_(ideal)) {
          accepted_.insert(ideal);
          level_found_ = true;
        }
      }
      ++position_;
    }
    if (exhausted()) return false;
    ++spent;
    if (finish_level()) {
      done_ = true;
    } else {
      ++size_;
      level_ready_ = false;
    }
  }
  return true;
}

std::vector<Ideal> IdealSearch::maximal() const {
  std::vector<Ideal> out;
  for (const auto& x : accepted_) {
    bool dominated = false;
    for (const auto& y : accepted_) {
      if (x == y || !ideal_includes(x, y)) continue;
      // Equal languages keep the smallest description.
      if (!ideal_includes(y, x) || y < x) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(x);
  }
  return out;
}

Nfa IdealSearch::union_nfa() const {
  Nfa out = empty_nfa(alphabet_);
  for (const auto& ideal : maximal()) out = unite(out, ideal_to_nfa(ideal, alphabet_));
  return out;
}

std::vector<Ideal> ideal_decompose(const Nfa& m) {
  if (!equivalent(dc_nfa(m), m)) {
    throw Error(ErrorKind::not_downward_closed, "language is not downward closed");
  }
  const Alphabet& a = m.alphabet();
  IdealSearch search(
      a, [&](const Ideal& ideal) { return includes(ideal_to_nfa(ideal, a), m); },
      [&](const Nfa& d) { return includes(m, d); });
  search.run();
  return search.maximal();
}

bool ideal_in_dc(const LangRef& l, const Ideal& ideal) {
  if (!ideal.letters().is_subset_of(l.alphabet())) return false;
  if (ideal.atoms.empty()) return !is_empty(l);
  return diagonal(apply(l, ideal_probe(ideal, l.alphabet())));
}

IdealSearch dc_cfg_search(const Cfg& g) {
  Cfg reduced = reduce_cfg(g);
  const Alphabet& a = reduced.alphabet();
  return IdealSearch(
      a, [reduced](const Ideal& ideal) { return ideal_in_dc(reduced, ideal); },
      [reduced](const Nfa& d) { return !intersects(reduced, complement(d)); });
}

Nfa dc_cfg(const Cfg& g) {
  IdealSearch search = dc_cfg_search(g);
  search.run();
  return search.union_nfa();
}

Nfa downward_closure(const LangRef& l) {
  if (l.is_regular()) return trim(dc_nfa(l.nfa()));
  return dc_cfg(l.cfg());
}

Nfa bounded_nfa(const std::vector<Symbol>& order, const Alphabet& a) {
  Nfa out = word_nfa({}, a);
  for (const auto& b : order) out = concat(out, star_of(Alphabet{b}, a));
  return out;
}

void check_bounded_instance(const LangRef& l, const std::vector<Symbol>& order) {
  Alphabet letters(order);
  if (letters.size() != order.size()) {
    throw Error(ErrorKind::ill_formed_instance, "order letters must be distinct");
  }
  if (!letters.is_subset_of(l.alphabet())) {
    throw Error(ErrorKind::ill_formed_instance, "order uses letters outside the language alphabet");
  }
  Nfa bounded = bounded_nfa(order, l.alphabet());
  bool inside = l.is_regular() ? includes(l.nfa(), bounded) : !intersects(l.cfg(), complement(bounded));
  if (!inside) throw Error(ErrorKind::ill_formed_instance, "language is not contained in the bounded expression");
}

bool sup_decide(const LangRef& l, const std::vector<Symbol>& order) {
  check_bounded_instance(l, order);
  return diagonal(apply(l, project(l.alphabet(), Alphabet(order))));
}

bool diagonal_via_sup(const LangRef& l) {
  constexpr std::size_t kMaxLetters = 8;
  const Alphabet& a = l.alphabet();
  if (a.size() > kMaxLetters) throw Error(ErrorKind::guard, "too many letters to try every ordering");
  Nfa closure = downward_closure(l);
  std::vector<Symbol> order(a.begin(), a.end());
  do {
    Nfa part = trim(intersect(closure, bounded_nfa(order, a)));
    if (sup_decide(LangRef(part), order)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace ptlsep
