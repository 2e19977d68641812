#include "ptlsep/ideal.hpp"

#include "ptlsep/error.hpp"

namespace ptlsep {

Atom Atom::block(Alphabet b) {
  if (b.empty()) throw Error(ErrorKind::invalid_argument, "ideal block must be nonempty");
  return Atom{Kind::block, std::move(b)};
}

Atom Atom::opt(Symbol b) { return Atom{Kind::opt, Alphabet{std::move(b)}}; }

std::size_t Ideal::size() const noexcept {
  std::size_t s = 0;
  for (const auto& a : atoms) s += a.size();
  return s;
}

std::size_t Ideal::num_blocks() const noexcept {
  std::size_t k = 0;
  for (const auto& a : atoms) k += a.is_block() ? 1 : 0;
  return k;
}

Alphabet Ideal::letters() const {
  Alphabet out;
  for (const auto& a : atoms) out = out.unite(a.letters);
  return out;
}

std::string to_string(const Ideal& ideal) {
  if (ideal.atoms.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < ideal.atoms.size(); ++i) {
    const auto& a = ideal.atoms[i];
    if (i > 0) out += ' ';
    if (a.is_block()) {
      out += '{';
      for (std::size_t j = 0; j < a.letters.size(); ++j) {
        if (j > 0) out += ',';
        out += a.letters[j];
      }
      out += "}*";
    } else {
      out += a.letter() + "?";
    }
  }
  return out;
}

namespace {

// One rewriting pass; returns whether anything changed.
bool simplify_once(std::vector<Atom>& atoms) {
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    Atom& x = atoms[i];
    Atom& y = atoms[i + 1];
    if (x.is_block() && y.is_block()) {
      if (x.letters.is_subset_of(y.letters)) {
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
      }
      if (y.letters.is_subset_of(x.letters)) {
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i + 1));
        return true;
      }
    } else if (x.is_block() && !y.is_block() && x.letters.contains(y.letter())) {
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i + 1));
      return true;
    } else if (!x.is_block() && y.is_block() && y.letters.contains(x.letter())) {
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
      return true;
    }
  }
  return false;
}

}  // namespace

Ideal canonicalize(const Ideal& ideal) {
  Ideal out = ideal;
  while (simplify_once(out.atoms)) {
  }
  return out;
}

bool is_canonical(const Ideal& ideal) {
  auto atoms = ideal.atoms;
  return !simplify_once(atoms);
}

Nfa ideal_to_nfa(const Ideal& ideal, const Alphabet& a) {
  Nfa out(a);
  State s = out.add_states(ideal.atoms.size() + 1);
  out.set_initial(s);
  out.set_final(s + static_cast<State>(ideal.atoms.size()));
  for (std::size_t i = 0; i < ideal.atoms.size(); ++i) {
    const auto& atom = ideal.atoms[i];
    State here = s + static_cast<State>(i);
    if (atom.is_block()) {
      for (const auto& letter : atom.letters) {
        out.add_transition(here, static_cast<int>(a.require(letter)), here);
      }
    } else {
      out.add_transition(here, static_cast<int>(a.require(atom.letter())), here + 1);
    }
    out.add_epsilon(here, here + 1);
  }
  return out;
}

Word canonical_element(const Ideal& ideal, std::size_t n) {
  Word w;
  for (const auto& atom : ideal.atoms) {
    if (atom.is_block()) {
      for (std::size_t k = 0; k < n; ++k) w.insert(w.end(), atom.letters.begin(), atom.letters.end());
    } else {
      w.push_back(atom.letter());
    }
  }
  return w;
}

}  // namespace ptlsep
