#include "ptlsep/ptl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "ptlsep/error.hpp"

namespace ptlsep {

PtlFormula PtlFormula::piece(Word u) { return PtlFormula(Op::piece, std::move(u), {}); }

PtlFormula PtlFormula::negate(PtlFormula f) {
  return PtlFormula(Op::negation, {}, {std::move(f)});
}

PtlFormula PtlFormula::all_of(std::vector<PtlFormula> fs) {
  return PtlFormula(Op::conjunction, {}, std::move(fs));
}

PtlFormula PtlFormula::any_of(std::vector<PtlFormula> fs) {
  return PtlFormula(Op::disjunction, {}, std::move(fs));
}

PtlFormula PtlFormula::truth() { return PtlFormula(Op::truth, {}, {}); }
PtlFormula PtlFormula::falsity() { return PtlFormula(Op::falsity, {}, {}); }

std::size_t PtlFormula::max_piece_length() const {
  std::size_t n = op_ == Op::piece ? word_.size() : 0;
  for (const auto& a : args_) n = std::max(n, a.max_piece_length());
  return n;
}

Alphabet PtlFormula::letters() const {
  Alphabet out = alph(word_);
  for (const auto& a : args_) out = out.unite(a.letters());
  return out;
}

std::string to_string(const PtlFormula& f) {
  using Op = PtlFormula::Op;
  switch (f.op()) {
    case Op::truth: return "true";
    case Op::falsity: return "false";
    case Op::piece: return "piece(" + format_word(f.word()) + ")";
    case Op::negation: return "not " + to_string(f.args()[0]);
    case Op::conjunction:
    case Op::disjunction: {
      if (f.args().empty()) return f.op() == Op::conjunction ? "true" : "false";
      std::string sep = f.op() == Op::conjunction ? " and " : " or ";
      std::string out = "(";
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i > 0) out += sep;
        out += to_string(f.args()[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

bool eval_formula(const PtlFormula& f, const Word& w) {
  using Op = PtlFormula::Op;
  switch (f.op()) {
    case Op::truth: return true;
    case Op::falsity: return false;
    case Op::piece: return is_subword(f.word(), w);
    case Op::negation: return !eval_formula(f.args()[0], w);
    case Op::conjunction:
      return std::all_of(f.args().begin(), f.args().end(),
                         [&](const PtlFormula& g) { return eval_formula(g, w); });
    case Op::disjunction:
      return std::any_of(f.args().begin(), f.args().end(),
                         [&](const PtlFormula& g) { return eval_formula(g, w); });
  }
  return false;
}

namespace {

// Complete DFAs are kept as transition tables for the boolean products.
struct Dfa {
  std::vector<std::vector<State>> next;
  std::vector<char> accepting;
};

Dfa constant_dfa(std::size_t letters, bool value) {
  return Dfa{{std::vector<State>(letters, 0)}, {static_cast<char>(value)}};
}

Dfa piece_dfa(const Word& u, const Alphabet& a) {
  Dfa d;
  for (std::size_t i = 0; i <= u.size(); ++i) {
    std::vector<State> row(a.size(), static_cast<State>(i));
    if (i < u.size()) row[a.require(u[i])] = static_cast<State>(i + 1);
    d.next.push_back(std::move(row));
    d.accepting.push_back(i == u.size());
  }
  return d;
}

Dfa product(const Dfa& x, const Dfa& y, bool conjunction, std::size_t letters) {
  Dfa out;
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> order;
  auto get = [&](State p, State q) {
    std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto [it, inserted] = index.try_emplace(key, static_cast<State>(order.size()));
    if (inserted) {
      order.emplace_back(p, q);
      bool acc = conjunction ? (x.accepting[p] && y.accepting[q]) : (x.accepting[p] || y.accepting[q]);
      out.accepting.push_back(acc);
      out.next.emplace_back(letters, 0);
    }
    return it->second;
  };
  get(0, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [p, q] = order[i];
    for (std::size_t c = 0; c < letters; ++c) {
      State t = get(x.next[p][c], y.next[q][c]);
      out.next[i][c] = t;
    }
  }
  return out;
}

Dfa build(const PtlFormula& f, const Alphabet& a) {
  using Op = PtlFormula::Op;
  switch (f.op()) {
    case Op::truth: return constant_dfa(a.size(), true);
    case Op::falsity: return constant_dfa(a.size(), false);
    case Op::piece: return piece_dfa(f.word(), a);
    case Op::negation: {
      Dfa d = build(f.args()[0], a);
      for (auto& acc : d.accepting) acc = !acc;
      return d;
    }
    case Op::conjunction:
    case Op::disjunction: {
      bool conj = f.op() == Op::conjunction;
      Dfa acc = constant_dfa(a.size(), conj);
      for (const auto& g : f.args()) acc = product(acc, build(g, a), conj, a.size());
      return acc;
    }
  }
  return constant_dfa(a.size(), false);
}

}  // namespace

Nfa formula_to_nfa(const PtlFormula& f, const Alphabet& a) {
  Dfa d = build(f, a);
  Nfa out(a);
  out.add_states(d.next.size());
  out.set_initial(0);
  for (State s = 0; s < d.next.size(); ++s) {
    out.set_final(s, d.accepting[s] != 0);
    for (std::size_t c = 0; c < a.size(); ++c) out.add_transition(s, static_cast<int>(c), d.next[s][c]);
  }
  return out;
}

State ProfileDfa::run(const Word& w) const {
  State s = 0;
  for (const auto& letter : w) s = next[s][alphabet.require(letter)];
  return s;
}

SubwordProfile ProfileDfa::profile(State s) const {
  SubwordProfile out;
  out.bound = bound;
  out.members.insert(Word{});
  for (const auto& m : maximal.at(s)) {
    auto sub = subwords_upto(m, m.size());
    out.members.insert(sub.members.begin(), sub.members.end());
  }
  return out;
}

Nfa ProfileDfa::to_nfa(const std::vector<State>& accepting) const {
  Nfa out(alphabet);
  out.add_states(num_states());
  out.set_initial(0);
  for (State s : accepting) out.set_final(s);
  for (State s = 0; s < num_states(); ++s) {
    for (std::size_t c = 0; c < alphabet.size(); ++c) {
      out.add_transition(s, static_cast<int>(c), next[s][c]);
    }
  }
  return out;
}

ProfileDfa profile_automaton(const Alphabet& a, std::size_t n) {
  const std::size_t k = a.size();
  // Count candidates before materializing them.
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t len = 0; len <= n; ++len) {
    total += layer;
    if (total > kMaxProfileCandidates) {
      throw Error(ErrorKind::guard, "profile automaton for " + std::to_string(k) +
                                        " letters at level " + std::to_string(n) +
                                        " needs more than " +
                                        std::to_string(kMaxProfileCandidates) +
                                        " subword candidates");
    }
    layer *= k;
    if (layer == 0) break;
  }
  auto words = words_upto(a, n);
  total = words.size();
  std::map<Word, std::size_t> id_of;
  for (std::size_t i = 0; i < total; ++i) id_of.emplace(words[i], i);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  // extend[id * k + c] = id of word·c, if short enough.
  std::vector<std::size_t> extend(total * k, kNone);
  for (std::size_t i = 0; i < total; ++i) {
    if (words[i].size() >= n) continue;
    for (std::size_t c = 0; c < k; ++c) {
      Word ext = words[i];
      ext.push_back(a[c]);
      extend[i * k + c] = id_of.at(ext);
    }
  }
  const std::size_t width = (total + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  auto has = [](const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; };

  ProfileDfa p;
  p.alphabet = a;
  p.bound = n;
  std::map<Bits, State> index;
  std::vector<Bits> sets;
  auto get = [&](Bits bits, const Word& rep) {
    auto it = index.find(bits);
    if (it != index.end()) return it->second;
    if (sets.size() >= kMaxProfileStates) {
      throw Error(ErrorKind::guard, "profile automaton exceeded " +
                                        std::to_string(kMaxProfileStates) + " states");
    }
    auto s = static_cast<State>(sets.size());
    index.emplace(bits, s);
    sets.push_back(std::move(bits));
    p.representative.push_back(rep);
    p.next.emplace_back(k, 0);
    return s;
  };
  Bits start(width, 0);
  start[0] = 1;  // ε has id 0
  get(start, Word{});
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t c = 0; c < k; ++c) {
      Bits bits = sets[s];
      for (std::size_t i = 0; i < total; ++i) {
        if (has(sets[s], i) && extend[i * k + c] != kNone) {
          std::size_t j = extend[i * k + c];
          bits[j / 64] |= std::uint64_t{1} << (j % 64);
        }
      }
      Word rep = p.representative[s];
      rep.push_back(a[c]);
      State t = get(std::move(bits), rep);
      p.next[s][c] = t;
    }
  }
  // Maximal elements: no one-letter insertion stays inside the profile.
  for (const auto& bits : sets) {
    std::vector<Word> maximal;
    for (std::size_t i = 1; i < total; ++i) {
      if (!has(bits, i)) continue;
      const Word& u = words[i];
      bool is_max = true;
      if (u.size() < n) {
        for (std::size_t pos = 0; pos <= u.size() && is_max; ++pos) {
          for (std::size_t c = 0; c < k && is_max; ++c) {
            Word v = u;
            v.insert(v.begin() + static_cast<std::ptrdiff_t>(pos), a[c]);
            if (has(bits, id_of.at(v))) is_max = false;
          }
        }
      }
      if (is_max) maximal.push_back(u);
    }
    std::sort(maximal.begin(), maximal.end());
    p.maximal.push_back(std::move(maximal));
  }
  return p;
}

std::shared_ptr<const ProfileDfa> cached_profile_automaton(const Alphabet& a, std::size_t n) {
  static std::shared_mutex mutex;
  static std::map<std::pair<Alphabet, std::size_t>, std::shared_ptr<const ProfileDfa>> cache;
  auto key = std::make_pair(a, n);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const ProfileDfa>(profile_automaton(a, n));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(built));
  return it->second;
}

PtlFormula class_formula(const Word& w, std::size_t n, const Alphabet& a) {
  std::vector<PtlFormula> literals;
  for (const auto& v : words_upto(a, n)) {
    if (v.empty()) continue;
    if (is_subword(v, w)) {
      literals.push_back(PtlFormula::piece(v));
    } else {
      literals.push_back(PtlFormula::negate(PtlFormula::piece(v)));
    }
  }
  if (literals.empty()) return PtlFormula::truth();
  if (literals.size() == 1) return literals.front();
  return PtlFormula::all_of(std::move(literals));
}

Separator canonical_separator(const std::vector<State>& profiles, const ProfileDfa& p) {
  std::vector<State> states = profiles;
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  for (State s : states) {
    if (s >= p.num_states()) throw Error(ErrorKind::invalid_argument, "profile state out of range");
  }
  PtlFormula formula = PtlFormula::falsity();
  if (states.size() == p.num_states()) {
    formula = PtlFormula::truth();
  } else if (states.size() == 1) {
    formula = class_formula(p.representative[states[0]], p.bound, p.alphabet);
  } else if (!states.empty()) {
    std::vector<PtlFormula> classes;
    for (State s : states) classes.push_back(class_formula(p.representative[s], p.bound, p.alphabet));
    formula = PtlFormula::any_of(std::move(classes));
  }
  return Separator{std::move(formula), p.to_nfa(states)};
}

}  // namespace ptlsep
