#include "ptlsep/cfg.hpp"

#include <algorithm>
#include <sstream>

#include "ptlsep/error.hpp"
#include "relation.hpp"

namespace ptlsep {

using detail::Relation;

Cfg::Cfg(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

std::uint32_t Cfg::add_nonterminal(const std::string& name) {
  if (name.empty()) throw Error(ErrorKind::invalid_argument, "empty nonterminal name");
  if (alphabet_.contains(name)) {
    throw Error(ErrorKind::invalid_argument, "nonterminal '" + name + "' collides with a terminal");
  }
  auto [it, inserted] = by_name_.try_emplace(name, static_cast<std::uint32_t>(names_.size()));
  if (!inserted) throw Error(ErrorKind::invalid_argument, "duplicate nonterminal '" + name + "'");
  names_.push_back(name);
  return it->second;
}

std::uint32_t Cfg::add_fresh_nonterminal(const std::string& base) {
  std::string name = base;
  while (by_name_.count(name) || alphabet_.contains(name)) name += '\'';
  return add_nonterminal(name);
}

std::optional<std::uint32_t> Cfg::find_nonterminal(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void Cfg::set_start(std::uint32_t nt) {
  if (nt >= names_.size()) throw Error(ErrorKind::invalid_argument, "start symbol out of range");
  start_ = nt;
}

void Cfg::add_production(std::uint32_t lhs, std::vector<GSym> body) {
  if (lhs >= names_.size()) throw Error(ErrorKind::invalid_argument, "production lhs out of range");
  for (const auto& s : body) {
    bool ok = s.terminal() ? s.id < alphabet_.size() : s.id < names_.size();
    if (!ok) throw Error(ErrorKind::invalid_argument, "production body uses an undeclared symbol");
  }
  productions_.push_back(Production{lhs, std::move(body)});
}

void Cfg::add_production(const std::string& lhs, const std::vector<std::string>& body) {
  auto head = find_nonterminal(lhs);
  if (!head) throw Error(ErrorKind::invalid_argument, "unknown nonterminal '" + lhs + "'");
  std::vector<GSym> syms;
  for (const auto& tok : body) {
    if (auto nt = find_nonterminal(tok)) {
      syms.push_back(GSym::nt(*nt));
    } else if (auto t = alphabet_.index_of(tok)) {
      syms.push_back(GSym::t(static_cast<std::uint32_t>(*t)));
    } else {
      throw Error(ErrorKind::alphabet_mismatch, "unknown symbol '" + tok + "'");
    }
  }
  add_production(*head, std::move(syms));
}

Cfg Cfg::with_alphabet(const Alphabet& larger) const {
  if (!alphabet_.is_subset_of(larger)) {
    throw Error(ErrorKind::alphabet_mismatch, "padding alphabet must contain the original");
  }
  Cfg out(larger);
  for (const auto& n : names_) out.add_nonterminal(n);
  out.start_ = start_;
  for (const auto& p : productions_) {
    std::vector<GSym> body = p.body;
    for (auto& s : body) {
      if (s.terminal()) s.id = static_cast<std::uint32_t>(larger.require(alphabet_[s.id]));
    }
    out.productions_.push_back(Production{p.lhs, std::move(body)});
  }
  return out;
}

std::vector<char> productive_nonterminals(const Cfg& g) {
  std::vector<char> productive(g.num_nonterminals(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (productive[p.lhs]) continue;
      bool ok = std::all_of(p.body.begin(), p.body.end(),
                            [&](const GSym& s) { return s.terminal() || productive[s.id]; });
      if (ok) {
        productive[p.lhs] = 1;
        changed = true;
      }
    }
  }
  return productive;
}

Cfg reduce_cfg(const Cfg& g) {
  auto productive = productive_nonterminals(g);
  if (g.num_nonterminals() == 0 || !productive[g.start()]) {
    Cfg empty(g.alphabet());
    empty.set_start(empty.add_fresh_nonterminal("S"));
    return empty;
  }
  auto usable = [&](const Production& p) {
    return productive[p.lhs] &&
           std::all_of(p.body.begin(), p.body.end(),
                       [&](const GSym& s) { return s.terminal() || productive[s.id]; });
  };
  std::vector<std::vector<const Production*>> by_lhs(g.num_nonterminals());
  for (const auto& p : g.productions()) {
    if (usable(p)) by_lhs[p.lhs].push_back(&p);
  }
  std::vector<char> reachable(g.num_nonterminals(), 0);
  std::vector<std::uint32_t> stack{g.start()};
  reachable[g.start()] = 1;
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    for (const auto* p : by_lhs[n]) {
      for (const auto& s : p->body) {
        if (!s.terminal() && !reachable[s.id]) {
          reachable[s.id] = 1;
          stack.push_back(s.id);
        }
      }
    }
  }
  Cfg out(g.alphabet());
  std::vector<std::uint32_t> renum(g.num_nonterminals(), 0);
  for (std::uint32_t n = 0; n < g.num_nonterminals(); ++n) {
    if (reachable[n]) renum[n] = out.add_nonterminal(g.name(n));
  }
  out.set_start(renum[g.start()]);
  std::set<Production> seen;
  for (const auto& p : g.productions()) {
    if (!usable(p) || !reachable[p.lhs]) continue;
    Production q{renum[p.lhs], p.body};
    for (auto& s : q.body) {
      if (!s.terminal()) s.id = renum[s.id];
    }
    if (seen.insert(q).second) out.add_production(q.lhs, q.body);
  }
  return out;
}

bool is_empty_cfg(const Cfg& g) {
  if (g.num_nonterminals() == 0) return true;
  return !productive_nonterminals(g)[g.start()];
}

Cfg nfa_to_rlcfg(const Nfa& m) {
  Cfg g(m.alphabet());
  std::uint32_t start = g.add_fresh_nonterminal("S");
  g.set_start(start);
  std::vector<std::uint32_t> nt(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) nt[s] = g.add_fresh_nonterminal("q" + std::to_string(s));
  for (State s = 0; s < m.num_states(); ++s) {
    if (m.is_initial(s)) g.add_production(start, {GSym::nt(nt[s])});
    if (m.is_final(s)) g.add_production(nt[s], {});
    for (const auto& e : m.edges(s)) {
      if (e.label == kEpsilon) {
        g.add_production(nt[s], {GSym::nt(nt[e.to])});
      } else {
        g.add_production(nt[s], {GSym::t(static_cast<std::uint32_t>(e.label)), GSym::nt(nt[e.to])});
      }
    }
  }
  return g;
}

std::vector<LetterSet> producible_letters(const Cfg& g) {
  if (g.alphabet().size() > 32) throw Error(ErrorKind::guard, "alphabet too large for letter masks");
  auto productive = productive_nonterminals(g);
  std::vector<LetterSet> letters(g.num_nonterminals(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (!productive[p.lhs]) continue;
      LetterSet bits = 0;
      bool ok = true;
      for (const auto& s : p.body) {
        if (s.terminal()) {
          bits |= LetterSet{1} << s.id;
        } else if (productive[s.id]) {
          bits |= letters[s.id];
        } else {
          ok = false;
          break;
        }
      }
      if (ok && (letters[p.lhs] | bits) != letters[p.lhs]) {
        letters[p.lhs] |= bits;
        changed = true;
      }
    }
  }
  return letters;
}

namespace {

struct LabeledEdge {
  std::uint32_t from;
  std::uint32_t to;
  LetterSet label;
};

// Strongly connected components of the nonterminal graph (Kosaraju).
std::vector<std::uint32_t> components(std::size_t n, const std::vector<LabeledEdge>& edges) {
  std::vector<std::vector<std::uint32_t>> fwd(n), bwd(n);
  for (const auto& e : edges) {
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> order;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < fwd[v].size()) {
        auto w = fwd[v][i++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  constexpr auto kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> comp(n, kNone);
  std::uint32_t count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != kNone) continue;
    std::vector<std::uint32_t> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : bwd[v]) {
        if (comp[w] == kNone) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return comp;
}

}  // namespace

std::vector<LetterSet> pump_masks(const Cfg& g) {
  auto productive = productive_nonterminals(g);
  auto producible = producible_letters(g);
  std::vector<LabeledEdge> edges;
  for (const auto& p : g.productions()) {
    bool ok = productive[p.lhs] &&
              std::all_of(p.body.begin(), p.body.end(),
                          [&](const GSym& s) { return s.terminal() || productive[s.id]; });
    if (!ok) continue;
    for (std::size_t i = 0; i < p.body.size(); ++i) {
      if (p.body[i].terminal()) continue;
      LetterSet label = 0;
      for (std::size_t j = 0; j < p.body.size(); ++j) {
        if (j == i) continue;
        const auto& s = p.body[j];
        label |= s.terminal() ? (LetterSet{1} << s.id) : producible[s.id];
      }
      edges.push_back({p.lhs, p.body[i].id, label});
    }
  }
  auto comp = components(g.num_nonterminals(), edges);
  std::vector<LetterSet> by_comp(g.num_nonterminals(), 0);
  std::vector<char> cyclic(g.num_nonterminals(), 0);
  for (const auto& e : edges) {
    if (comp[e.from] == comp[e.to]) {
      by_comp[comp[e.from]] |= e.label;
      cyclic[comp[e.from]] = 1;
    }
  }
  std::vector<LetterSet> pump(g.num_nonterminals(), 0);
  for (std::uint32_t n = 0; n < g.num_nonterminals(); ++n) {
    if (cyclic[comp[n]]) pump[n] = by_comp[comp[n]];
  }
  return pump;
}

std::map<std::string, Alphabet> pump_alphabets(const Cfg& g) {
  auto masks = pump_masks(g);
  std::map<std::string, Alphabet> out;
  for (std::uint32_t n = 0; n < g.num_nonterminals(); ++n) out[g.name(n)] = g.alphabet().subset(masks[n]);
  return out;
}

namespace {

// Keeps only the ⊆-maximal elements; returns whether `bits` was added.
bool insert_maximal(std::vector<LetterSet>& antichain, LetterSet bits) {
  for (auto x : antichain) {
    if ((x | bits) == x) return false;
  }
  std::erase_if(antichain, [&](LetterSet x) { return (x | bits) == bits; });
  antichain.push_back(bits);
  return true;
}

}  // namespace

bool diagonal_cfg(const Cfg& input) {
  if (input.alphabet().size() > kMaxDiagonalAlphabet) {
    throw Error(ErrorKind::guard, "diagonal: alphabet larger than " +
                                      std::to_string(kMaxDiagonalAlphabet) + " letters");
  }
  Cfg g = reduce_cfg(input);
  if (is_empty_cfg(g)) return false;
  const LetterSet full = g.alphabet().mask();
  auto pump = pump_masks(g);
  std::vector<std::vector<LetterSet>> cov(g.num_nonterminals());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      std::vector<LetterSet> combos{pump[p.lhs]};
      for (const auto& s : p.body) {
        if (s.terminal()) continue;
        std::vector<LetterSet> next;
        for (auto a : combos) {
          for (auto b : cov[s.id]) insert_maximal(next, a | b);
        }
        combos = std::move(next);
        if (combos.empty()) break;
      }
      for (auto bits : combos) changed |= insert_maximal(cov[p.lhs], bits);
    }
  }
  return std::find(cov[g.start()].begin(), cov[g.start()].end(), full) != cov[g.start()].end();
}

std::set<Word> slice(const Cfg& g, std::size_t max_len) {
  if (max_len > kMaxSliceLength) {
    throw Error(ErrorKind::guard, "slice length " + std::to_string(max_len) + " exceeds " +
                                      std::to_string(kMaxSliceLength));
  }
  // Words are strings of letter indices.
  using Bag = std::vector<std::set<std::string>>;  // by length
  std::vector<Bag> yields(g.num_nonterminals(), Bag(max_len + 1));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      Bag cur(max_len + 1);
      cur[0].insert(std::string{});
      for (const auto& s : p.body) {
        Bag next(max_len + 1);
        for (std::size_t i = 0; i <= max_len; ++i) {
          for (const auto& left : cur[i]) {
            if (s.terminal()) {
              if (i + 1 <= max_len) next[i + 1].insert(left + static_cast<char>(s.id));
              continue;
            }
            for (std::size_t j = 0; i + j <= max_len; ++j) {
              for (const auto& right : yields[s.id][j]) next[i + j].insert(left + right);
            }
          }
        }
        cur = std::move(next);
      }
      for (std::size_t len = 0; len <= max_len; ++len) {
        for (auto& w : cur[len]) changed |= yields[p.lhs][len].insert(w).second;
      }
    }
  }
  std::set<Word> out;
  if (g.num_nonterminals() == 0) return out;
  for (const auto& bucket : yields[g.start()]) {
    for (const auto& w : bucket) {
      Word word;
      for (char c : w) word.push_back(g.alphabet()[static_cast<unsigned char>(c)]);
      out.insert(std::move(word));
    }
  }
  return out;
}

namespace {

// For each nonterminal, the pairs (p,q) of states of m such that some word
// derived from it labels a path p -> q.
std::vector<Relation> path_relations(const Cfg& g, const Nfa& m) {
  if (g.alphabet() != m.alphabet()) {
    throw Error(ErrorKind::alphabet_mismatch, "grammar and automaton alphabets differ");
  }
  const std::size_t n = m.num_states();
  Relation eps(n);
  std::vector<Relation> step(m.alphabet().size(), Relation(n));
  for (State s = 0; s < n; ++s) {
    for (const auto& e : m.edges(s)) {
      if (e.label == kEpsilon) {
        eps.set(s, e.to);
      } else {
        step[e.label].set(s, e.to);
      }
    }
  }
  eps = eps.star();
  std::vector<Relation> term;
  term.reserve(step.size());
  for (const auto& r : step) term.push_back(eps.then(r).then(eps));
  std::vector<Relation> rel(g.num_nonterminals(), Relation(n));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      Relation r = eps;
      bool alive = true;
      for (const auto& s : p.body) {
        const Relation& x = s.terminal() ? term[s.id] : rel[s.id];
        if (!x.any()) {
          alive = false;
          break;
        }
        r = r.then(x);
      }
      if (alive) changed |= rel[p.lhs].merge(r);
    }
  }
  return rel;
}

}  // namespace

bool intersects(const Cfg& g, const Nfa& m) {
  if (g.num_nonterminals() == 0) return false;
  auto rel = path_relations(g, m);
  const auto& r = rel[g.start()];
  for (State i : m.initial_states()) {
    for (State f : m.final_states()) {
      if (r.test(i, f)) return true;
    }
  }
  return false;
}

std::vector<State> reachable_states(const Cfg& g, const Nfa& m) {
  std::vector<State> out;
  if (g.num_nonterminals() == 0) return out;
  auto rel = path_relations(g, m);
  const auto& r = rel[g.start()];
  auto initial = m.initial_states();
  for (State q = 0; q < m.num_states(); ++q) {
    if (std::any_of(initial.begin(), initial.end(), [&](State i) { return r.test(i, q); })) {
      out.push_back(q);
    }
  }
  return out;
}

std::string to_text(const Cfg& g) {
  std::ostringstream os;
  if (g.num_nonterminals() == 0) return "";
  os << "start " << g.name(g.start()) << "\n";
  for (std::uint32_t n = 0; n < g.num_nonterminals(); ++n) {
    bool first = true;
    for (const auto& p : g.productions()) {
      if (p.lhs != n) continue;
      os << (first ? g.name(n) + " ->" : " |");
      for (const auto& s : p.body) os << ' ' << (s.terminal() ? g.alphabet()[s.id] : g.name(s.id));
      first = false;
    }
    if (!first) os << "\n";
  }
  return os.str();
}

}  // namespace ptlsep
