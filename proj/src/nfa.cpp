#include "ptlsep/nfa.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ptlsep/error.hpp"

namespace ptlsep {

namespace {

// Subset construction blows up exponentially in the worst case.
constexpr std::size_t kMaxDeterminizedStates = 500000;

std::uint64_t pair_key(State a, State b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

Nfa::Nfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

State Nfa::add_state() { return add_states(1); }

State Nfa::add_states(std::size_t k) {
  auto first = static_cast<State>(edges_.size());
  edges_.resize(edges_.size() + k);
  initial_.resize(edges_.size(), 0);
  final_.resize(edges_.size(), 0);
  return first;
}

void Nfa::check_state(State s) const {
  if (s >= edges_.size()) {
    throw Error(ErrorKind::invalid_argument, "state " + std::to_string(s) + " out of range");
  }
}

void Nfa::add_transition(State from, int label, State to) {
  check_state(from);
  check_state(to);
  if (label != kEpsilon && (label < 0 || static_cast<std::size_t>(label) >= alphabet_.size())) {
    throw Error(ErrorKind::alphabet_mismatch, "transition label out of range");
  }
  edges_[from].push_back(Edge{label, to});
}

void Nfa::add_transition(State from, std::string_view symbol, State to) {
  if (symbol.empty()) {
    add_transition(from, kEpsilon, to);
  } else {
    add_transition(from, static_cast<int>(alphabet_.require(symbol)), to);
  }
}

void Nfa::set_initial(State s, bool value) {
  check_state(s);
  initial_[s] = value ? 1 : 0;
}

void Nfa::set_final(State s, bool value) {
  check_state(s);
  final_[s] = value ? 1 : 0;
}

std::size_t Nfa::num_transitions() const noexcept {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

std::vector<State> Nfa::initial_states() const {
  std::vector<State> out;
  for (State s = 0; s < num_states(); ++s) {
    if (initial_[s]) out.push_back(s);
  }
  return out;
}

std::vector<State> Nfa::final_states() const {
  std::vector<State> out;
  for (State s = 0; s < num_states(); ++s) {
    if (final_[s]) out.push_back(s);
  }
  return out;
}

bool Nfa::is_deterministic() const {
  if (initial_states().size() != 1) return false;
  for (const auto& out : edges_) {
    std::vector<int> labels;
    for (const auto& e : out) {
      if (e.label == kEpsilon) return false;
      labels.push_back(e.label);
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  }
  return true;
}

std::vector<State> epsilon_closure(const Nfa& m, std::vector<State> states) {
  std::vector<char> seen(m.num_states(), 0);
  std::vector<State> stack;
  for (State s : states) {
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  }
  std::vector<State> out;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (const auto& e : m.edges(s)) {
      if (e.label == kEpsilon && !seen[e.to]) {
        seen[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<State> post(const Nfa& m, const std::vector<State>& states, int letter) {
  std::vector<State> next;
  for (State s : states) {
    for (const auto& e : m.edges(s)) {
      if (e.label == letter) next.push_back(e.to);
    }
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return epsilon_closure(m, std::move(next));
}

bool accepts(const Nfa& m, const Word& w) {
  auto current = epsilon_closure(m, m.initial_states());
  for (const auto& symbol : w) {
    auto letter = m.alphabet().index_of(symbol);
    if (!letter) return false;
    current = post(m, current, static_cast<int>(*letter));
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(), [&](State s) { return m.is_final(s); });
}

std::optional<Word> shortest_word(const Nfa& m) {
  // 0-1 BFS: epsilon edges cost nothing.
  const std::size_t n = m.num_states();
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kInf);
  std::vector<std::pair<State, int>> parent(n, {0, kEpsilon});
  std::deque<State> queue;
  for (State s : m.initial_states()) {
    dist[s] = 0;
    parent[s] = {s, -2};
    queue.push_back(s);
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (const auto& e : m.edges(s)) {
      std::size_t d = dist[s] + (e.label == kEpsilon ? 0 : 1);
      if (d < dist[e.to]) {
        dist[e.to] = d;
        parent[e.to] = {s, e.label};
        if (e.label == kEpsilon) {
          queue.push_front(e.to);
        } else {
          queue.push_back(e.to);
        }
      }
    }
  }
  std::optional<State> best;
  for (State s = 0; s < n; ++s) {
    if (m.is_final(s) && dist[s] != kInf && (!best || dist[s] < dist[*best])) best = s;
  }
  if (!best) return std::nullopt;
  Word w;
  State s = *best;
  while (parent[s].second != -2) {
    if (parent[s].second != kEpsilon) w.push_back(m.alphabet()[parent[s].second]);
    s = parent[s].first;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

bool is_empty(const Nfa& m) {
  std::vector<char> seen(m.num_states(), 0);
  std::vector<State> stack = m.initial_states();
  for (State s : stack) seen[s] = 1;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    if (m.is_final(s)) return false;
    for (const auto& e : m.edges(s)) {
      if (!seen[e.to]) {
        seen[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }
  return true;
}

void require_same_alphabet(const Nfa& x, const Nfa& y) {
  if (x.alphabet() != y.alphabet()) {
    throw Error(ErrorKind::alphabet_mismatch, "operands have different alphabets");
  }
}

Nfa intersect(const Nfa& x, const Nfa& y) {
  require_same_alphabet(x, y);
  Nfa out(x.alphabet());
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> work;
  auto get = [&](State p, State q) {
    auto [it, inserted] = index.try_emplace(pair_key(p, q), 0);
    if (inserted) {
      it->second = out.add_state();
      out.set_final(it->second, x.is_final(p) && y.is_final(q));
      work.emplace_back(p, q);
    }
    return it->second;
  };
  for (State p : x.initial_states()) {
    for (State q : y.initial_states()) out.set_initial(get(p, q));
  }
  while (!work.empty()) {
    auto [p, q] = work.back();
    work.pop_back();
    State from = index.at(pair_key(p, q));
    for (const auto& ex : x.edges(p)) {
      if (ex.label == kEpsilon) {
        out.add_epsilon(from, get(ex.to, q));
        continue;
      }
      for (const auto& ey : y.edges(q)) {
        if (ey.label == ex.label) out.add_transition(from, ex.label, get(ex.to, ey.to));
      }
    }
    for (const auto& ey : y.edges(q)) {
      if (ey.label == kEpsilon) out.add_epsilon(from, get(p, ey.to));
    }
  }
  return out;
}

namespace {

// Copies m into out, returning the offset of its states.
State embed(Nfa& out, const Nfa& m) {
  State base = out.add_states(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) {
    for (const auto& e : m.edges(s)) out.add_transition(base + s, e.label, base + e.to);
  }
  return base;
}

}  // namespace

Nfa unite(const Nfa& x, const Nfa& y) {
  require_same_alphabet(x, y);
  Nfa out(x.alphabet());
  for (const Nfa* m : {&x, &y}) {
    State base = embed(out, *m);
    for (State s = 0; s < m->num_states(); ++s) {
      out.set_initial(base + s, m->is_initial(s));
      out.set_final(base + s, m->is_final(s));
    }
  }
  return out;
}

Nfa concat(const Nfa& x, const Nfa& y) {
  require_same_alphabet(x, y);
  Nfa out(x.alphabet());
  State bx = embed(out, x);
  State by = embed(out, y);
  for (State s : x.initial_states()) out.set_initial(bx + s);
  for (State s : y.final_states()) out.set_final(by + s);
  for (State f : x.final_states()) {
    for (State i : y.initial_states()) out.add_epsilon(bx + f, by + i);
  }
  return out;
}

Nfa star(const Nfa& x) {
  Nfa out(x.alphabet());
  State hub = out.add_state();
  out.set_initial(hub);
  out.set_final(hub);
  State base = embed(out, x);
  for (State i : x.initial_states()) out.add_epsilon(hub, base + i);
  for (State f : x.final_states()) out.add_epsilon(base + f, hub);
  return out;
}

Nfa determinize(const Nfa& m) {
  Nfa out(m.alphabet());
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> work;
  auto get = [&](std::vector<State> set) {
    auto it = index.find(set);
    if (it != index.end()) return it->second;
    if (index.size() >= kMaxDeterminizedStates) {
      throw Error(ErrorKind::guard, "subset construction exceeded " +
                                        std::to_string(kMaxDeterminizedStates) + " states");
    }
    State s = out.add_state();
    out.set_final(s, std::any_of(set.begin(), set.end(), [&](State q) { return m.is_final(q); }));
    index.emplace(set, s);
    work.push_back(std::move(set));
    return s;
  };
  out.set_initial(get(epsilon_closure(m, m.initial_states())));
  while (!work.empty()) {
    auto set = std::move(work.back());
    work.pop_back();
    State from = index.at(set);
    for (std::size_t a = 0; a < m.alphabet().size(); ++a) {
      State to = get(post(m, set, static_cast<int>(a)));
      out.add_transition(from, static_cast<int>(a), to);
    }
  }
  return out;
}

Nfa complement(const Nfa& m) {
  Nfa d = determinize(m);
  for (State s = 0; s < d.num_states(); ++s) d.set_final(s, !d.is_final(s));
  return d;
}

bool includes(const Nfa& x, const Nfa& y) {
  require_same_alphabet(x, y);
  return is_empty(intersect(x, complement(y)));
}

bool equivalent(const Nfa& x, const Nfa& y) { return includes(x, y) && includes(y, x); }

Nfa trim(const Nfa& m) {
  const std::size_t n = m.num_states();
  std::vector<char> fwd(n, 0);
  std::vector<char> bwd(n, 0);
  std::vector<std::vector<State>> rev(n);
  for (State s = 0; s < n; ++s) {
    for (const auto& e : m.edges(s)) rev[e.to].push_back(s);
  }
  std::vector<State> stack = m.initial_states();
  for (State s : stack) fwd[s] = 1;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (const auto& e : m.edges(s)) {
      if (!fwd[e.to]) {
        fwd[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }
  stack = m.final_states();
  for (State s : stack) bwd[s] = 1;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (State p : rev[s]) {
      if (!bwd[p]) {
        bwd[p] = 1;
        stack.push_back(p);
      }
    }
  }
  Nfa out(m.alphabet());
  std::vector<State> renum(n, 0);
  for (State s = 0; s < n; ++s) {
    if (fwd[s] && bwd[s]) {
      renum[s] = out.add_state();
      out.set_initial(renum[s], m.is_initial(s));
      out.set_final(renum[s], m.is_final(s));
    }
  }
  for (State s = 0; s < n; ++s) {
    if (!(fwd[s] && bwd[s])) continue;
    for (const auto& e : m.edges(s)) {
      if (fwd[e.to] && bwd[e.to]) out.add_transition(renum[s], e.label, renum[e.to]);
    }
  }
  return out;
}

Nfa pad_alphabet(const Nfa& m, const Alphabet& larger) {
  if (!m.alphabet().is_subset_of(larger)) {
    throw Error(ErrorKind::alphabet_mismatch, "padding alphabet must contain the original");
  }
  Nfa out(larger);
  out.add_states(m.num_states());
  for (State s = 0; s < m.num_states(); ++s) {
    out.set_initial(s, m.is_initial(s));
    out.set_final(s, m.is_final(s));
    for (const auto& e : m.edges(s)) {
      int label = e.label == kEpsilon
                      ? kEpsilon
                      : static_cast<int>(larger.require(m.alphabet()[e.label]));
      out.add_transition(s, label, e.to);
    }
  }
  return out;
}

Nfa empty_nfa(const Alphabet& a) {
  Nfa out(a);
  out.set_initial(out.add_state());
  return out;
}

Nfa universal_nfa(const Alphabet& a) { return star_of(a, a); }

Nfa word_nfa(const Word& w, const Alphabet& a) {
  Nfa out(a);
  State s = out.add_states(w.size() + 1);
  out.set_initial(s);
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.add_transition(s + i, static_cast<int>(a.require(w[i])), s + i + 1);
  }
  out.set_final(s + static_cast<State>(w.size()));
  return out;
}

Nfa star_of(const Alphabet& b, const Alphabet& a) {
  Nfa out(a);
  State s = out.add_state();
  out.set_initial(s);
  out.set_final(s);
  for (const auto& letter : b) out.add_transition(s, static_cast<int>(a.require(letter)), s);
  return out;
}

Nfa piece_nfa(const Word& u, const Alphabet& a) {
  Nfa out(a);
  State s = out.add_states(u.size() + 1);
  out.set_initial(s);
  out.set_final(s + static_cast<State>(u.size()));
  for (std::size_t i = 0; i <= u.size(); ++i) {
    for (std::size_t x = 0; x < a.size(); ++x) out.add_transition(s + i, static_cast<int>(x), s + i);
    if (i < u.size()) out.add_transition(s + i, static_cast<int>(a.require(u[i])), s + i + 1);
  }
  return out;
}

Nfa exact_alphabet_nfa(const Alphabet& b) { return exact_alphabet_nfa(b, b); }

Nfa exact_alphabet_nfa(const Alphabet& b, const Alphabet& ambient) {
  if (b.empty()) throw Error(ErrorKind::invalid_argument, "exact-alphabet block must be nonempty");
  if (b.size() > kMaxDiagonalAlphabet) throw Error(ErrorKind::guard, "block alphabet too large");
  std::vector<int> labels;
  for (const auto& letter : b) labels.push_back(static_cast<int>(ambient.require(letter)));
  const std::size_t subsets = std::size_t{1} << b.size();
  Nfa out(ambient);
  State base = out.add_states(subsets);
  out.set_initial(base);
  out.set_final(base + static_cast<State>(subsets - 1));
  for (std::size_t seen = 0; seen < subsets; ++seen) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out.add_transition(base + static_cast<State>(seen), labels[i],
                         base + static_cast<State>(seen | (std::size_t{1} << i)));
    }
  }
  return out;
}

Nfa dc_nfa(const Nfa& m) {
  Nfa out = m;
  for (State s = 0; s < m.num_states(); ++s) {
    for (const auto& e : m.edges(s)) {
      if (e.label != kEpsilon) out.add_epsilon(s, e.to);
    }
  }
  return out;
}

Nfa uc_nfa(const Nfa& m, const Alphabet& b) {
  Alphabet all = m.alphabet().unite(b);
  Nfa out = pad_alphabet(m, all);
  for (State s = 0; s < out.num_states(); ++s) {
    for (const auto& letter : b) out.add_transition(s, static_cast<int>(all.require(letter)), s);
  }
  return out;
}

namespace {

// Tarjan's algorithm, iterative. Returns component ids in reverse topological
// order (a component's successors get smaller ids).
std::vector<std::size_t> scc_ids(const Nfa& m, std::size_t& count) {
  const std::size_t n = m.num_states();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<char> on_stack(n, 0);
  std::vector<State> stack;
  std::size_t next_index = 0;
  count = 0;
  struct Frame {
    State s;
    std::size_t edge;
  };
  for (State root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = m.edges(f.s);
      if (f.edge < out.size()) {
        State t = out[f.edge++].to;
        if (index[t] == kUnvisited) {
          index[t] = low[t] = next_index++;
          stack.push_back(t);
          on_stack[t] = 1;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.s] = std::min(low[f.s], index[t]);
        }
        continue;
      }
      State s = f.s;
      call.pop_back();
      if (!call.empty()) low[call.back().s] = std::min(low[call.back().s], low[s]);
      if (low[s] == index[s]) {
        State t;
        do {
          t = stack.back();
          stack.pop_back();
          on_stack[t] = 0;
          comp[t] = count;
        } while (t != s);
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace

bool diagonal_nfa(const Nfa& input) {
  if (input.alphabet().size() > kMaxDiagonalAlphabet) {
    throw Error(ErrorKind::guard, "diagonal: alphabet larger than " +
                                      std::to_string(kMaxDiagonalAlphabet) + " letters");
  }
  Nfa m = trim(input);
  if (m.num_states() == 0) return false;
  const LetterSet full = m.alphabet().mask();
  std::size_t count = 0;
  auto comp = scc_ids(m, count);
  std::vector<LetterSet> letters(count, 0);
  std::vector<std::vector<std::size_t>> succ(count);
  for (State s = 0; s < m.num_states(); ++s) {
    for (const auto& e : m.edges(s)) {
      if (comp[s] == comp[e.to]) {
        if (e.label != kEpsilon) letters[comp[s]] |= LetterSet{1} << e.label;
      } else {
        succ[comp[s]].push_back(comp[e.to]);
      }
    }
  }
  std::vector<std::set<LetterSet>> reach(count);
  std::vector<char> has_final(count, 0);
  for (State s = 0; s < m.num_states(); ++s) {
    if (m.is_initial(s)) reach[comp[s]].insert(letters[comp[s]]);
    if (m.is_final(s)) has_final[comp[s]] = 1;
  }
  // Highest id first is topological order.
  for (std::size_t c = count; c-- > 0;) {
    for (std::size_t d : succ[c]) {
      for (LetterSet bits : reach[c]) reach[d].insert(bits | letters[d]);
    }
    if (has_final[c] && reach[c].count(full)) return true;
  }
  return false;
}

std::set<Word> slice_nfa(const Nfa& m, std::size_t max_len) {
  std::set<Word> out;
  Word current;
  std::function<void(const std::vector<State>&)> visit = [&](const std::vector<State>& states) {
    if (std::any_of(states.begin(), states.end(), [&](State s) { return m.is_final(s); })) {
      out.insert(current);
    }
    if (current.size() == max_len) return;
    for (std::size_t a = 0; a < m.alphabet().size(); ++a) {
      auto next = post(m, states, static_cast<int>(a));
      if (next.empty()) continue;
      current.push_back(m.alphabet()[a]);
      visit(next);
      current.pop_back();
    }
  };
  auto start = epsilon_closure(m, m.initial_states());
  if (!start.empty()) visit(start);
  return out;
}

std::string to_dot(const Nfa& m, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (State s = 0; s < m.num_states(); ++s) {
    os << "  q" << s << " [shape=" << (m.is_final(s) ? "doublecircle" : "circle") << "];\n";
    if (m.is_initial(s)) {
      os << "  init" << s << " [shape=point];\n  init" << s << " -> q" << s << ";\n";
    }
  }
  for (State s = 0; s < m.num_states(); ++s) {
    for (const auto& e : m.edges(s)) {
      std::string label = e.label == kEpsilon ? "ε" : m.alphabet()[e.label];
      os << "  q" << s << " -> q" << e.to << " [label=\"" << label << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace ptlsep
