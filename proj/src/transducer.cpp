#include "ptlsep/transducer.hpp"

#include <map>
#include <unordered_map>

#include "ptlsep/error.hpp"
#include "relation.hpp"

namespace ptlsep {

using detail::Relation;

Fst::Fst(Alphabet input, Alphabet output) : input_(std::move(input)), output_(std::move(output)) {}

State Fst::add_state() { return add_states(1); }

State Fst::add_states(std::size_t k) {
  auto first = static_cast<State>(edges_.size());
  edges_.resize(edges_.size() + k);
  initial_.resize(edges_.size(), 0);
  final_.resize(edges_.size(), 0);
  return first;
}

void Fst::check_state(State s) const {
  if (s >= edges_.size()) throw Error(ErrorKind::invalid_argument, "transducer state out of range");
}

void Fst::add_transition(State from, int input, std::vector<int> output, State to) {
  check_state(from);
  check_state(to);
  if (input != kEpsilon && (input < 0 || static_cast<std::size_t>(input) >= input_.size())) {
    throw Error(ErrorKind::alphabet_mismatch, "transducer input label out of range");
  }
  for (int o : output) {
    if (o < 0 || static_cast<std::size_t>(o) >= output_.size()) {
      throw Error(ErrorKind::alphabet_mismatch, "transducer output label out of range");
    }
  }
  edges_[from].push_back(FstEdge{input, std::move(output), to});
}

void Fst::add_transition(State from, std::string_view input, const Word& output, State to) {
  int in = input.empty() ? kEpsilon : static_cast<int>(input_.require(input));
  std::vector<int> out;
  for (const auto& s : output) out.push_back(static_cast<int>(output_.require(s)));
  add_transition(from, in, std::move(out), to);
}

void Fst::set_initial(State s, bool value) {
  check_state(s);
  initial_[s] = value ? 1 : 0;
}

void Fst::set_final(State s, bool value) {
  check_state(s);
  final_[s] = value ? 1 : 0;
}

std::vector<State> Fst::initial_states() const {
  std::vector<State> out;
  for (State s = 0; s < num_states(); ++s) {
    if (initial_[s]) out.push_back(s);
  }
  return out;
}

std::vector<State> Fst::final_states() const {
  std::vector<State> out;
  for (State s = 0; s < num_states(); ++s) {
    if (final_[s]) out.push_back(s);
  }
  return out;
}

bool Fst::is_normalized() const {
  for (const auto& out : edges_) {
    for (const auto& e : out) {
      if (e.output.size() > 1) return false;
    }
  }
  return true;
}

Fst normalize_fst(const Fst& t) {
  if (t.is_normalized()) return t;
  Fst out(t.input_alphabet(), t.output_alphabet());
  out.add_states(t.num_states());
  for (State s = 0; s < t.num_states(); ++s) {
    out.set_initial(s, t.is_initial(s));
    out.set_final(s, t.is_final(s));
  }
  for (State s = 0; s < t.num_states(); ++s) {
    for (const auto& e : t.edges(s)) {
      if (e.output.size() <= 1) {
        out.add_transition(s, e.input, e.output, e.to);
        continue;
      }
      State prev = s;
      for (std::size_t i = 0; i < e.output.size(); ++i) {
        State next = i + 1 == e.output.size() ? e.to : out.add_state();
        out.add_transition(prev, i == 0 ? e.input : kEpsilon, {e.output[i]}, next);
        prev = next;
      }
    }
  }
  return out;
}

Nfa apply_fst_nfa(const Nfa& m, const Fst& input_t) {
  if (m.alphabet() != input_t.input_alphabet()) {
    throw Error(ErrorKind::alphabet_mismatch, "automaton alphabet differs from transducer input");
  }
  Fst t = normalize_fst(input_t);
  Nfa out(t.output_alphabet());
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> work;
  auto get = [&](State p, State q) {
    std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto [it, inserted] = index.try_emplace(key, 0);
    if (inserted) {
      it->second = out.add_state();
      out.set_final(it->second, m.is_final(p) && t.is_final(q));
      work.emplace_back(p, q);
    }
    return it->second;
  };
  auto label = [](const FstEdge& e) { return e.output.empty() ? kEpsilon : e.output[0]; };
  for (State p : m.initial_states()) {
    for (State q : t.initial_states()) out.set_initial(get(p, q));
  }
  while (!work.empty()) {
    auto [p, q] = work.back();
    work.pop_back();
    State from = get(p, q);
    for (const auto& em : m.edges(p)) {
      if (em.label == kEpsilon) {
        out.add_epsilon(from, get(em.to, q));
        continue;
      }
      for (const auto& et : t.edges(q)) {
        if (et.input == em.label) out.add_transition(from, label(et), get(em.to, et.to));
      }
    }
    for (const auto& et : t.edges(q)) {
      if (et.input == kEpsilon) out.add_transition(from, label(et), get(p, et.to));
    }
  }
  return trim(out);
}

Cfg apply_fst_cfg(const Cfg& g, const Fst& t) {
  if (g.alphabet() != t.input_alphabet()) {
    throw Error(ErrorKind::alphabet_mismatch, "grammar alphabet differs from transducer input");
  }
  if (!t.is_normalized()) {
    throw Error(ErrorKind::invalid_argument, "apply_fst_cfg requires a normalized transducer");
  }
  const std::size_t n = t.num_states();
  const std::size_t letters = g.alphabet().size();

  // Which (p,q) pairs can be connected while reading a given symbol.
  Relation eps_step(n);
  std::vector<Relation> step(letters, Relation(n));
  for (State s = 0; s < n; ++s) {
    for (const auto& e : t.edges(s)) {
      if (e.input == kEpsilon) {
        eps_step.set(s, e.to);
      } else {
        step[e.input].set(s, e.to);
      }
    }
  }
  Relation eps = eps_step.star();
  std::vector<Relation> term;
  for (const auto& r : step) term.push_back(eps.then(r).then(eps));

  // Binarize: helper h_{prod,k} stands for the first k+1 body symbols.
  const std::size_t nts = g.num_nonterminals();
  std::vector<std::pair<std::uint32_t, std::vector<GSym>>> bin;  // lhs in extended numbering
  std::size_t ext = nts;
  for (const auto& p : g.productions()) {
    if (p.body.size() <= 2) {
      bin.push_back({p.lhs, p.body});
      continue;
    }
    GSym prev = p.body[0];
    for (std::size_t k = 1; k + 1 < p.body.size(); ++k) {
      auto h = static_cast<std::uint32_t>(ext++);
      bin.push_back({h, {prev, p.body[k]}});
      prev = GSym::nt(h);
    }
    bin.push_back({p.lhs, {prev, p.body.back()}});
  }
  std::vector<Relation> rel(ext, Relation(n));
  auto relation_of = [&](const GSym& s) -> const Relation& {
    return s.terminal() ? term[s.id] : rel[s.id];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [lhs, body] : bin) {
      Relation r = eps;
      bool alive = true;
      for (const auto& s : body) {
        const Relation& x = relation_of(s);
        if (!x.any()) {
          alive = false;
          break;
        }
        r = r.then(x);
      }
      if (alive) changed |= rel[lhs].merge(r);
    }
  }

  Cfg out(t.output_alphabet());
  std::uint32_t start = out.add_fresh_nonterminal("S");
  out.set_start(start);

  // Lazily created triple nonterminals.
  std::map<std::tuple<int, std::uint32_t, State, State>, std::uint32_t> triples;
  enum : int { kNt = 0, kTerm = 1, kEps = 2 };
  std::vector<std::tuple<int, std::uint32_t, State, State>> pending;
  auto triple = [&](int kind, std::uint32_t id, State p, State q) {
    auto key = std::make_tuple(kind, id, p, q);
    auto it = triples.find(key);
    if (it != triples.end()) return it->second;
    std::string base = kind == kNt ? (id < nts ? g.name(id) : "_h" + std::to_string(id))
                       : kind == kTerm ? "_t" + std::to_string(id)
                                       : std::string("_e");
    std::uint32_t nt = out.add_fresh_nonterminal("(" + std::to_string(p) + "," + base + "," +
                                                 std::to_string(q) + ")");
    triples.emplace(key, nt);
    pending.push_back(key);
    return nt;
  };
  auto sym = [&](const GSym& s, State p, State q) {
    return GSym::nt(triple(s.terminal() ? kTerm : kNt, s.id, p, q));
  };

  if (nts > 0) {
    for (State i : t.initial_states()) {
      for (State f : t.final_states()) {
        if (rel[g.start()].test(i, f)) out.add_production(start, {sym(GSym::nt(g.start()), i, f)});
      }
    }
  }
  std::vector<std::vector<const std::vector<GSym>*>> bodies(ext);
  for (const auto& [lhs, body] : bin) bodies[lhs].push_back(&body);

  while (!pending.empty()) {
    auto [kind, id, p, q] = pending.back();
    pending.pop_back();
    std::uint32_t head = triples.at({kind, id, p, q});
    if (kind == kEps) {
      // Outputs along epsilon-reading paths p -> q, right-linear.
      if (p == q) out.add_production(head, {});
      for (const auto& e : t.edges(p)) {
        if (e.input != kEpsilon || !eps.test(e.to, q)) continue;
        std::vector<GSym> body;
        if (!e.output.empty()) body.push_back(GSym::t(static_cast<std::uint32_t>(e.output[0])));
        body.push_back(GSym::nt(triple(kEps, 0, e.to, q)));
        out.add_production(head, std::move(body));
      }
    } else if (kind == kTerm) {
      for (State p1 = 0; p1 < n; ++p1) {
        if (!eps.test(p, p1)) continue;
        for (const auto& e : t.edges(p1)) {
          if (e.input != static_cast<int>(id) || !eps.test(e.to, q)) continue;
          std::vector<GSym> body{GSym::nt(triple(kEps, 0, p, p1))};
          if (!e.output.empty()) body.push_back(GSym::t(static_cast<std::uint32_t>(e.output[0])));
          body.push_back(GSym::nt(triple(kEps, 0, e.to, q)));
          out.add_production(head, std::move(body));
        }
      }
    } else {
      for (const auto* body : bodies[id]) {
        if (body->empty()) {
          if (eps.test(p, q)) out.add_production(head, {GSym::nt(triple(kEps, 0, p, q))});
        } else if (body->size() == 1) {
          if (relation_of((*body)[0]).test(p, q)) out.add_production(head, {sym((*body)[0], p, q)});
        } else {
          const Relation& r0 = relation_of((*body)[0]);
          const Relation& r1 = relation_of((*body)[1]);
          for (State mid = 0; mid < n; ++mid) {
            if (r0.test(p, mid) && r1.test(mid, q)) {
              out.add_production(head, {sym((*body)[0], p, mid), sym((*body)[1], mid, q)});
            }
          }
        }
      }
    }
  }
  return reduce_cfg(out);
}

Fst pad_upward(const Alphabet& a, const Alphabet& b) {
  Alphabet all = a.unite(b);
  Fst t(a, all);
  State s = t.add_state();
  t.set_initial(s);
  t.set_final(s);
  for (const auto& x : a) t.add_transition(s, x, Word{x}, s);
  for (const auto& x : b) t.add_transition(s, "", Word{x}, s);
  return t;
}

Fst project(const Alphabet& a, const Alphabet& b) {
  Fst t(a, b);
  State s = t.add_state();
  t.set_initial(s);
  t.set_final(s);
  for (const auto& x : a) t.add_transition(s, x, b.contains(x) ? Word{x} : Word{}, s);
  return t;
}

Fst restrict(const Nfa& r) {
  Fst t(r.alphabet(), r.alphabet());
  t.add_states(r.num_states());
  for (State s = 0; s < r.num_states(); ++s) {
    t.set_initial(s, r.is_initial(s));
    t.set_final(s, r.is_final(s));
    for (const auto& e : r.edges(s)) {
      if (e.label == kEpsilon) {
        t.add_transition(s, kEpsilon, {}, e.to);
      } else {
        t.add_transition(s, e.label, {e.label}, e.to);
      }
    }
  }
  return t;
}

Fst doubling(const std::vector<Symbol>& order, const Alphabet& a) {
  Fst t(a, a);
  if (order.empty()) {
    State s = t.add_state();
    t.set_initial(s);
    t.set_final(s);
    return t;
  }
  State base = t.add_states(order.size());
  t.set_initial(base);
  for (std::size_t i = 0; i < order.size(); ++i) {
    t.set_final(base + static_cast<State>(i));
    for (std::size_t j = i; j < order.size(); ++j) {
      t.add_transition(base + static_cast<State>(i), order[j], Word{order[j], order[j]},
                       base + static_cast<State>(j));
    }
  }
  return t;
}

Symbol probe_marker(std::size_t block_index) {
  return std::string(1, kMarkerPrefix) + std::to_string(block_index);
}

Fst ideal_probe(const Ideal& ideal, const Alphabet& a) {
  std::vector<Symbol> markers;
  for (std::size_t i = 0; i < ideal.num_blocks(); ++i) markers.push_back(probe_marker(i));
  Alphabet out_alphabet(markers);
  Fst t(a, out_alphabet);

  // One state per (atom, offset into the block word), plus a final state.
  std::vector<State> first;
  for (const auto& atom : ideal.atoms) {
    std::size_t len = atom.is_block() ? atom.letters.size() : 1;
    first.push_back(t.add_states(len));
  }
  State done = t.add_state();
  t.set_initial(first.empty() ? done : first[0]);
  t.set_final(done);

  auto skip_all = [&](State s) {
    for (std::size_t x = 0; x < a.size(); ++x) t.add_transition(s, static_cast<int>(x), {}, s);
  };
  skip_all(done);
  std::size_t block = 0;
  for (std::size_t k = 0; k < ideal.atoms.size(); ++k) {
    const auto& atom = ideal.atoms[k];
    State next = k + 1 < ideal.atoms.size() ? first[k + 1] : done;
    if (!atom.is_block()) {
      skip_all(first[k]);
      t.add_transition(first[k], static_cast<int>(a.require(atom.letter())), {}, next);
      continue;
    }
    const auto& r = atom.letters;
    int marker = static_cast<int>(out_alphabet.require(probe_marker(block)));
    for (std::size_t off = 0; off < r.size(); ++off) {
      State s = first[k] + static_cast<State>(off);
      skip_all(s);
      int letter = static_cast<int>(a.require(r[off]));
      if (off + 1 < r.size()) {
        t.add_transition(s, letter, {}, s + 1);
      } else {
        t.add_transition(s, letter, {marker}, first[k]);
      }
    }
    t.add_transition(first[k], kEpsilon, {}, next);
    ++block;
  }
  return t;
}

}  // namespace ptlsep
