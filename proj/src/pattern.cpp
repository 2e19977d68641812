#include "ptlsep/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ptlsep/error.hpp"
#include "ptlsep/transducer.hpp"

namespace ptlsep {

std::size_t Pattern::size() const noexcept {
  std::size_t s = p();
  for (const auto& w : u) s += w.size();
  return s;
}

Alphabet Pattern::letters() const {
  Alphabet out;
  for (const auto& w : u) out = out.unite(alph(w));
  for (const auto& b : blocks) out = out.unite(b);
  return out;
}

void Pattern::validate() const {
  if (u.size() != blocks.size() + 1) {
    throw Error(ErrorKind::invalid_argument, "pattern needs exactly one more word than blocks");
  }
  for (const auto& b : blocks) {
    if (b.empty()) throw Error(ErrorKind::invalid_argument, "pattern blocks must be nonempty");
  }
}

std::string to_string(const Pattern& pattern) {
  std::string out = "((";
  for (std::size_t i = 0; i < pattern.u.size(); ++i) {
    if (i > 0) out += ',';
    out += format_word(pattern.u[i]);
  }
  out += "),(";
  for (std::size_t i = 0; i < pattern.blocks.size(); ++i) {
    if (i > 0) out += ',';
    out += '{';
    for (std::size_t j = 0; j < pattern.blocks[i].size(); ++j) {
      if (j > 0) out += ',';
      out += pattern.blocks[i][j];
    }
    out += '}';
  }
  return out + "))";
}

bool is_proper(const Pattern& pattern) {
  if (pattern.u.size() != pattern.blocks.size() + 1) return false;
  const std::size_t p = pattern.p();
  for (const auto& b : pattern.blocks) {
    if (b.empty()) return false;
  }
  for (std::size_t i = 0; i < p; ++i) {
    const Word& w = pattern.u[i];
    if (!w.empty() && pattern.blocks[i].contains(w.back())) return false;
  }
  for (std::size_t i = 1; i <= p; ++i) {
    const Word& w = pattern.u[i];
    if (!w.empty() && pattern.blocks[i - 1].contains(w.front())) return false;
  }
  for (std::size_t i = 1; i < p; ++i) {
    if (!pattern.u[i].empty()) continue;
    const Alphabet& left = pattern.blocks[i - 1];
    const Alphabet& right = pattern.blocks[i];
    if (left.is_subset_of(right) || right.is_subset_of(left)) return false;
  }
  return true;
}

Pattern normalize_proper(const Pattern& input) {
  input.validate();
  Pattern pat = input;
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t p = pat.p();
    for (std::size_t i = 0; i < p; ++i) {
      Word& w = pat.u[i];
      while (!w.empty() && pat.blocks[i].contains(w.back())) {
        w.pop_back();
        changed = true;
      }
    }
    for (std::size_t i = 1; i <= p; ++i) {
      Word& w = pat.u[i];
      while (!w.empty() && pat.blocks[i - 1].contains(w.front())) {
        w.erase(w.begin());
        changed = true;
      }
    }
    for (std::size_t i = 1; i < p && !changed; ++i) {
      if (!pat.u[i].empty()) continue;
      if (pat.blocks[i - 1].is_subset_of(pat.blocks[i])) {
        pat.blocks.erase(pat.blocks.begin() + static_cast<std::ptrdiff_t>(i - 1));
        pat.u.erase(pat.u.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else if (pat.blocks[i].is_subset_of(pat.blocks[i - 1])) {
        pat.blocks.erase(pat.blocks.begin() + static_cast<std::ptrdiff_t>(i));
        pat.u.erase(pat.u.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      }
    }
  }
  return pat;
}

Nfa pattern_lang_nfa(const Pattern& pattern, std::size_t n, const Alphabet& a) {
  pattern.validate();
  Nfa out = word_nfa(pattern.u[0], a);
  for (std::size_t i = 0; i < pattern.p(); ++i) {
    Nfa block = exact_alphabet_nfa(pattern.blocks[i], a);
    for (std::size_t k = 0; k < n; ++k) out = concat(out, block);
    out = concat(out, word_nfa(pattern.u[i + 1], a));
  }
  return out;
}

std::vector<Symbol> pattern_markers(std::size_t p) {
  std::vector<Symbol> out;
  for (std::size_t i = 1; i <= p; ++i) out.push_back(std::string(1, kMarkerPrefix) + std::to_string(i));
  return out;
}

std::vector<Pattern> proper_patterns_of_size(const Alphabet& a, std::size_t size) {
  if (a.size() > kMaxDiagonalAlphabet) throw Error(ErrorKind::guard, "alphabet too large for pattern enumeration");
  // Upper bound on the candidates: word letters spread over p+1 slots, p blocks.
  {
    const double k = static_cast<double>(a.size());
    const double blocks = std::ldexp(1.0, static_cast<int>(a.size())) - 1;
    double bound = 0;
    for (std::size_t p = 0; p <= size; ++p) {
      double slots = 1;
      for (std::size_t j = 1; j <= p; ++j) slots = slots * static_cast<double>(size - p + j) / static_cast<double>(j);
      bound += slots * std::pow(k, static_cast<double>(size - p)) * std::pow(blocks, static_cast<double>(p));
    }
    if (bound > static_cast<double>(kMaxPatternCandidates)) {
      throw Error(ErrorKind::guard, "more than " + std::to_string(kMaxPatternCandidates) +
                                        " pattern candidates of size " + std::to_string(size) +
                                        " over " + std::to_string(a.size()) + " letters");
    }
  }
  std::vector<Alphabet> subsets;
  for (LetterSet bits = 1; bits <= a.mask(); ++bits) subsets.push_back(a.subset(bits));
  std::sort(subsets.begin(), subsets.end());

  std::vector<Pattern> out;
  for (std::size_t p = 0; p <= size; ++p) {
    const std::size_t letters = size - p;
    std::vector<Pattern> batch;
    Pattern current;
    current.u.resize(p + 1);
    current.blocks.resize(p);
    // Distribute word letters over the p+1 slots, then choose blocks.
    std::function<void(std::size_t)> choose_blocks = [&](std::size_t i) {
      if (i == p) {
        if (is_proper(current)) batch.push_back(current);
        return;
      }
      for (const auto& b : subsets) {
        current.blocks[i] = b;
        choose_blocks(i + 1);
      }
    };
    std::function<void(std::size_t, std::size_t)> fill_words = [&](std::size_t slot, std::size_t left) {
      if (slot == p) {
        for (const auto& w : words_upto(a, left)) {
          if (w.size() != left) continue;
          current.u[slot] = w;
          choose_blocks(0);
        }
        return;
      }
      for (std::size_t len = 0; len <= left; ++len) {
        for (const auto& w : words_upto(a, len)) {
          if (w.size() != len) continue;
          current.u[slot] = w;
          fill_words(slot + 1, left - len);
        }
      }
    };
    fill_words(0, letters);
    std::sort(batch.begin(), batch.end());
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

PatternEnumerator::PatternEnumerator(Alphabet a) : alphabet_(std::move(a)) {}

PatternEnumerator::PatternEnumerator(Alphabet a, Cursor start)
    : alphabet_(std::move(a)), cursor_(start) {}

void PatternEnumerator::load(std::size_t size) {
  if (loaded_size_ == size) return;
  batch_ = proper_patterns_of_size(alphabet_, size);
  loaded_size_ = size;
}

Pattern PatternEnumerator::next() {
  while (true) {
    load(cursor_.size);
    if (cursor_.index < batch_.size()) return batch_[cursor_.index++];
    ++cursor_.size;
    cursor_.index = 0;
  }
}

namespace {

// u0 X1 u1 ... Xp up where X_i is produced by `middle(i)`.
Nfa chain(const Pattern& pattern, const Alphabet& a, const std::function<Nfa(std::size_t)>& middle) {
  Nfa out = word_nfa(pattern.u[0], a);
  for (std::size_t i = 0; i < pattern.p(); ++i) {
    out = concat(out, middle(i));
    out = concat(out, word_nfa(pattern.u[i + 1], a));
  }
  return out;
}

}  // namespace

bool contains_pattern(const LangRef& l, const Pattern& pattern) {
  pattern.validate();
  for (const auto& s : l.alphabet()) {
    if (is_reserved_symbol(s)) {
      throw Error(ErrorKind::reserved_symbol,
                  "language alphabet uses reserved symbol '" + s + "', which collides with markers");
    }
  }
  if (!pattern.letters().is_subset_of(l.alphabet())) {
    throw Error(ErrorKind::alphabet_mismatch, "pattern uses letters outside the language alphabet");
  }
  if (pattern.p() == 0) return member(l, pattern.u[0]);

  const auto marker_list = pattern_markers(pattern.p());
  const Alphabet markers(marker_list);
  const Alphabet& base = l.alphabet();
  const Alphabet all = base.unite(markers);

  // L1: markers inserted anywhere.
  LangRef l1 = apply(l, pad_upward(base, markers));
  // L2: markers only inside their block regions.
  Nfa r2 = chain(pattern, all, [&](std::size_t i) {
    return star_of(pattern.blocks[i].unite(Alphabet{marker_list[i]}), all);
  });
  LangRef l2 = restrict_to(l1, r2);
  // L3: between consecutive $i every letter of B_i occurs.
  Nfa r3 = chain(pattern, all, [&](std::size_t i) {
    Nfa dollar = word_nfa(Word{marker_list[i]}, all);
    return concat(star(concat(dollar, exact_alphabet_nfa(pattern.blocks[i], all))), dollar);
  });
  LangRef l3 = restrict_to(l2, r3);
  // L4: only the markers remain; (n,...,n) dominated iff L meets L(P,n-1).
  LangRef l4 = apply(l3, project(all, markers));
  return diagonal(l4);
}

}  // namespace ptlsep
