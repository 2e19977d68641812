#include "ptlsep/words.hpp"

#include <algorithm>
#include <cctype>

#include "ptlsep/error.hpp"

namespace ptlsep {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::alphabet_mismatch: return "alphabet-mismatch";
    case ErrorKind::parse: return "parse";
    case ErrorKind::reserved_symbol: return "reserved-symbol";
    case ErrorKind::ill_formed_instance: return "ill-formed-instance";
    case ErrorKind::not_downward_closed: return "not-downward-closed";
    case ErrorKind::guard: return "guard";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

bool is_reserved_symbol(std::string_view symbol) {
  return !symbol.empty() && symbol.front() == kMarkerPrefix;
}

Word parse_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) w.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return w;
}

Word char_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.emplace_back(1, c);
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "ε";
  std::string out;
  bool single = std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s.size() == 1; });
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !single) out += ' ';
    out += w[i];
  }
  return out;
}

Alphabet::Alphabet(std::initializer_list<Symbol> letters)
    : Alphabet(std::vector<Symbol>(letters)) {}

Alphabet::Alphabet(std::vector<Symbol> letters) : letters_(std::move(letters)) {
  std::sort(letters_.begin(), letters_.end());
  letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
  for (const auto& s : letters_) {
    if (s.empty()) throw Error(ErrorKind::invalid_argument, "empty symbol in alphabet");
  }
}

bool Alphabet::contains(std::string_view symbol) const {
  return index_of(symbol).has_value();
}

std::optional<std::size_t> Alphabet::index_of(std::string_view symbol) const {
  auto it = std::lower_bound(letters_.begin(), letters_.end(), symbol,
                             [](const Symbol& a, std::string_view b) { return a < b; });
  if (it == letters_.end() || *it != symbol) return std::nullopt;
  return static_cast<std::size_t>(it - letters_.begin());
}

std::size_t Alphabet::require(std::string_view symbol) const {
  auto i = index_of(symbol);
  if (!i) {
    throw Error(ErrorKind::alphabet_mismatch,
                "symbol '" + std::string(symbol) + "' is not in the alphabet");
  }
  return *i;
}

bool Alphabet::is_subset_of(const Alphabet& other) const {
  return std::includes(other.letters_.begin(), other.letters_.end(), letters_.begin(),
                       letters_.end());
}

Alphabet Alphabet::unite(const Alphabet& other) const {
  std::vector<Symbol> all = letters_;
  all.insert(all.end(), other.letters_.begin(), other.letters_.end());
  return Alphabet(std::move(all));
}

LetterSet Alphabet::mask() const {
  if (size() > 32) throw Error(ErrorKind::guard, "alphabet too large for a letter mask");
  return size() == 32 ? ~LetterSet{0} : ((LetterSet{1} << size()) - 1);
}

LetterSet Alphabet::mask_of(const Alphabet& subset) const {
  LetterSet bits = 0;
  for (const auto& s : subset) bits |= LetterSet{1} << require(s);
  return bits;
}

Alphabet Alphabet::subset(LetterSet bits) const {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits & (LetterSet{1} << i)) out.push_back(letters_[i]);
  }
  return Alphabet(std::move(out));
}

Alphabet alph(const Word& w) { return Alphabet(std::vector<Symbol>(w.begin(), w.end())); }

void check_user_alphabet(const Alphabet& a) {
  for (const auto& s : a) {
    if (is_reserved_symbol(s)) {
      throw Error(ErrorKind::reserved_symbol,
                  "symbol '" + s + "' uses the reserved '$' prefix");
    }
  }
}

bool is_subword_b(const Word& v, const Word& w, const Alphabet& b) {
  // Matching greedily is safe: if w[j] can both match v[i] and be deleted,
  // matching it never loses an embedding.
  std::size_t i = 0;
  for (const auto& x : w) {
    if (i < v.size() && v[i] == x) {
      ++i;
    } else if (!b.contains(x)) {
      return false;
    }
  }
  return i == v.size();
}

bool is_subword(const Word& v, const Word& w) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < w.size() && i < v.size(); ++j) {
    if (v[i] == w[j]) ++i;
  }
  return i == v.size();
}

SubwordProfile subwords_upto(const Word& w, std::size_t n) {
  SubwordProfile profile;
  profile.bound = n;
  profile.members.insert(Word{});
  for (const auto& letter : w) {
    std::vector<Word> added;
    for (const auto& u : profile.members) {
      if (u.size() < n) {
        Word ext = u;
        ext.push_back(letter);
        added.push_back(std::move(ext));
      }
    }
    profile.members.insert(added.begin(), added.end());
  }
  return profile;
}

bool simon_equiv(const Word& v, const Word& w, std::size_t n) {
  return subwords_upto(v, n).members == subwords_upto(w, n).members;
}

std::optional<std::vector<std::size_t>> leftmost_embedding(const Word& x, const Word& y) {
  std::vector<std::size_t> h;
  h.reserve(x.size());
  std::size_t j = 0;
  for (const auto& letter : x) {
    while (j < y.size() && y[j] != letter) ++j;
    if (j == y.size()) return std::nullopt;
    h.push_back(j++);
  }
  return h;
}

std::map<Symbol, std::size_t> letter_counts(const Word& w, const Alphabet& a) {
  std::map<Symbol, std::size_t> counts;
  for (const auto& s : a) counts[s] = 0;
  for (const auto& s : w) {
    auto it = counts.find(s);
    if (it == counts.end()) {
      throw Error(ErrorKind::alphabet_mismatch, "letter '" + s + "' is outside the alphabet");
    }
    ++it->second;
  }
  return counts;
}

std::vector<Word> words_upto(const Alphabet& a, std::size_t n) {
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : a) {
        Word ext = out[i];
        ext.push_back(s);
        out.push_back(std::move(ext));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace ptlsep
