#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ptlsep::detail {

/// Square boolean matrix over automaton states, one bit row per state.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static Relation identity(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) r.set(i, i);
    return r;
  }

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

  bool any() const {
    for (auto w : bits_) {
      if (w) return true;
    }
    return false;
  }

  /// this ∘ other: (i,k) iff (i,j) in this and (j,k) in other for some j.
  Relation then(const Relation& other) const {
    Relation out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t* dst = &out.bits_[i * words_];
      for (std::size_t j = 0; j < n_; ++j) {
        if (!test(i, j)) continue;
        const std::uint64_t* src = &other.bits_[j * words_];
        for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
      }
    }
    return out;
  }

  /// In-place union; returns whether anything changed.
  bool merge(const Relation& other) {
    bool changed = false;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t next = bits_[w] | other.bits_[w];
      if (next != bits_[w]) {
        bits_[w] = next;
        changed = true;
      }
    }
    return changed;
  }

  /// Reflexive-transitive closure.
  Relation star() const {
    Relation r = *this;
    r.merge(identity(n_));
    while (true) {
      Relation next = r.then(r);
      if (!r.merge(next)) return r;
    }
  }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace ptlsep::detail
