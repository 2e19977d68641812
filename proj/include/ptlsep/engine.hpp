#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptlsep/lang.hpp"
#include "ptlsep/pattern.hpp"
#include "ptlsep/ptl.hpp"

namespace ptlsep {

struct Separable {
  std::size_t level = 0;
  PtlFormula formula = PtlFormula::truth();
  Nfa separator;
};

struct Inseparable {
  Pattern pattern;
};

using Certificate = std::variant<Separable, Inseparable>;

/// Where an interrupted run picks up again.
struct ResumeState {
  std::size_t round = 0;
  bool positive_done = false;      // positive step of `round` already ran
  std::size_t next_pattern = 0;    // index into the proper patterns of size `round`
  bool positive_exhausted = false;  // the profile guard ended the positive ladder
};

struct Undecided {
  std::size_t budget = 0;
  ResumeState resume;
  std::string reason;
};

using Outcome = std::variant<Separable, Inseparable, Undecided>;

struct SeparateOptions {
  /// Steps: one per positive level and one per pattern check. Empty means
  /// unlimited.
  std::optional<std::size_t> budget;
  /// Race the two sides on separate threads; the verdict is deterministic,
  /// the certificate need not be.
  bool parallel = false;
  ResumeState resume;
};

/// Canonical separator at level n, if the level-n profiles of I and E are
/// disjoint. Both languages must share an alphabet.
std::optional<Separable> positive_step(const LangRef& i, const LangRef& e, std::size_t n);

/// The pattern if both languages contain it.
std::optional<Pattern> negative_step(const LangRef& i, const LangRef& e, const Pattern& pattern);

/// Round t runs the positive step at level t, then every proper pattern of
/// size t, until one side answers or the budget runs out.
Outcome separate(const LangRef& i, const LangRef& e, const SeparateOptions& options = {});

/// Checks a certificate against the instance. Separable: I ⊆ S, E ∩ S = ∅
/// and the formula denotes S. Inseparable: the pattern is proper, both
/// languages contain it, and both meet L(P,n) for 1 <= n <= depth.
bool validate(const Certificate& cert, const LangRef& i, const LangRef& e, std::size_t depth = 2);

/// Separates L from its complement.
Certificate is_ptl_regular(const Nfa& l);

/// SUP decided by separating the doubled closure from the odd-exponent
/// language: SUP holds iff they are inseparable.
bool sup_via_separability(const LangRef& l, const std::vector<Symbol>& order);

/// Brings both languages onto their joint alphabet.
std::pair<LangRef, LangRef> common_alphabet(const LangRef& i, const LangRef& e);

}  // namespace ptlsep
