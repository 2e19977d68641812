#include "ptlsep/engine.hpp"

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ptlsep/closures.hpp"
#include "ptlsep/error.hpp"
#include "ptlsep/transducer.hpp"

namespace ptlsep {

std::pair<LangRef, LangRef> common_alphabet(const LangRef& i, const LangRef& e) {
  Alphabet joint = i.alphabet().unite(e.alphabet());
  for (const auto& s : joint) {
    if (is_reserved_symbol(s)) {
      throw Error(ErrorKind::reserved_symbol, "input alphabet uses reserved symbol '" + s + "'");
    }
  }
  return {pad(i, joint), pad(e, joint)};
}

std::optional<Separable> positive_step(const LangRef& i, const LangRef& e, std::size_t n) {
  if (i.alphabet() != e.alphabet()) throw Error(ErrorKind::alphabet_mismatch, "inputs over different alphabets");
  auto profiles = cached_profile_automaton(i.alphabet(), n);
  Nfa walker = profiles->to_nfa({});
  std::vector<State> from_i = reachable_states(i, walker);
  std::vector<State> from_e = reachable_states(e, walker);
  std::vector<char> hit(profiles->num_states(), 0);
  for (State s : from_i) hit[s] = 1;
  for (State s : from_e) {
    if (hit[s]) return std::nullopt;
  }
  Separator sep = canonical_separator(from_i, *profiles);
  return Separable{n, std::move(sep.formula), std::move(sep.automaton)};
}

std::optional<Pattern> negative_step(const LangRef& i, const LangRef& e, const Pattern& pattern) {
  if (contains_pattern(i, pattern) && contains_pattern(e, pattern)) return pattern;
  return std::nullopt;
}

namespace {

Outcome separate_sequential(const LangRef& i, const LangRef& e, const SeparateOptions& options) {
  ResumeState state = options.resume;
  std::size_t steps = 0;
  std::string reason;
  auto out_of_budget = [&] { return options.budget && steps >= *options.budget; };
  auto undecided = [&] {
    std::string why = "budget of " + std::to_string(*options.budget) + " steps exhausted";
    if (!reason.empty()) why += "; " + reason;
    return Undecided{*options.budget, state, why};
  };
  auto stuck = [&](const Error& err) {
    std::string why = std::string("negative side stopped: ") + err.what();
    if (!reason.empty()) why = reason + "; " + why;
    return Undecided{options.budget.value_or(0), state, why};
  };

  while (true) {
    if (!state.positive_done && !state.positive_exhausted) {
      if (out_of_budget()) return undecided();
      ++steps;
      try {
        if (auto found = positive_step(i, e, state.round)) return *found;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::guard) throw;
        state.positive_exhausted = true;
        reason = std::string("positive side stopped: ") + err.what();
      }
      state.positive_done = true;
    }
    std::vector<Pattern> batch;
    try {
      batch = proper_patterns_of_size(i.alphabet(), state.round);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::guard) throw;
      return stuck(err);
    }
    while (state.next_pattern < batch.size()) {
      if (out_of_budget()) return undecided();
      ++steps;
      if (auto found = negative_step(i, e, batch[state.next_pattern])) return Inseparable{*found};
      ++state.next_pattern;
    }
    ++state.round;
    state.positive_done = false;
    state.next_pattern = 0;
  }
}

Outcome separate_parallel(const LangRef& i, const LangRef& e, const SeparateOptions& options) {
  std::atomic<std::size_t> steps{0};
  std::mutex lock;
  std::optional<Separable> positive;
  std::optional<Inseparable> negative;
  std::exception_ptr failure;
  ResumeState positive_state = options.resume;
  ResumeState negative_state = options.resume;
  std::string reason;
  std::string negative_reason;

  auto take_step = [&] {
    std::size_t used = steps.fetch_add(1);
    return !options.budget || used < *options.budget;
  };

  std::stop_source stop;
  {
    std::jthread pos([&](std::stop_token token) {
      try {
        ResumeState s = positive_state;
        std::size_t n = s.positive_done ? s.round + 1 : s.round;
        while (!s.positive_exhausted && !token.stop_requested()) {
          if (!take_step()) break;
          try {
            if (auto found = positive_step(i, e, n)) {
              std::lock_guard guard(lock);
              positive = std::move(found);
              stop.request_stop();
              break;
            }
          } catch (const Error& err) {
            if (err.kind() != ErrorKind::guard) throw;
            s.positive_exhausted = true;
            std::lock_guard guard(lock);
            reason = std::string("positive side stopped: ") + err.what();
          }
          ++n;
        }
        std::lock_guard guard(lock);
        positive_state.positive_exhausted = s.positive_exhausted;
        positive_state.round = n;
      } catch (...) {
        std::lock_guard guard(lock);
        failure = std::current_exception();
        stop.request_stop();
      }
    });
    std::jthread neg([&](std::stop_token token) {
      try {
        ResumeState s = negative_state;
        bool over = false;
        while (!over && !token.stop_requested() && !stop.stop_requested()) {
          std::vector<Pattern> batch;
          try {
            batch = proper_patterns_of_size(i.alphabet(), s.round);
          } catch (const Error& err) {
            if (err.kind() != ErrorKind::guard) throw;
            std::lock_guard guard(lock);
            negative_reason = std::string("negative side stopped: ") + err.what();
            break;
          }
          for (; s.next_pattern < batch.size(); ++s.next_pattern) {
            if (token.stop_requested() || stop.stop_requested() || !take_step()) {
              over = true;
              break;
            }
            if (auto found = negative_step(i, e, batch[s.next_pattern])) {
              std::lock_guard guard(lock);
              negative = Inseparable{*found};
              stop.request_stop();
              over = true;
              break;
            }
          }
          if (!over) {
            ++s.round;
            s.next_pattern = 0;
          }
        }
        std::lock_guard guard(lock);
        negative_state = s;
      } catch (...) {
        std::lock_guard guard(lock);
        failure = std::current_exception();
        stop.request_stop();
      }
    });
    // Propagate a finished side to the other thread.
    std::stop_callback relay(stop.get_token(), [&] {
      pos.request_stop();
      neg.request_stop();
    });
    pos.join();
    neg.join();
  }

  if (failure) std::rethrow_exception(failure);
  if (positive && negative) {
    throw std::logic_error("exclusivity violated: both a separator and a common pattern were found");
  }
  if (positive) return *positive;
  if (negative) return *negative;
  // Resume from the least advanced side so no work is skipped.
  ResumeState resume = negative_state;
  resume.positive_exhausted = positive_state.positive_exhausted;
  resume.positive_done = positive_state.round > resume.round;
  std::string why;
  if (negative_reason.empty()) {
    why = "budget of " + std::to_string(*options.budget) + " steps exhausted";
    if (!reason.empty()) why += "; " + reason;
  } else {
    why = reason.empty() ? negative_reason : reason + "; " + negative_reason;
  }
  return Undecided{options.budget.value_or(0), resume, why};
}

}  // namespace

Outcome separate(const LangRef& i, const LangRef& e, const SeparateOptions& options) {
  auto [ii, ee] = common_alphabet(i, e);
  if (options.parallel) return separate_parallel(ii, ee, options);
  return separate_sequential(ii, ee, options);
}

bool validate(const Certificate& cert, const LangRef& i, const LangRef& e, std::size_t depth) {
  auto [ii, ee] = common_alphabet(i, e);
  const Alphabet& a = ii.alphabet();
  if (const auto* sep = std::get_if<Separable>(&cert)) {
    if (sep->separator.alphabet() != a) return false;
    if (!sep->formula.letters().is_subset_of(a)) return false;
    if (!equivalent(formula_to_nfa(sep->formula, a), sep->separator)) return false;
    if (meets(ii, complement(sep->separator))) return false;
    return !meets(ee, sep->separator);
  }
  const Pattern& pattern = std::get<Inseparable>(cert).pattern;
  if (pattern.u.size() != pattern.blocks.size() + 1 || !is_proper(pattern)) return false;
  if (!pattern.letters().is_subset_of(a)) return false;
  if (!contains_pattern(ii, pattern) || !contains_pattern(ee, pattern)) return false;
  for (std::size_t n = 1; n <= depth; ++n) {
    Nfa lang = pattern_lang_nfa(pattern, n, a);
    if (!meets(ii, lang) || !meets(ee, lang)) return false;
  }
  return true;
}

Certificate is_ptl_regular(const Nfa& l) {
  Outcome out = separate(l, complement(l));
  if (auto* sep = std::get_if<Separable>(&out)) return std::move(*sep);
  return std::get<Inseparable>(std::move(out));
}

bool sup_via_separability(const LangRef& l, const std::vector<Symbol>& order) {
  check_bounded_instance(l, order);
  const Alphabet& a = l.alphabet();
  Nfa doubled = apply_fst_nfa(downward_closure(l), doubling(order, a));
  // K = b1^(2k1+1) ... bn^(2kn+1)
  Nfa odd = word_nfa({}, a);
  for (const auto& b : order) {
    Nfa one = word_nfa(Word{b}, a);
    odd = concat(odd, concat(one, star(concat(one, one))));
  }
  Outcome out = separate(doubled, odd);
  return std::holds_alternative<Inseparable>(out);
}

}  // namespace ptlsep
