// Expected value of Treize to the dealer.
//
// Rules, for one dealer tenure with a single unit-stake player:
//   * each round calls ranks 1..n in order against successive cards;
//   * a match ends the round, pays the dealer +1, and the next round starts
//     at the next card with the count back at 1;
//   * n calls without a match end the tenure and cost the dealer 1;
//   * when the deck runs out, all n*s cards are reshuffled and the count
//     carries on where it left off.
//
// The remaining cards are always a uniformly random arrangement of their
// composition, so the game is a Markov chain on (per-rank counts left,
// call position). The chain only re-enters a full deck through a
// reshuffle, so each state's value is affine in the n unknowns
//   X_k = value(full deck, call position k),
// which are fixed by one n x n linear system at the end.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "montmort/combinatorics.hpp"

namespace montmort {

struct TreizeConfig {
  DeckSpec spec;
  /// Calls per round; always spec.n_ranks.
  unsigned round_length() const { return spec.n_ranks; }
};

class TreizeConfigError : public std::invalid_argument {
 public:
  enum class Kind { InvalidDeck, NonTerminating };
  TreizeConfigError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// The solver gave up after memoizing `budget` states.
class StateBudgetExceeded : public std::runtime_error {
 public:
  explicit StateBudgetExceeded(std::size_t budget);
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

/// Throws TreizeConfigError unless n_ranks >= 2 and s_suits >= 1.
void validate_config(const TreizeConfig& config);

enum class Arithmetic { Exact, HighPrecision };

struct SolverOptions {
  std::size_t max_states = 2'000'000;
  Arithmetic arithmetic = Arithmetic::Exact;
  /// Mantissa bits for HighPrecision; 256 bits is about 77 digits.
  unsigned precision_bits = 256;
  /// Visit ranks from n down to 1 when expanding a state.
  bool reverse_visit_order = false;
  /// Keep every state's resolved value for dump_states().
  bool keep_states = false;
};

struct TreizeValue {
  /// Set in exact mode.
  std::optional<Rational> exact;
  /// Exact mode: the exact value. HighPrecision: the binary float result
  /// converted exactly to a rational.
  Rational approx;
  /// HighPrecision only: decimal places on which two runs at different
  /// precisions agree.
  unsigned reliable_digits = 0;

  bool is_exact() const { return exact.has_value(); }
  const Rational& best() const { return exact ? *exact : approx; }
};

struct StateRecord {
  std::vector<unsigned> remaining;  // c_1..c_n
  unsigned call_position = 1;       // 1..n
  Rational value;
};

struct TreizeSolution {
  TreizeValue value;
  /// Probability that the first round (full deck, count at 1) ends in a
  /// match, from the solver's own state recursion.
  Rational first_round_match_probability;
  /// X_1..X_n, the values just after a reshuffle at each call position.
  std::vector<Rational> reset_values;
  std::size_t state_count = 0;
  std::vector<StateRecord> states;  // only with keep_states
};

TreizeSolution solve_treize(const TreizeConfig& config,
                            const SolverOptions& options = {});

TreizeValue exact_expected_value(const TreizeConfig& config,
                                 const SolverOptions& options = {});

/// Expected number of rounds the dealer wins: expected value + 1.
TreizeValue expected_match_rounds(const TreizeConfig& config,
                                  const SolverOptions& options = {});

/// One state per line, sorted by (remaining counts, call position):
///   c_1,c_2,...,c_n<TAB>call_position<TAB>p/q
void dump_states(std::ostream& os, const TreizeSolution& solution);

}  // namespace montmort
