// Seedable Monte Carlo oracles for frustration solitaire, the exact-card
// game and Treize.
//
// Generator: std::mt19937_64. Trial i of a run with seed K draws from its
// own stream, seeded with splitmix64(K ^ splitmix64(i)). Bounded draws use
// rejection sampling on the raw 64-bit output rather than
// std::uniform_int_distribution, whose algorithm is implementation-defined,
// so outcomes are reproducible across standard libraries and thread counts.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "montmort/combinatorics.hpp"
#include "montmort/treize.hpp"

namespace montmort {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for trial `index` of a run seeded with `seed`.
  static Rng for_trial(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Card c (0 <= c < ns) has rank c % n and suit c / n.
using Card = std::uint16_t;

/// Uniform random ordering of the ns cards (Fisher-Yates).
std::vector<Card> shuffled_deck(Rng& rng, const DeckSpec& spec);
void shuffle_in_place(Rng& rng, std::vector<Card>& deck);

struct FrustrationOutcome {
  bool win = false;
  unsigned matches = 0;
};

/// Deals the whole deck against calls 1..n repeated; wins iff no match.
FrustrationOutcome play_frustration(Rng& rng, const DeckSpec& spec);

/// Calls every card exactly, in order; wins iff none is named exactly.
bool play_exact_card_game(Rng& rng, const DeckSpec& spec);

class RoundCapExceeded : public std::runtime_error {
 public:
  explicit RoundCapExceeded(std::uint64_t cap);
};

struct TreizeDeal {
  std::int64_t payoff = 0;
  std::uint64_t rounds_won = 0;
};

/// One dealer tenure under the same rules as the exact solver.
TreizeDeal play_treize_deal(Rng& rng, const TreizeConfig& config,
                            std::uint64_t round_cap = 1'000'000);

enum class Game {
  Frustration,         // outcome: win flag
  FrustrationMatches,  // outcome: match count
  ExactCard,           // outcome: win flag
  Treize,              // outcome: dealer payoff
  TreizeRoundsWon,     // outcome: rounds won
};

/// Parses "frustration", "frustration-matches", "exact", "treize",
/// "treize-rounds".
Game parse_game(std::string_view name);
std::string_view game_name(Game game);

struct SimConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  DeckSpec spec;
  std::uint64_t round_cap = 1'000'000;
  /// <= 0 uses the OpenMP default.
  int threads = 0;
};

struct Estimate {
  double mean = 0;
  double standard_error = 0;
  std::uint64_t trials = 0;
  /// Trials with a positive outcome (wins, or deals with a positive payoff).
  std::uint64_t hits = 0;
};

/// Integer outcome of a single trial.
std::int64_t play_trial(const SimConfig& config, Game game, std::uint64_t index);

/// OpenMP over trials. Outcomes are integers and are aggregated exactly,
/// so the result does not depend on thread count or schedule.
Estimate estimate(const SimConfig& config, Game game);

/// Single-threaded reference for estimate().
Estimate estimate_serial(const SimConfig& config, Game game);

/// Every trial's outcome, index order.
std::vector<std::int64_t> trial_outcomes(const SimConfig& config, Game game);

}  // namespace montmort
