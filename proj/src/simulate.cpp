#include "montmort/simulate.hpp"

#include <cmath>
#include <exception>
#include <string>

#include <omp.h>

namespace montmort {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
  // Reject the top partial block of 2^64 so every residue is equally likely.
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= limit) return x % bound;
  }
}

void shuffle_in_place(Rng& rng, std::vector<Card>& deck) {
  for (std::size_t i = deck.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(deck[i - 1], deck[j]);
  }
}

std::vector<Card> shuffled_deck(Rng& rng, const DeckSpec& spec) {
  spec.validate();
  std::vector<Card> deck(spec.deck_size());
  for (std::size_t c = 0; c < deck.size(); ++c) deck[c] = static_cast<Card>(c);
  shuffle_in_place(rng, deck);
  return deck;
}

FrustrationOutcome play_frustration(Rng& rng, const DeckSpec& spec) {
  const auto deck = shuffled_deck(rng, spec);
  FrustrationOutcome out;
  for (std::size_t p = 0; p < deck.size(); ++p)
    if (deck[p] % spec.n_ranks == p % spec.n_ranks) ++out.matches;
  out.win = out.matches == 0;
  return out;
}

bool play_exact_card_game(Rng& rng, const DeckSpec& spec) {
  const auto deck = shuffled_deck(rng, spec);
  for (std::size_t p = 0; p < deck.size(); ++p)
    if (deck[p] == p) return false;
  return true;
}

RoundCapExceeded::RoundCapExceeded(std::uint64_t cap)
    : std::runtime_error("treize deal exceeded the cap of " + std::to_string(cap) +
                         " rounds") {}

TreizeDeal play_treize_deal(Rng& rng, const TreizeConfig& config,
                            std::uint64_t round_cap) {
  validate_config(config);
  const unsigned n = config.spec.n_ranks;
  auto deck = shuffled_deck(rng, config.spec);
  std::size_t next = 0;
  unsigned call = 1;
  TreizeDeal deal;
  std::uint64_t rounds = 1;
  for (;;) {
    if (next == deck.size()) {
      shuffle_in_place(rng, deck);
      next = 0;
    }
    const unsigned rank = deck[next++] % n + 1;
    if (rank == call) {
      ++deal.rounds_won;
      if (++rounds > round_cap) throw RoundCapExceeded(round_cap);
      call = 1;
    } else if (call == n) {
      break;
    } else {
      ++call;
    }
  }
  deal.payoff = static_cast<std::int64_t>(deal.rounds_won) - 1;
  return deal;
}

Game parse_game(std::string_view name) {
  if (name == "frustration") return Game::Frustration;
  if (name == "frustration-matches") return Game::FrustrationMatches;
  if (name == "exact") return Game::ExactCard;
  if (name == "treize") return Game::Treize;
  if (name == "treize-rounds") return Game::TreizeRoundsWon;
  throw std::invalid_argument("unknown game: " + std::string(name));
}

std::string_view game_name(Game game) {
  switch (game) {
    case Game::Frustration: return "frustration";
    case Game::FrustrationMatches: return "frustration-matches";
    case Game::ExactCard: return "exact";
    case Game::Treize: return "treize";
    case Game::TreizeRoundsWon: return "treize-rounds";
  }
  return "?";
}

std::int64_t play_trial(const SimConfig& config, Game game, std::uint64_t index) {
  Rng rng = Rng::for_trial(config.seed, index);
  switch (game) {
    case Game::Frustration: return play_frustration(rng, config.spec).win ? 1 : 0;
    case Game::FrustrationMatches: return play_frustration(rng, config.spec).matches;
    case Game::ExactCard: return play_exact_card_game(rng, config.spec) ? 1 : 0;
    case Game::Treize:
      return play_treize_deal(rng, TreizeConfig{config.spec}, config.round_cap).payoff;
    case Game::TreizeRoundsWon:
      return static_cast<std::int64_t>(
          play_treize_deal(rng, TreizeConfig{config.spec}, config.round_cap).rounds_won);
  }
  return 0;
}

namespace {

void check(const SimConfig& config, Game game) {
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  config.spec.validate();
  if (game == Game::Treize || game == Game::TreizeRoundsWon)
    validate_config(TreizeConfig{config.spec});
}

struct Totals {
  __int128 sum = 0;
  __int128 sum_sq = 0;
  std::uint64_t hits = 0;
};

Estimate summarize(const Totals& t, std::uint64_t trials) {
  Estimate e;
  e.trials = trials;
  e.hits = t.hits;
  const auto n = static_cast<__int128>(trials);
  e.mean = static_cast<double>(static_cast<long double>(t.sum) / trials);
  if (trials > 1) {
    // Sample variance from exact integer moments:
    //   (n * sum_sq - sum^2) / (n (n - 1))
    const __int128 spread = n * t.sum_sq - t.sum * t.sum;
    const long double var = static_cast<long double>(spread) /
                            (static_cast<long double>(n) * static_cast<long double>(n - 1));
    e.standard_error = static_cast<double>(std::sqrt(var / trials));
  }
  return e;
}

}  // namespace

Estimate estimate_serial(const SimConfig& config, Game game) {
  check(config, game);
  Totals t;
  for (std::uint64_t i = 0; i < config.trials; ++i) {
    const std::int64_t v = play_trial(config, game, i);
    t.sum += v;
    t.sum_sq += static_cast<__int128>(v) * v;
    if (v > 0) ++t.hits;
  }
  return summarize(t, config.trials);
}

Estimate estimate(const SimConfig& config, Game game) {
  check(config, game);
  const int team = config.threads > 0 ? config.threads : omp_get_max_threads();
  // __int128 has no OpenMP reduction; per-thread totals are merged after.
  std::vector<Totals> partial(static_cast<std::size_t>(team));
  std::exception_ptr failure;
  const auto trials = static_cast<std::int64_t>(config.trials);

#pragma omp parallel num_threads(team)
  {
    Totals local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < trials; ++i) {
      try {
        const std::int64_t v = play_trial(config, game, static_cast<std::uint64_t>(i));
        local.sum += v;
        local.sum_sq += static_cast<__int128>(v) * v;
        if (v > 0) ++local.hits;
      } catch (...) {
#pragma omp critical(montmort_sim_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  if (failure) std::rethrow_exception(failure);

  Totals t;
  for (const auto& p : partial) {
    t.sum += p.sum;
    t.sum_sq += p.sum_sq;
    t.hits += p.hits;
  }
  return summarize(t, config.trials);
}

std::vector<std::int64_t> trial_outcomes(const SimConfig& config, Game game) {
  check(config, game);
  std::vector<std::int64_t> out(config.trials);
  std::exception_ptr failure;
  const auto trials = static_cast<std::int64_t>(config.trials);
  const int team = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(team)
  for (std::int64_t i = 0; i < trials; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = play_trial(config, game, static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(montmort_sim_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace montmort
