// Classic derangements and the first-round (prefix) no-match probability of
// Treize, both by inclusion-exclusion.
#pragma once

#include "montmort/combinatorics.hpp"

namespace montmort {

/// D(n) = sum_k (-1)^k C(n,k) (n-k)!, with D(0) = 1.
BigCount derangement_count(unsigned n);

/// D(n) / n!. Throws std::invalid_argument for n == 0.
Rational derangement_probability(unsigned n);

/// Probability that the first n_ranks cards of a shuffled n*s deck avoid
/// every match against the calls 1..n:
///   sum_k (-1)^k C(n,k) s^k (ns-k)! / (ns)!
/// evaluated as a running product of ratios so no (ns)! is formed.
Rational no_match_prefix_probability(const DeckSpec& spec);

/// 1 - no_match_prefix_probability(spec): the dealer takes the first round.
Rational first_round_dealer_win_probability(const DeckSpec& spec);

}  // namespace montmort
