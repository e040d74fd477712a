#include "montmort/derangement.hpp"

namespace montmort {

BigCount derangement_count(unsigned n) {
  BigCount total = 0;
  BigCount tail = factorial(n);  // (n-k)!
  for (unsigned k = 0; k <= n; ++k) {
    const BigCount term = binomial(n, k) * tail;
    if (k % 2 == 0)
      total += term;
    else
      total -= term;
    if (k < n) tail /= n - k;
  }
  return total;
}

Rational derangement_probability(unsigned n) {
  if (n == 0) throw std::invalid_argument("derangement probability needs n >= 1");
  return Rational(derangement_count(n), factorial(n));
}

Rational no_match_prefix_probability(const DeckSpec& spec) {
  spec.validate();
  const unsigned n = spec.n_ranks;
  const unsigned s = spec.s_suits;
  const unsigned size = spec.deck_size();

  // term_k = C(n,k) s^k / (size (size-1) ... (size-k+1))
  Rational term = 1;
  Rational total = 1;
  for (unsigned k = 1; k <= n; ++k) {
    term *= Rational(BigCount(n - k + 1) * s, BigCount(k) * (size - k + 1));
    if (k % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

Rational first_round_dealer_win_probability(const DeckSpec& spec) {
  return Rational(1) - no_match_prefix_probability(spec);
}

}  // namespace montmort
