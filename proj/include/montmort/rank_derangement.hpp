// Rank-derangements of an n-rank, s-suit deck by inclusion-exclusion over
// rank profiles, plus the derived win probabilities and their e^{-s} limit.
//
// R(n,s) = sum over profiles m of
//            (-1)^{|S|} * profile_set_count(m) * profile_superset_weight(m)
//            * (ns - |S|)!
//
// Three evaluation routes share that sum:
//   * rank_derangement_count_serial  - reference; one profile at a time
//                                      through the public per-profile ops.
//   * rank_derangement_count_omp     - OpenMP kernel over precomputed
//                                      tables, partitioned by m_0.
//   * rank_derangement_count_polynomial - groups profiles by |S| through
//                                      (sum_j C(s,j) s^(j) x^j)^n; used when
//                                      the profile count gets large.
// All three return identical integers.
#pragma once

#include <string>
#include <vector>

#include "montmort/combinatorics.hpp"
#include "montmort/decimal.hpp"

namespace montmort {

/// Number of card subsets with this profile:
///   multinomial(n; m) * prod_j C(s,j)^{m_j}.
/// Throws std::invalid_argument if the profile length is not s + 1.
BigCount profile_set_count(const RankProfile& profile, unsigned s_suits);

/// Ways to realize every card of such a subset as a rank-fixed point,
///   prod_j (s)_j^{m_j};
/// N(S) = profile_superset_weight * (ns - |S|)!.
/// Throws std::invalid_argument if the profile tracks multiplicities > s.
BigCount profile_superset_weight(const RankProfile& profile, unsigned s_suits);

BigCount rank_derangement_count_serial(const DeckSpec& spec);
/// `threads` <= 0 uses the OpenMP default.
BigCount rank_derangement_count_omp(const DeckSpec& spec, int threads = 0);
BigCount rank_derangement_count_polynomial(const DeckSpec& spec);

/// Dispatches to the OpenMP profile kernel for modest profile counts and to
/// the polynomial route beyond that.
BigCount rank_derangement_count(const DeckSpec& spec);

/// R(n,s) / (ns)!
Rational rank_derangement_probability(const DeckSpec& spec);

/// Coefficients c_k of (sum_{j=0}^{s} C(s,j) (s)_j x^j)^n, k = 0..ns.
/// c_k is the summed set-count times superset weight over all profiles
/// with |S| = k.
std::vector<BigCount> match_polynomial(const DeckSpec& spec);

/// sum_k (-1)^k c_k (ns - k)!
BigCount evaluate_match_polynomial(const std::vector<BigCount>& coeffs,
                                   unsigned deck_size);

/// Rational enclosure of e^{-s} with upper - lower < 10^{-places}.
struct LimitBounds {
  Rational lower;
  Rational upper;
};
LimitBounds limit_bounds(unsigned s_suits, unsigned places);

/// e^{-s} to `digits` places, correctly rounded (or truncated).
std::string asymptotic_limit(unsigned s_suits, unsigned digits = 20,
                             Rounding rounding = Rounding::HalfEven);

/// |value - e^{-s}| correctly rounded to `digits` places.
std::string distance_to_limit(const Rational& value, unsigned s_suits,
                              unsigned digits);

struct TableRow {
  unsigned n = 0;
  Rational probability;
  std::string probability_decimal;
  std::string abs_err_decimal;
};

/// Rows n = 1..n_max of p_n = R(n,s)/(ns)! and |p_n - e^{-s}|.
std::vector<TableRow> probability_table(unsigned n_max, unsigned s_suits,
                                        unsigned digits = 20);

/// Expected number of rank matches over a full pass: s.
Rational expected_rank_matches(const DeckSpec& spec);

}  // namespace montmort
