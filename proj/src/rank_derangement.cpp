#include "montmort/rank_derangement.hpp"

#include <exception>

#include <omp.h>


namespace montmort {

namespace {

void check_profile_length(const RankProfile& profile, unsigned s_suits) {
  if (profile.size() != s_suits + 1)
    throw std::invalid_argument("profile length must be s_suits + 1");
}

BigCount power(const BigCount& base, unsigned exponent) {
  BigCount out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

// Shared tables for the profile kernel: factorials up to ns, and the merged
// per-multiplicity weight C(s,j) (s)_j raised to every power up to n.
struct ProfileTables {
  std::vector<BigCount> fact;
  std::vector<std::vector<BigCount>> weight_pow;  // [j][m]

  explicit ProfileTables(const DeckSpec& spec) {
    const unsigned n = spec.n_ranks;
    const unsigned s = spec.s_suits;
    fact.resize(spec.deck_size() + 1);
    fact[0] = 1;
    for (unsigned k = 1; k < fact.size(); ++k) fact[k] = fact[k - 1] * k;
    weight_pow.resize(s + 1);
    for (unsigned j = 0; j <= s; ++j) {
      const BigCount w = binomial(s, j) * falling_factorial(s, j);
      auto& row = weight_pow[j];
      row.resize(n + 1);
      row[0] = 1;
      for (unsigned m = 1; m <= n; ++m) row[m] = row[m - 1] * w;
    }
  }
};

}  // namespace

BigCount profile_set_count(const RankProfile& profile, unsigned s_suits) {
  check_profile_length(profile, s_suits);
  BigCount out = multinomial(profile.n_ranks(), profile.counts());
  for (unsigned j = 0; j <= s_suits; ++j)
    out *= power(binomial(s_suits, j), profile[j]);
  return out;
}

BigCount profile_superset_weight(const RankProfile& profile, unsigned s_suits) {
  if (profile.max_multiplicity() > s_suits)
    throw std::invalid_argument("profile tracks multiplicities above s_suits");
  BigCount out = 1;
  for (unsigned j = 0; j < profile.size(); ++j)
    out *= power(falling_factorial(s_suits, j), profile[j]);
  return out;
}

BigCount rank_derangement_count_serial(const DeckSpec& spec) {
  spec.validate();
  const unsigned size = spec.deck_size();
  BigCount total = 0;
  for (const RankProfile& m : profiles(spec.n_ranks, spec.s_suits)) {
    const unsigned set_size = m.set_size();
    const BigCount term = profile_set_count(m, spec.s_suits) *
                          profile_superset_weight(m, spec.s_suits) *
                          factorial(size - set_size);
    if (set_size % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

BigCount rank_derangement_count_omp(const DeckSpec& spec, int threads) {
  spec.validate();
  const unsigned n = spec.n_ranks;
  const unsigned s = spec.s_suits;
  const unsigned size = spec.deck_size();
  const ProfileTables tables(spec);

  // partial[m0] holds the exact sum over profiles with that m_0; combining
  // them in index order keeps the result independent of scheduling.
  std::vector<BigCount> partial(n + 1);
  std::exception_ptr failure;
  const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (int m0 = 0; m0 <= static_cast<int>(n); ++m0) {
    try {
      const unsigned rest = n - static_cast<unsigned>(m0);
      std::vector<unsigned> tail(s, 0);  // m_1..m_s
      tail[0] = rest;
      BigCount sum = 0, term;
      do {
        unsigned set_size = 0;
        term = tables.fact[n] / tables.fact[m0];
        for (unsigned j = 1; j <= s; ++j) {
          const unsigned mj = tail[j - 1];
          set_size += j * mj;
          term /= tables.fact[mj];
        }
        for (unsigned j = 1; j <= s; ++j) term *= tables.weight_pow[j][tail[j - 1]];
        term *= tables.fact[size - set_size];
        if (set_size % 2 == 0)
          sum += term;
        else
          sum -= term;
      } while (next_composition(tail));
      partial[m0] = std::move(sum);
    } catch (...) {
#pragma omp critical(montmort_rank_failure)
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  BigCount total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

std::vector<BigCount> match_polynomial(const DeckSpec& spec) {
  spec.validate();
  const unsigned n = spec.n_ranks;
  const unsigned s = spec.s_suits;
  std::vector<BigCount> base(s + 1);
  for (unsigned j = 0; j <= s; ++j)
    base[j] = binomial(s, j) * falling_factorial(s, j);

  std::vector<BigCount> poly{1};
  for (unsigned step = 0; step < n; ++step) {
    std::vector<BigCount> next(poly.size() + s);
    for (std::size_t k = 0; k < poly.size(); ++k)
      for (unsigned j = 0; j <= s; ++j) next[k + j] += poly[k] * base[j];
    poly = std::move(next);
  }
  return poly;
}

BigCount evaluate_match_polynomial(const std::vector<BigCount>& coeffs,
                                   unsigned deck_size) {
  if (coeffs.size() != deck_size + 1)
    throw std::invalid_argument("match polynomial degree must equal deck size");
  // Walk k downward so (ns - k)! grows by one factor per step.
  BigCount total = 0;
  BigCount tail = 1;
  for (unsigned k = deck_size + 1; k-- > 0;) {
    const BigCount term = coeffs[k] * tail;
    if (k % 2 == 0)
      total += term;
    else
      total -= term;
    tail *= deck_size - k + 1;
  }
  return total;
}

BigCount rank_derangement_count_polynomial(const DeckSpec& spec) {
  return evaluate_match_polynomial(match_polynomial(spec), spec.deck_size());
}

BigCount rank_derangement_count(const DeckSpec& spec) {
  spec.validate();
  constexpr unsigned long kProfileKernelLimit = 200'000;
  const BigCount profile_count = binomial(spec.n_ranks + spec.s_suits, spec.s_suits);
  if (profile_count <= kProfileKernelLimit) return rank_derangement_count_omp(spec);
  return rank_derangement_count_polynomial(spec);
}

Rational rank_derangement_probability(const DeckSpec& spec) {
  return Rational(rank_derangement_count(spec), factorial(spec.deck_size()));
}

LimitBounds limit_bounds(unsigned s_suits, unsigned places) {
  if (s_suits == 0) throw std::invalid_argument("limit needs s >= 1");
  // Partial sums S_K of e^s with tail bound
  //   R_K = s^{K+1}/(K+1)! / (1 - s/(K+2)),  valid once K + 2 > s.
  // Then e^{-s} lies in [1/(S_K + R_K), 1/S_K], a window no wider than R_K.
  const Rational eps(BigCount(1), pow10(places));
  const Rational s(static_cast<long>(s_suits));
  Rational sum = 1;
  Rational term = 1;
  for (unsigned k = 1;; ++k) {
    term *= s / Rational(static_cast<long>(k));
    sum += term;
    if (k + 2 <= s_suits) continue;
    const Rational next = term * s / Rational(static_cast<long>(k + 1));
    const Rational ratio = s / Rational(static_cast<long>(k + 2));
    const Rational tail = next / (Rational(1) - ratio);
    if (tail < eps) return {Rational(1) / (sum + tail), Rational(1) / sum};
  }
}

std::string asymptotic_limit(unsigned s_suits, unsigned digits, Rounding rounding) {
  for (unsigned guard = 10;; guard *= 2) {
    const LimitBounds b = limit_bounds(s_suits, digits + guard);
    if (auto text = render_interval(b.lower, b.upper, digits, rounding)) return *text;
  }
}

std::string distance_to_limit(const Rational& value, unsigned s_suits,
                              unsigned digits) {
  for (unsigned guard = 10;; guard *= 2) {
    const LimitBounds b = limit_bounds(s_suits, digits + guard);
    std::optional<std::string> text;
    if (value <= b.lower)
      text = render_interval(b.lower - value, b.upper - value, digits);
    else if (value >= b.upper)
      text = render_interval(value - b.upper, value - b.lower, digits);
    if (text) return *text;
  }
}

std::vector<TableRow> probability_table(unsigned n_max, unsigned s_suits,
                                        unsigned digits) {
  if (n_max < 1) throw std::invalid_argument("table needs n_max >= 1");
  DeckSpec{1, s_suits}.validate();
  const unsigned s = s_suits;
  std::vector<BigCount> base(s + 1);
  for (unsigned j = 0; j <= s; ++j)
    base[j] = binomial(s, j) * falling_factorial(s, j);

  // Grow the match polynomial one rank at a time.
  std::vector<TableRow> rows;
  rows.reserve(n_max);
  std::vector<BigCount> poly{1};
  BigCount deck_factorial = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    std::vector<BigCount> next(poly.size() + s);
    for (std::size_t k = 0; k < poly.size(); ++k)
      for (unsigned j = 0; j <= s; ++j) next[k + j] += poly[k] * base[j];
    poly = std::move(next);
    for (unsigned k = (n - 1) * s + 1; k <= n * s; ++k) deck_factorial *= k;

    TableRow row;
    row.n = n;
    row.probability = Rational(evaluate_match_polynomial(poly, n * s), deck_factorial);
    row.probability_decimal = render_decimal(row.probability, digits);
    row.abs_err_decimal = distance_to_limit(row.probability, s, digits);
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational expected_rank_matches(const DeckSpec& spec) {
  spec.validate();
  // ns positions, each matching with probability s/(ns).
  return Rational(BigCount(spec.deck_size()) * spec.s_suits, BigCount(spec.deck_size()));
}

}  // namespace montmort
