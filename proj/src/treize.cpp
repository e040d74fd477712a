#include "montmort/treize.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>

#include "montmort/decimal.hpp"

namespace montmort {

StateBudgetExceeded::StateBudgetExceeded(std::size_t budget)
    : std::runtime_error("treize solver exceeded its budget of " +
                         std::to_string(budget) +
                         " states; use the Monte Carlo estimator "
                         "(treize --simulate) for this deck"),
      budget_(budget) {}

void validate_config(const TreizeConfig& config) {
  using Kind = TreizeConfigError::Kind;
  if (config.spec.n_ranks < 1 || config.spec.s_suits < 1)
    throw TreizeConfigError(Kind::InvalidDeck,
                            "invalid deck: treize needs at least one rank and one suit");
  if (config.spec.n_ranks == 1)
    throw TreizeConfigError(Kind::NonTerminating,
                            "non-terminating game: with a single rank every call matches");
}

namespace {

// Scalar policies. Exact uses canonical mpq; HighPrecision uses mpf at a
// fixed mantissa width.
struct ExactField {
  using Scalar = mpq_class;
  Scalar zero() const { return 0; }
  Scalar from_int(long v) const { return v; }
  Scalar ratio(unsigned a, unsigned b) const {
    Scalar q(a, b);
    q.canonicalize();
    return q;
  }
  Rational to_rational(const Scalar& v) const { return Rational(v); }
  bool better_pivot(const Scalar& cand, const Scalar& best) const {
    return sgn(best) == 0 && sgn(cand) != 0;
  }
};

struct FloatField {
  using Scalar = mpf_class;
  unsigned bits;
  Scalar zero() const { return Scalar(0, bits); }
  Scalar from_int(long v) const { return Scalar(v, bits); }
  Scalar ratio(unsigned a, unsigned b) const {
    Scalar q(a, bits);
    q /= b;
    return q;
  }
  Rational to_rational(const Scalar& v) const {
    mpq_class q;
    mpq_set_f(q.get_mpq_t(), v.get_mpf_t());
    return Rational(q);
  }
  bool better_pivot(const Scalar& cand, const Scalar& best) const {
    return cmp(abs(cand), abs(best)) > 0;
  }
};

template <class Field>
class Solver {
 public:
  using Scalar = typename Field::Scalar;
  using Affine = std::vector<Scalar>;  // [0] constant, [k] coefficient of X_k

  Solver(const TreizeConfig& config, const SolverOptions& options, Field field)
      : n_(config.spec.n_ranks),
        s_(config.spec.s_suits),
        options_(options),
        field_(field),
        counts_(n_, s_),
        place_(n_) {
    // Keys are code * n + (call - 1) with code < (s+1)^n.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n_;
    std::uint64_t p = 1;
    for (unsigned r = 0; r < n_; ++r) {
      place_[r] = p;
      if (p > limit / (s_ + 1)) throw StateBudgetExceeded(options_.max_states);
      p *= s_ + 1;
    }
    for (unsigned r = 0; r < n_; ++r) full_code_ += s_ * place_[r];
  }

  struct Result {
    std::vector<Scalar> reset_values;  // X_1..X_n
  };

  Result solve() {
    const unsigned size = n_ * s_;
    std::vector<Affine> rows;
    rows.reserve(n_);
    for (unsigned k = 1; k <= n_; ++k) rows.push_back(value(full_code_, size, k));

    // X = a + B X. Every row of B is a probability of surviving a full pass
    // without the tenure ending; all rows below 1 makes B a strict
    // contraction in the max norm, so the round count has a geometric tail.
    std::vector<std::vector<Scalar>> m(n_, std::vector<Scalar>(n_ + 1, field_.zero()));
    for (unsigned i = 0; i < n_; ++i) {
      Scalar survive = field_.zero();
      for (unsigned j = 0; j < n_; ++j) {
        survive += rows[i][j + 1];
        m[i][j] = (i == j ? field_.from_int(1) : field_.zero()) - rows[i][j + 1];
      }
      if (cmp(survive, field_.from_int(1)) >= 0)
        throw std::logic_error("treize: a reshuffle state never ends the tenure");
      m[i][n_] = rows[i][0];
    }
    return {gauss(std::move(m))};
  }

  std::size_t state_count() const { return memo_.size(); }

  template <class Visit>
  void for_each_state(Visit&& visit) const {
    for (const auto& [key, affine] : memo_) visit(key, affine);
  }

  std::vector<unsigned> decode(std::uint64_t key, unsigned* call) const {
    *call = static_cast<unsigned>(key % n_) + 1;
    std::uint64_t code = key / n_;
    std::vector<unsigned> out(n_);
    for (unsigned r = 0; r < n_; ++r) {
      out[r] = static_cast<unsigned>(code % (s_ + 1));
      code /= s_ + 1;
    }
    return out;
  }

  Scalar evaluate(const Affine& a, const std::vector<Scalar>& x) const {
    Scalar v = a[0];
    for (unsigned k = 0; k < n_; ++k) v += a[k + 1] * x[k];
    return v;
  }

  /// First round only: probability it ends in a match.
  Rational first_round_match_probability() {
    std::unordered_map<std::uint64_t, mpq_class> memo;
    std::vector<unsigned> counts(n_, s_);
    return Rational(first_round(memo, counts, full_code_, n_ * s_, 1));
  }

 private:
  const Affine& value(std::uint64_t code, unsigned total, unsigned call) {
    const std::uint64_t key = code * n_ + (call - 1);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= options_.max_states)
      throw StateBudgetExceeded(options_.max_states);

    Affine acc(n_ + 1, field_.zero());
    for (unsigned i = 0; i < n_; ++i) {
      const unsigned r = options_.reverse_visit_order ? n_ - 1 - i : i;
      if (counts_[r] == 0) continue;
      const Scalar p = field_.ratio(counts_[r], total);
      --counts_[r];
      const std::uint64_t next_code = code - place_[r];
      if (r + 1 == call) {
        acc[0] += p;
        accumulate(acc, p, next_code, total - 1, 1);
      } else if (call == n_) {
        acc[0] -= p;
      } else {
        accumulate(acc, p, next_code, total - 1, call + 1);
      }
      ++counts_[r];
    }
    return memo_.emplace(key, std::move(acc)).first->second;
  }

  // acc += p * value(next state), where an empty deck means a reshuffle.
  void accumulate(Affine& acc, const Scalar& p, std::uint64_t code,
                  unsigned total, unsigned call) {
    if (total == 0) {
      acc[call] += p;
      return;
    }
    const Affine& next = value(code, total, call);
    for (unsigned k = 0; k <= n_; ++k)
      if (sgn(next[k]) != 0) acc[k] += p * next[k];
  }

  mpq_class first_round(std::unordered_map<std::uint64_t, mpq_class>& memo,
                        std::vector<unsigned>& counts, std::uint64_t code,
                        unsigned total, unsigned call) {
    const std::uint64_t key = code * n_ + (call - 1);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    mpq_class acc = 0;
    for (unsigned r = 0; r < n_; ++r) {
      if (counts[r] == 0) continue;
      mpq_class p(counts[r], total);
      p.canonicalize();
      if (r + 1 == call) {
        acc += p;
      } else if (call < n_) {
        --counts[r];
        acc += p * first_round(memo, counts, code - place_[r], total - 1, call + 1);
        ++counts[r];
      }
    }
    memo.emplace(key, acc);
    return acc;
  }

  std::vector<Scalar> gauss(std::vector<std::vector<Scalar>> m) const {
    const unsigned n = n_;
    for (unsigned col = 0; col < n; ++col) {
      unsigned pivot = col;
      for (unsigned r = col + 1; r < n; ++r)
        if (field_.better_pivot(m[r][col], m[pivot][col])) pivot = r;
      if (sgn(m[pivot][col]) == 0)
        throw std::logic_error("treize: singular reshuffle system");
      std::swap(m[col], m[pivot]);
      for (unsigned r = 0; r < n; ++r) {
        if (r == col || sgn(m[r][col]) == 0) continue;
        const Scalar f = m[r][col] / m[col][col];
        for (unsigned c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
      }
    }
    std::vector<Scalar> x(n, field_.zero());
    for (unsigned i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
    return x;
  }

  unsigned n_;
  unsigned s_;
  SolverOptions options_;
  Field field_;
  std::vector<unsigned> counts_;
  std::vector<std::uint64_t> place_;
  std::uint64_t full_code_ = 0;
  std::unordered_map<std::uint64_t, Affine> memo_;
};

template <class Field>
TreizeSolution run_solver(const TreizeConfig& config,
                          const SolverOptions& options, Field field) {
  Solver<Field> solver(config, options, field);
  const auto result = solver.solve();

  TreizeSolution out;
  out.state_count = solver.state_count();
  for (const auto& x : result.reset_values)
    out.reset_values.push_back(field.to_rational(x));
  out.value.approx = out.reset_values.front();
  out.first_round_match_probability = solver.first_round_match_probability();

  if (options.keep_states) {
    solver.for_each_state([&](std::uint64_t key, const auto& affine) {
      StateRecord rec;
      rec.remaining = solver.decode(key, &rec.call_position);
      rec.value = field.to_rational(solver.evaluate(affine, result.reset_values));
      out.states.push_back(std::move(rec));
    });
    std::sort(out.states.begin(), out.states.end(),
              [](const StateRecord& a, const StateRecord& b) {
                if (a.remaining != b.remaining) return a.remaining < b.remaining;
                return a.call_position < b.call_position;
              });
  }
  return out;
}

}  // namespace

TreizeSolution solve_treize(const TreizeConfig& config,
                            const SolverOptions& options) {
  validate_config(config);
  TreizeSolution out;
  if (options.arithmetic == Arithmetic::Exact) {
    out = run_solver(config, options, ExactField{});
    out.value.exact = out.value.approx;
  } else {
    if (options.precision_bits < 170)
      throw std::invalid_argument("high-precision mode needs >= 170 bits (50 digits)");
    out = run_solver(config, options, FloatField{options.precision_bits});
    // Rerun wider; the digits both runs agree on are reported as reliable.
    SolverOptions wider = options;
    wider.precision_bits = options.precision_bits + 64;
    wider.keep_states = false;
    const auto check = run_solver(config, wider, FloatField{wider.precision_bits});
    const auto max_places = static_cast<unsigned>(options.precision_bits * 0.30103);
    unsigned places = 0;
    while (places < max_places &&
           render_decimal(out.value.approx, places + 1) ==
               render_decimal(check.value.approx, places + 1))
      ++places;
    out.value.reliable_digits = places;
  }
  if (out.value.best() < Rational(-1))
    throw std::logic_error("treize: expected payoff below -1");
  return out;
}

TreizeValue exact_expected_value(const TreizeConfig& config,
                                 const SolverOptions& options) {
  return solve_treize(config, options).value;
}

TreizeValue expected_match_rounds(const TreizeConfig& config,
                                  const SolverOptions& options) {
  TreizeValue v = exact_expected_value(config, options);
  v.approx += Rational(1);
  if (v.exact) *v.exact += Rational(1);
  return v;
}

void dump_states(std::ostream& os, const TreizeSolution& solution) {
  for (const auto& rec : solution.states) {
    for (std::size_t r = 0; r < rec.remaining.size(); ++r)
      os << (r ? "," : "") << rec.remaining[r];
    os << '\t' << rec.call_position << '\t';
    if (solution.value.is_exact())
      os << rec.value.str();
    else
      os << render_decimal(rec.value, solution.value.reliable_digits);
    os << '\n';
  }
}

}  // namespace montmort
