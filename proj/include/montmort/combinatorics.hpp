// Exact counting primitives: big integers, normalized rationals, deck and
// rank-profile types, and the composition stream that indexes profile sums.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace montmort {

/// Arbitrary-precision non-negative count.
using BigCount = mpz_class;

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator. Equality is value equality.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigCount& value) : q_(value) {}
  Rational(const BigCount& numerator, const BigCount& denominator);
  explicit Rational(const mpq_class& q);

  /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input
  /// or a zero denominator.
  static Rational parse(std::string_view text);

  BigCount numerator() const { return q_.get_num(); }
  BigCount denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const;

  /// Canonical "p/q" form; integers print as "p/1".
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Thrown when a deck description is unusable (zero ranks or zero suits).
class InvalidDeck : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A deck of n_ranks ranks in each of s_suits suits.
struct DeckSpec {
  unsigned n_ranks = 13;
  unsigned s_suits = 4;

  unsigned deck_size() const { return n_ranks * s_suits; }
  bool valid() const { return n_ranks >= 1 && s_suits >= 1; }
  /// Throws InvalidDeck unless valid().
  void validate() const;

  friend bool operator==(const DeckSpec&, const DeckSpec&) = default;
};

/// Occupancy vector (m_0, ..., m_s): m_j ranks contribute exactly j cards
/// to a subset of the deck.
class RankProfile {
 public:
  explicit RankProfile(std::vector<unsigned> counts);

  std::span<const unsigned> counts() const { return counts_; }
  unsigned operator[](std::size_t j) const { return counts_[j]; }
  std::size_t size() const { return counts_.size(); }
  /// Largest multiplicity tracked, i.e. size() - 1.
  unsigned max_multiplicity() const {
    return static_cast<unsigned>(counts_.size() - 1);
  }

  /// sum_j m_j
  unsigned n_ranks() const;
  /// |S| = sum_j j * m_j
  unsigned set_size() const;

  friend bool operator==(const RankProfile&, const RankProfile&) = default;

 private:
  friend class ProfileRange;
  std::vector<unsigned> counts_;
};

std::ostream& operator<<(std::ostream& os, const RankProfile& p);

BigCount factorial(unsigned k);
/// C(a, b); zero when b < 0 or b > a.
BigCount binomial(unsigned a, long b);
/// n! / prod(parts_i!). Throws std::invalid_argument if the parts do not sum
/// to n.
BigCount multinomial(unsigned n, std::span<const unsigned> parts);
/// s (s-1) ... (s-j+1). Throws std::invalid_argument if j > s.
BigCount falling_factorial(unsigned s, unsigned j);

/// Every composition of n_ranks into s_suits + 1 ordered non-negative parts,
/// in descending lexicographic order: (n,0,...,0) first, (0,...,0,n) last.
/// Single pass; each range instance is its own independent stream.
class ProfileRange {
 public:
  ProfileRange(unsigned n_ranks, unsigned s_suits);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = RankProfile;
    using difference_type = std::ptrdiff_t;
    using pointer = const RankProfile*;
    using reference = const RankProfile&;

    iterator() = default;
    reference operator*() const { return *current_; }
    pointer operator->() const { return current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.current_ == b.current_;
    }

   private:
    friend class ProfileRange;
    explicit iterator(RankProfile* p) : current_(p) {}
    RankProfile* current_ = nullptr;
  };

  iterator begin();
  iterator end() { return iterator{}; }

  /// C(n + s, s)
  BigCount expected_count() const;

 private:
  unsigned n_;
  unsigned s_;
  RankProfile current_;
  bool started_ = false;
};

inline ProfileRange profiles(unsigned n_ranks, unsigned s_suits) {
  return ProfileRange(n_ranks, s_suits);
}

/// Advances `counts` to the next composition in descending lexicographic
/// order. Returns false (leaving counts untouched) after the last one.
bool next_composition(std::span<unsigned> counts);

}  // namespace montmort
