#include "montmort/combinatorics.hpp"

#include <numeric>
#include <ostream>

namespace montmort {

Rational::Rational(const BigCount& numerator, const BigCount& denominator)
    : q_(numerator, denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) {
  if (q_.get_den() == 0) throw std::invalid_argument("zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("malformed rational");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed rational");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("malformed rational");
    return BigCount(std::string(s[0] == '+' ? s.substr(1) : s), 10);
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)),
                  parse_int(text.substr(slash + 1)));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

void DeckSpec::validate() const {
  if (n_ranks < 1) throw InvalidDeck("invalid deck: at least one rank is required");
  if (s_suits < 1) throw InvalidDeck("invalid deck: at least one suit is required");
}

RankProfile::RankProfile(std::vector<unsigned> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty())
    throw std::invalid_argument("rank profile needs at least one entry");
}

unsigned RankProfile::n_ranks() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0u);
}

unsigned RankProfile::set_size() const {
  unsigned size = 0;
  for (std::size_t j = 0; j < counts_.size(); ++j)
    size += static_cast<unsigned>(j) * counts_[j];
  return size;
}

std::ostream& operator<<(std::ostream& os, const RankProfile& p) {
  os << '(';
  for (std::size_t j = 0; j < p.size(); ++j) os << (j ? "," : "") << p[j];
  return os << ')';
}

BigCount factorial(unsigned k) {
  BigCount out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

BigCount binomial(unsigned a, long b) {
  if (b < 0 || b > static_cast<long>(a)) return 0;
  BigCount out;
  mpz_bin_uiui(out.get_mpz_t(), a, static_cast<unsigned long>(b));
  return out;
}

BigCount multinomial(unsigned n, std::span<const unsigned> parts) {
  unsigned long total = 0;
  for (unsigned p : parts) total += p;
  if (total != n)
    throw std::invalid_argument("multinomial parts must sum to " +
                                std::to_string(n));
  // Product of binomials C(running, part) avoids forming n! explicitly.
  BigCount out = 1;
  unsigned running = 0;
  for (unsigned p : parts) {
    running += p;
    out *= binomial(running, p);
  }
  return out;
}

BigCount falling_factorial(unsigned s, unsigned j) {
  if (j > s)
    throw std::invalid_argument("falling factorial needs j <= s");
  BigCount out = 1;
  for (unsigned i = 0; i < j; ++i) out *= s - i;
  return out;
}

bool next_composition(std::span<unsigned> counts) {
  const std::size_t last = counts.size() - 1;
  if (last == 0) return false;
  std::size_t j = last;
  for (std::size_t i = last; i-- > 0;) {
    if (counts[i] > 0) {
      j = i;
      break;
    }
  }
  if (j == last) return false;
  const unsigned tail = counts[last];
  counts[last] = 0;
  --counts[j];
  counts[j + 1] = tail + 1;
  return true;
}

ProfileRange::ProfileRange(unsigned n_ranks, unsigned s_suits)
    : n_(n_ranks), s_(s_suits), current_(std::vector<unsigned>(s_suits + 1, 0)) {
  current_.counts_[0] = n_ranks;
}

ProfileRange::iterator ProfileRange::begin() {
  if (started_) throw std::logic_error("profile stream is single-pass");
  started_ = true;
  return iterator(&current_);
}

ProfileRange::iterator& ProfileRange::iterator::operator++() {
  if (!next_composition(current_->counts_)) current_ = nullptr;
  return *this;
}

BigCount ProfileRange::expected_count() const { return binomial(n_ + s_, s_); }

}  // namespace montmort
