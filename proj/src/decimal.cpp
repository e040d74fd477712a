#include "montmort/decimal.hpp"

#include <stdexcept>

namespace montmort {

BigCount pow10(unsigned k) {
  BigCount out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, k);
  return out;
}

namespace {

// |value| * 10^places as an integer, rounded as requested.
BigCount scaled_magnitude(const Rational& value, unsigned places, Rounding rounding) {
  const BigCount num = abs(value.numerator()) * pow10(places);
  const BigCount den = value.denominator();
  BigCount quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
              den.get_mpz_t());
  if (rounding == Rounding::TowardZero) return quot;
  const int c = cmp(BigCount(2 * rem), den);
  if (c > 0 || (c == 0 && mpz_odd_p(quot.get_mpz_t()))) ++quot;
  return quot;
}

std::string format_scaled(const BigCount& scaled, bool negative,
                          unsigned places) {
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = (negative && scaled != 0) ? "-" : "";
  const std::size_t int_len = digits.size() - places;
  out += digits.substr(0, int_len);
  if (places > 0) {
    out += '.';
    out += digits.substr(int_len);
  }
  return out;
}

}  // namespace

std::string render_decimal(const Rational& value, unsigned places, Rounding rounding) {
  if (value.is_zero()) return "0";
  return format_scaled(scaled_magnitude(value, places, rounding), value.sign() < 0,
                       places);
}

std::optional<std::string> render_interval(const Rational& lo,
                                           const Rational& hi,
                                           unsigned places,
                                           Rounding rounding) {
  if (hi < lo) throw std::invalid_argument("empty interval");
  const std::string a = render_decimal(lo, places, rounding);
  const std::string b = render_decimal(hi, places, rounding);
  if (a != b) return std::nullopt;
  return a;
}

Rational parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty decimal");
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  unsigned places = 0;
  bool seen_point = false;
  for (char ch : text) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      if (seen_point) ++places;
    } else {
      throw std::invalid_argument("malformed decimal: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed decimal");
  BigCount num(digits, 10);
  if (negative) num = -num;
  return Rational(num, pow10(places));
}

}  // namespace montmort
