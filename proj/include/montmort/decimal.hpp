// Exact decimal rendering of rationals (round-half-even at a fixed number of
// places after the point) and the inverse parse.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "montmort/combinatorics.hpp"

namespace montmort {

enum class Rounding {
  HalfEven,
  /// Truncate toward zero, i.e. the leading digits of the exact expansion.
  TowardZero,
};

/// Renders `value` with exactly `places` digits after the decimal point by
/// exact integer division. An exact zero renders as "0".
std::string render_decimal(const Rational& value, unsigned places,
                           Rounding rounding = Rounding::HalfEven);

/// Renders a real known only to lie in [lo, hi]. Returns nullopt when the
/// two endpoints round differently, i.e. the interval is too wide to
/// decide the last digit.
std::optional<std::string> render_interval(const Rational& lo,
                                           const Rational& hi,
                                           unsigned places,
                                           Rounding rounding = Rounding::HalfEven);

/// Parses a plain decimal literal ("-0.0162", "3", ".5") exactly.
Rational parse_decimal(std::string_view text);

/// 10^k
BigCount pow10(unsigned k);

}  // namespace montmort
