#pragma once

#include <compare>
#include <optional>
#include <string>

#include "asym/rational.hpp"

namespace asym {

/// Nonnegative distance stored through its exact square, so planar distances
/// like sqrt(2) stay exact. Ordering compares squares.
struct Distance {
  Rational squared;

  static Distance of(const Rational& value);
  static Distance from_squared(const Rational& squared);

  /// The value itself when it is rational.
  std::optional<Rational> rational() const;
  double approx() const;
  /// "3/10" when rational, otherwise "sqrt(5/4)".
  std::string exact_text() const;
  std::string decimal_text() const;

  friend bool operator==(const Distance& a, const Distance& b) { return a.squared == b.squared; }
  friend std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
    if (a.squared < b.squared) return std::strong_ordering::less;
    if (a.squared > b.squared) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// Exact decision of a <= c * b for distances a, b and rational c >= 0.
bool at_most_scaled(const Distance& a, const Rational& c, const Distance& b);

}  // namespace asym
