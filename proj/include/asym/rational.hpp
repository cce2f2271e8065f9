#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace asym {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for malformed user input (bad rationals, invalid models, broken preconditions).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation is asked about a geometry it has no exact method for.
class UnsupportedGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal self-check fails. Signals a bug or corrupted input.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Parses "3", "-3/2", "0.25" or "1e-2" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& value);

/// Decimal rendering with 12 significant digits, stable across platforms.
std::string to_decimal(const Rational& value, int significant_digits = 12);

Integer floor_int(const Rational& value);
Integer ceil_int(const Rational& value);

Rational abs(const Rational& value);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// base^exponent for any integer exponent (base != 0 when exponent < 0).
Rational pow(const Rational& base, long exponent);

/// Exact square root when value is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& value);

/// Largest k with base^k <= value, for base > 1 and value > 0.
long floor_log(const Rational& value, const Rational& base);

/// Exact rational equal to a finite double.
Rational from_double(double value);

double to_double(const Rational& value);

}  // namespace asym
