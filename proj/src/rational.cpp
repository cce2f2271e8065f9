#include "asym/rational.hpp"

#include <cmath>
#include <string>

namespace asym {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

Integer pow10(long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  return result;
}

// Parses a decimal literal like "-12.5e-3" exactly.
Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (pos < text.size() && is_digit(text[pos])) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && is_digit(text[pos])) {
      digits += text[pos++];
      ++scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw InputError("malformed rational '" + std::string(text) + "'");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string exp_text(text.substr(pos));
    if (exp_text.empty()) throw InputError("malformed exponent in '" + std::string(text) + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw InputError("malformed exponent in '" + std::string(text) + "'");
    }
    if (used != exp_text.size()) throw InputError("trailing characters in '" + std::string(text) + "'");
    pos = text.size();
  }
  if (pos != text.size()) throw InputError("trailing characters in '" + std::string(text) + "'");
  Rational value(Integer(digits, 10));
  long shift = exponent - scale;
  if (shift > 0) value *= Rational(pow10(shift));
  if (shift < 0) value /= Rational(pow10(-shift));
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational value = num / den;
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

std::string to_decimal(const Rational& value, int significant_digits) {
  if (value == 0) return "0";
  Rational magnitude = abs(value);
  // Decimal exponent e with 10^e <= |v| < 10^(e+1).
  long e = static_cast<long>(std::floor(std::log10(std::abs(to_double(magnitude)))));
  if (!std::isfinite(to_double(magnitude))) {
    e = static_cast<long>(mpz_sizeinbase(magnitude.get_num_mpz_t(), 10)) -
        static_cast<long>(mpz_sizeinbase(magnitude.get_den_mpz_t(), 10));
  }
  auto scaled_pow = [](long exponent) {
    return exponent >= 0 ? Rational(pow10(exponent)) : Rational(1) / Rational(pow10(-exponent));
  };
  while (magnitude >= scaled_pow(e + 1)) ++e;
  while (magnitude < scaled_pow(e)) --e;

  long shift = significant_digits - 1 - e;
  Rational scaled = magnitude * scaled_pow(shift);
  Integer mantissa = floor_int(scaled + Rational(1, 2));
  if (mantissa >= pow10(significant_digits)) {
    mantissa /= 10;
    ++e;
    --shift;
  }
  std::string digits = mantissa.get_str();
  std::string out = value < 0 ? "-" : "";
  if (e < -5 || e >= significant_digits) {
    std::string frac = digits.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += digits.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    out += (e < 0 ? "e-" : "e+");
    long abs_e = e < 0 ? -e : e;
    std::string exp_digits = std::to_string(abs_e);
    if (exp_digits.size() < 2) exp_digits = "0" + exp_digits;
    out += exp_digits;
    return out;
  }
  std::string int_part;
  std::string frac_part;
  if (e >= 0) {
    int_part = digits.substr(0, static_cast<std::size_t>(e + 1));
    frac_part = digits.substr(static_cast<std::size_t>(e + 1));
  } else {
    int_part = "0";
    frac_part = std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
  }
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  out += int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  return out;
}

Integer floor_int(const Rational& value) {
  Integer result;
  mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return result;
}

Integer ceil_int(const Rational& value) {
  Integer result;
  mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return result;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }
Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw InputError("zero raised to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational result(num, den);
  result.canonicalize();
  return result;
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  Rational v = value;
  v.canonicalize();
  if (mpz_perfect_square_p(v.get_num_mpz_t()) == 0 || mpz_perfect_square_p(v.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer num;
  Integer den;
  mpz_sqrt(num.get_mpz_t(), v.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), v.get_den_mpz_t());
  Rational root(num, den);
  root.canonicalize();
  return root;
}

long floor_log(const Rational& value, const Rational& base) {
  if (value <= 0 || base <= 1) throw InputError("floor_log needs value > 0 and base > 1");
  // log via bit sizes keeps the estimate finite for huge magnitudes.
  auto approx_log2 = [](const Rational& x) {
    long num_bits = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
    Integer num = x.get_num() >> std::max(0L, num_bits - 60);
    Integer den = x.get_den() >> std::max(0L, den_bits - 60);
    return std::log2(num.get_d()) + static_cast<double>(std::max(0L, num_bits - 60)) -
           std::log2(den.get_d()) - static_cast<double>(std::max(0L, den_bits - 60));
  };
  long k = static_cast<long>(std::floor(approx_log2(value) / approx_log2(base)));
  Rational power = pow(base, k);
  while (power > value) {
    --k;
    power /= base;
  }
  while (power * base <= value) {
    ++k;
    power *= base;
  }
  return k;
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw InputError("non-finite double cannot become a rational");
  Rational result(value);
  result.canonicalize();
  return result;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace asym
