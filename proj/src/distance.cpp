#include "asym/distance.hpp"

#include <cmath>

namespace asym {

Distance Distance::of(const Rational& value) {
  if (value < 0) throw InputError("distance must be nonnegative");
  return {value * value};
}

Distance Distance::from_squared(const Rational& squared) {
  if (squared < 0) throw InputError("squared distance must be nonnegative");
  return {squared};
}

std::optional<Rational> Distance::rational() const { return exact_sqrt(squared); }

double Distance::approx() const { return std::sqrt(to_double(squared)); }

std::string Distance::exact_text() const {
  if (auto r = rational()) return to_string(*r);
  return "sqrt(" + to_string(squared) + ")";
}

std::string Distance::decimal_text() const {
  if (auto r = rational()) return to_decimal(*r);
  // Twelve significant digits from an integer square root at high precision.
  Integer scale = Integer(1) << 200;
  Integer num = floor_int(squared * Rational(scale * scale));
  Integer root;
  mpz_sqrt(root.get_mpz_t(), num.get_mpz_t());
  Rational value(root, scale);
  value.canonicalize();
  return to_decimal(value);
}

bool at_most_scaled(const Distance& a, const Rational& c, const Distance& b) {
  if (c < 0) throw InputError("scale must be nonnegative");
  return a.squared <= c * c * b.squared;
}

}  // namespace asym
