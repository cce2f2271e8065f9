#pragma once

#include "asym/rational.hpp"

// mpq_class(a, b) keeps the fraction as written; tests always want it reduced.
inline asym::Rational frac(long num, long den) {
  asym::Rational r(num, den);
  r.canonicalize();
  return r;
}
