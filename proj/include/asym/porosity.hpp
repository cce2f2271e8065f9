#pragma once

#include <optional>
#include <vector>

#include "asym/line_set.hpp"
#include "asym/set_model.hpp"

namespace asym {

enum class PorosityKind { exact, horizon_estimate };

struct PorosityTraceRow {
  Rational h;
  Rational gap;
  Rational ratio;
};

struct PorosityResult {
  Rational value;       // exact value, or the estimator's lower bound
  PorosityKind kind = PorosityKind::horizon_estimate;
  Rational estimate;    // grid maximum (always computed)
  Rational horizon;     // largest h probed
  std::vector<Rational> witness_h;  // grid points attaining the estimate
  std::vector<PorosityTraceRow> trace;
};

inline constexpr int default_horizon_exponent = 240;
/// Grid exponents below this are skipped: small h says nothing about infinity,
/// and 2^-40 keeps bounded-gap sets within 1e-12 of their exact value 0.
inline constexpr int porosity_min_exponent = 160;

/// Exact porosity at infinity when the tail laws allow a closed form.
std::optional<Rational> exact_porosity(const LineSet& set);

/// max of l(h)/h over h = 2^(j/4), min_exponent <= j <= horizon_exponent, plus
/// block/point boundaries of the set in that range.
PorosityResult porosity_estimate(const LineSet& set, int horizon_exponent = default_horizon_exponent,
                                 int min_exponent = porosity_min_exponent);

PorosityResult porosity_at_infinity(const SetModel& model, int horizon_exponent = default_horizon_exponent);

struct PorosityVerdict {
  enum class Status { porous, nonporous_certified, inconclusive };
  Status status = Status::inconclusive;
  std::optional<Rational> witness_h;
  Rational ratio;  // l(h)/h at the witness, or the best observed ratio
};

PorosityVerdict is_porous_at_infinity(const SetModel& model, const Rational& threshold,
                                      int horizon_exponent = default_horizon_exponent);

/// h = 2^(j/4) as an exact rational (fixed approximations of the quarter roots).
Rational grid_point(int j);

}  // namespace asym
