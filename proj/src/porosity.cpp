#include "asym/porosity.hpp"

#include <algorithm>

namespace asym {

Rational grid_point(int j) {
  if (j < 0) throw InputError("grid exponent must be nonnegative");
  static const Rational roots[4] = {Rational(1), from_double(1.189207115002721), from_double(1.4142135623730951),
                                    from_double(1.681792830507429)};
  return pow(Rational(2), j / 4) * roots[j % 4];
}

std::optional<Rational> exact_porosity(const LineSet& set) {
  if (!set.unbounded_above()) return std::nullopt;
  std::vector<TailComponent> tails;
  for (const auto& c : set.components()) {
    if (c.orient < 0) continue;
    if (c.kind != LawKind::geometric) return Rational(0);  // full or periodic tail: gaps stay bounded
    tails.push_back(c);
  }
  // Only geometric tails remain. Bounded translations and finite changes do not
  // move the limsup, so recentre every law at 0 and extend it to all k; the
  // result is invariant under x -> Q x and the limsup is a max over one period.
  Rational ratio = tails.front().base;
  for (const auto& c : tails) {
    auto q = common_power(ratio, c.base);
    if (!q) return std::nullopt;
    ratio = *q;
  }
  LineSet model;
  for (auto c : tails) {
    IntervalSet pattern = c.pattern;
    model = model.unite(LineSet::geometric(c.base, 0, pattern, std::nullopt));
  }
  Rational best = 0;
  IntervalSet period = model.pieces_in(1, ratio);
  for (const auto& p : period.pieces()) {
    // Just left of a piece the open gap behind it is complete; inside pieces l(h)/h falls.
    Rational h = p.lo;
    best = max(best, model.summary(0, h).longest_gap() / h);
  }
  return best;
}

PorosityResult porosity_estimate(const LineSet& set, int horizon_exponent, int min_exponent) {
  if (horizon_exponent < min_exponent) {
    throw InputError("horizon exponent must be at least " + std::to_string(min_exponent));
  }
  if (!set.within_nonnegative()) throw UnsupportedGeometry("porosity needs a subset of [0, inf)");
  PorosityResult out;
  Rational h_min = grid_point(min_exponent);
  Rational h_max = grid_point(horizon_exponent);
  std::vector<Rational> hs;
  for (int j = min_exponent; j <= horizon_exponent; ++j) hs.push_back(grid_point(j));
  // Critical values: left ends of non-periodic pieces in range.
  IntervalSet critical = set.core().clip(h_min, h_max);
  for (const auto& c : set.components()) {
    if (c.kind != LawKind::geometric) continue;
    critical.unite(LineSet::geometric(c.base, c.center, c.pattern, std::nullopt)
                       .pieces_avoiding(h_min, h_max, Rational(1)));
  }
  for (const auto& p : critical.pieces()) {
    if (p.lo > h_min) hs.push_back(p.lo);
  }
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  for (const auto& h : hs) {
    Rational gap = set.summary(0, h).longest_gap();
    Rational ratio = gap / h;
    out.trace.push_back({h, gap, ratio});
    out.estimate = max(out.estimate, ratio);
  }
  for (const auto& row : out.trace) {
    if (row.ratio == out.estimate) out.witness_h.push_back(row.h);
  }
  out.horizon = h_max;
  out.value = out.estimate;
  out.kind = PorosityKind::horizon_estimate;
  return out;
}

PorosityResult porosity_at_infinity(const SetModel& model, int horizon_exponent) {
  validate(model);
  LineSet set = compile_line(model);
  if (!set.within_nonnegative()) throw UnsupportedGeometry("porosity needs a subset of [0, inf)");
  PorosityResult out = porosity_estimate(set, horizon_exponent);
  if (auto exact = exact_porosity(set)) {
    out.value = *exact;
    out.kind = PorosityKind::exact;
  }
  return out;
}

PorosityVerdict is_porous_at_infinity(const SetModel& model, const Rational& threshold, int horizon_exponent) {
  PorosityResult r = porosity_at_infinity(model, horizon_exponent);
  PorosityVerdict v;
  if (r.kind == PorosityKind::exact && r.value == 0) {
    v.status = PorosityVerdict::Status::nonporous_certified;
    v.ratio = 0;
    return v;
  }
  v.ratio = r.estimate;
  for (const auto& row : r.trace) {
    if (row.ratio >= threshold && threshold > 0) {
      v.status = PorosityVerdict::Status::porous;
      v.witness_h = row.h;
      v.ratio = row.ratio;
      return v;
    }
  }
  v.status = PorosityVerdict::Status::inconclusive;
  if (!r.witness_h.empty()) v.witness_h = r.witness_h.front();
  return v;
}

}  // namespace asym
