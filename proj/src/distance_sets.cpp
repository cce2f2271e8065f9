#include "asym/distance_sets.hpp"

#include <algorithm>

namespace asym {

namespace {

AmbientPoint origin_of(const SetModel& model, const AmbientPoint& p) {
  if (!p.empty()) return p;
  return AmbientPoint(dimension(model), Rational(0));
}

}  // namespace

DistanceSet distance_set(const SetModel& model, const AmbientPoint& p_in) {
  validate(model);
  AmbientPoint p = origin_of(model, p_in);
  if (static_cast<int>(p.size()) != dimension(model)) throw InputError("base point dimension does not match the model");
  if (dimension(model) == 1) return {compile_line(model).fold(p[0]), Rational(0)};

  auto [fx, fy] = planar_factors(model);
  if (fx.kind != ModelKind::ray && fx.kind != ModelKind::full_line) {
    throw UnsupportedGeometry("planar distance sets need the x factor to be a ray or the line");
  }
  LineSet xline = compile_line(fx);
  LineSet yline = compile_line(fy);
  if (yline.unbounded() || yline.is_empty()) throw UnsupportedGeometry("planar distance sets need a bounded y factor");
  // x offsets |x - px| fill [dx0, inf); every y contributes the ray from sqrt(dx0^2 + dy^2).
  Rational dx0 = xline.distance(p[0]);
  Rational dy0 = yline.distance(p[1]);
  Distance nearest = Distance::from_squared(dx0 * dx0 + dy0 * dy0);
  auto start = nearest.rational();
  if (!start) throw UnsupportedGeometry("nearest distance " + nearest.exact_text() + " is irrational");
  bool attained = xline.contains(p[0] + dx0) || xline.contains(p[0] - dx0);
  attained = attained && (yline.contains(p[1] + dy0) || yline.contains(p[1] - dy0));
  LineSet set = LineSet::ray(*start, 1);
  if (!attained) set = set.subtract(Interval::point(*start));
  Rational bound = 0;
  for (const auto& piece : yline.core().pieces()) {
    bound = max(bound, max(abs(piece.lo - p[1]), abs(piece.hi - p[1])));
  }
  return {set, bound};
}

const char* to_string(SpectrumVerdict::Status s) {
  return s == SpectrumVerdict::Status::present ? "present" : "absent_at_horizon";
}

SpectrumVerdict spectrum_contains(const LineSet& distances, const ScalingSequence& r, const Rational& t,
                                  const Rational& epsilon, long horizon, long persistence) {
  if (epsilon <= 0) throw InputError("epsilon must be positive");
  if (t < 0) throw InputError("t must be nonnegative");
  if (persistence < 1 || horizon < persistence) throw InputError("need horizon >= persistence >= 1");
  validate(r);
  SpectrumVerdict out;
  for (long n = 1; n <= horizon; ++n) {
    Rational rn = eval_scaling(r, n);
    // The open window ((t - eps) r_n, (t + eps) r_n) meets the set iff its centre is closer than eps r_n.
    if (distances.distance(t * rn) < epsilon * rn) out.hit_indices.push_back(n);
  }
  if (static_cast<long>(out.hit_indices.size()) >= persistence) out.status = SpectrumVerdict::Status::present;
  return out;
}

SpectrumVerdict spectrum_contains(const SpectrumQuery& q) {
  DistanceSet d = distance_set(q.set, q.p);
  return spectrum_contains(d.set, q.scaling, q.t, q.epsilon, q.horizon, q.persistence);
}

std::vector<Rational> default_spectrum_grid() {
  std::vector<Rational> grid;
  for (int i = 0; i <= 32; ++i) {
    Rational t(i, 8);
    t.canonicalize();
    grid.push_back(t);
  }
  return grid;
}

SpectrumComparison compare_spectra(const SetModel& set, const ScalingSequence& r1, const ScalingSequence& r2,
                                   const std::vector<Rational>& t_grid, const Rational& epsilon, long horizon,
                                   long persistence, const AmbientPoint& p) {
  if (t_grid.empty()) throw InputError("t grid is empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (t_grid[i] <= t_grid[i - 1]) throw InputError("t grid must be increasing");
  }
  DistanceSet d = distance_set(set, p);
  SpectrumComparison out;
  for (const auto& t : t_grid) {
    SpectrumRow row;
    row.t = t;
    row.first = spectrum_contains(d.set, r1, t, epsilon, horizon, persistence);
    row.second = spectrum_contains(d.set, r2, t, epsilon, horizon, persistence);
    if (row.differs()) {
      const auto& a = row.first.hit_indices;
      const auto& b = row.second.hit_indices;
      for (long n = 1; n <= horizon; ++n) {
        bool in_a = std::binary_search(a.begin(), a.end(), n);
        bool in_b = std::binary_search(b.begin(), b.end(), n);
        if (in_a != in_b) {
          row.first_divergent_index = n;
          break;
        }
      }
      out.differences.push_back(t);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace asym
