#include "asym/equivalence.hpp"

#include <algorithm>
#include <cmath>

namespace asym {

namespace {

AmbientPoint base_point(const SetModel& model, const AmbientPoint& p) {
  if (!p.empty()) return p;
  return AmbientPoint(dimension(model), Rational(0));
}

void same_dimension(const SetModel& Y, const SetModel& Z) {
  if (dimension(Y) != dimension(Z)) throw InputError("models live in different ambient dimensions");
}

ExtendedDistance directed_line(const LineSet& from, const LineSet& to) {
  DirectedHausdorff h = directed_hausdorff(from, to);
  if (h.status == DirectedHausdorff::Status::unknown) {
    throw UnsupportedGeometry("directed Hausdorff distance is not available in closed form for this pair");
  }
  ExtendedDistance out;
  out.infinite = h.status == DirectedHausdorff::Status::infinite;
  if (!out.infinite) out.value = Distance::of(h.value);
  return out;
}

// Smallest rational c with c <= sqrt(squared) known to hold exactly.
Rational lower_root(const Rational& squared) {
  if (auto r = Distance::from_squared(squared).rational()) return *r;
  Rational c = from_double(std::sqrt(to_double(squared)) * (1 - 1e-12));
  while (c > 0 && c * c > squared) c = c * Rational(999, 1000);
  return c;
}

Rational ratio_squared(const Distance& eps, const Rational& t) { return eps.squared / (t * t); }

}  // namespace

const char* to_string(EquivalenceVerdict::Status s) {
  switch (s) {
    case EquivalenceVerdict::Status::equivalent_exact:
      return "equivalent_exact";
    case EquivalenceVerdict::Status::equivalent_numerical:
      return "equivalent_numerical";
    case EquivalenceVerdict::Status::not_equivalent:
      return "not_equivalent";
  }
  return "";
}

const char* to_string(EpsNetVerdict::Status s) {
  switch (s) {
    case EpsNetVerdict::Status::certified:
      return "certified";
    case EpsNetVerdict::Status::counterexample:
      return "counterexample";
    case EpsNetVerdict::Status::inconclusive:
      return "inconclusive";
  }
  return "";
}

EpsilonPair epsilon_t(const SetModel& Y, const SetModel& Z, const AmbientPoint& p_in, const Rational& t) {
  same_dimension(Y, Z);
  AmbientPoint p = base_point(Y, p_in);
  auto directed = [&](const SetModel& from, const SetModel& to) {
    SphereSlice slice = sphere_slice(from, p, t);
    Distance best;
    if (dimension(to) == 1) {
      LineSet target = compile_line(to);
      for (const auto& z : slice.points) best = std::max(best, Distance::of(target.distance(z)));
    } else {
      for (const auto& arc : slice.arcs) best = std::max(best, sup_distance_on_arc(to, arc, t));
    }
    return best;
  };
  return {directed(Z, Y), directed(Y, Z)};
}

EpsilonCurve epsilon_curve(const SetModel& Y, const SetModel& Z, const AmbientPoint& p,
                           const std::vector<Rational>& t_grid) {
  if (t_grid.empty()) throw InputError("t grid is empty");
  EpsilonCurve out;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const Rational& t = t_grid[i];
    if (t <= 0) throw InputError("t values must be positive");
    if (i > 0 && t <= t_grid[i - 1]) throw InputError("t grid must be increasing");
    EpsilonPair e = epsilon_t(Y, Z, p, t);
    Distance eps = e.eps();
    out.samples.push_back({t, e.zy, e.yz, eps, Distance::from_squared(ratio_squared(eps, t))});
  }
  return out;
}

ExtendedDistance directed_hausdorff(const SetModel& A, const SetModel& B) {
  same_dimension(A, B);
  if (dimension(A) == 1) return directed_line(compile_line(A), compile_line(B));
  auto [ax, ay] = planar_factors(A);
  auto [bx, by] = planar_factors(B);
  ExtendedDistance hx = directed_line(compile_line(ax), compile_line(bx));
  ExtendedDistance hy = directed_line(compile_line(ay), compile_line(by));
  ExtendedDistance out;
  out.infinite = hx.infinite || hy.infinite;
  if (!out.infinite) out.value = Distance::from_squared(hx.value.squared + hy.value.squared);
  return out;
}

namespace {

bool line_subset(const LineSet& a, const LineSet& b) {
  if (a.unite(b) == b) return true;
  if (!a.components().empty()) return false;
  for (const auto& piece : a.core().pieces()) {
    IntervalSet cover = b.pieces_in(piece.lo, piece.hi);
    bool inside = false;
    for (const auto& c : cover.pieces()) {
      bool lo_ok = c.lo < piece.lo || (c.lo == piece.lo && (c.lo_closed || !piece.lo_closed));
      bool hi_ok = c.hi > piece.hi || (c.hi == piece.hi && (c.hi_closed || !piece.hi_closed));
      if (lo_ok && hi_ok) inside = true;
    }
    if (!inside) return false;
  }
  return true;
}

bool model_subset(const SetModel& a, const SetModel& b) {
  if (dimension(a) == 1) return line_subset(compile_line(a), compile_line(b));
  auto [ax, ay] = planar_factors(a);
  auto [bx, by] = planar_factors(b);
  return line_subset(compile_line(ax), compile_line(bx)) && line_subset(compile_line(ay), compile_line(by));
}

}  // namespace

ExtendedDistance conditional_hausdorff(const SetModel& A, const SetModel& B, const SetModel& Y, const SetModel& Z) {
  same_dimension(A, Y);
  same_dimension(B, Z);
  same_dimension(Y, Z);
  if (!model_subset(A, Y)) throw InputError("A is not verifiably contained in Y");
  if (!model_subset(B, Z)) throw InputError("B is not verifiably contained in Z");
  ExtendedDistance first = directed_hausdorff(B, Y);
  ExtendedDistance second = directed_hausdorff(A, Z);
  ExtendedDistance out;
  out.infinite = first.infinite || second.infinite;
  if (!out.infinite) out.value = std::max(first.value, second.value);
  return out;
}

namespace {

// Gap midpoints of `target` whose gap starts in [lo, hi), in the oriented
// coordinate u = side * x, together with the resulting radius about p.
std::vector<Rational> gap_midpoints(const LineSet& target, int side, const Rational& lo, const Rational& hi,
                                    const Rational& reach) {
  Rational x_lo = side > 0 ? lo : Rational(-(hi + reach));
  Rational x_hi = side > 0 ? Rational(hi + reach) : Rational(-lo);
  IntervalSet pieces = target.pieces_in(x_lo, x_hi, 1 << 14);
  const auto& ps = pieces.pieces();
  std::vector<Rational> out;
  for (std::size_t i = 1; i < ps.size(); ++i) {
    Rational a = side > 0 ? ps[i - 1].hi : Rational(-ps[i].lo);
    if (a < lo || a >= hi) continue;
    out.push_back((ps[i - 1].hi + ps[i].lo) / 2);
  }
  return out;
}

std::optional<Rational> geometric_ratio(const LineSet& set, int side) {
  std::optional<Rational> q;
  for (const auto& c : set.components()) {
    if (c.orient != side || c.kind != LawKind::geometric) continue;
    if (!q) {
      q = c.base;
    } else if (auto common = common_power(*q, c.base)) {
      q = *common;
    } else {
      return std::nullopt;
    }
  }
  return q;
}

// Follows the worst gap midpoint of a geometric tail through successive periods.
bool structural_witness(const SetModel& Y, const SetModel& Z, const AmbientPoint& p, const EquivalenceConfig& config,
                        EquivalenceVerdict& out) {
  LineSet lines[2] = {compile_line(Y), compile_line(Z)};
  Rational extent = max(lines[0].structural_extent(), lines[1].structural_extent()) + abs(p[0]) + 1;
  for (const auto& target : lines) {
    for (int side : {1, -1}) {
      auto q = geometric_ratio(target, side);
      if (!q) continue;
      Rational start = 1;
      while (start < 2 * extent) start *= *q;
      std::vector<Rational> ts;
      std::vector<Rational> ratios;
      for (int k = 0; k < config.witness_periods; ++k) {
        Rational lo = start * pow(*q, k);
        Rational hi = lo * *q;
        std::optional<Rational> best_t;
        Rational best_ratio = -1;
        for (const auto& mid : gap_midpoints(target, side, lo, hi, hi * (*q - 1))) {
          Rational t = abs(mid - p[0]);
          if (t <= 0) continue;
          Rational r = ratio_squared(epsilon_t(Y, Z, p, t).eps(), t);
          if (r > best_ratio) {
            best_ratio = r;
            best_t = t;
          }
        }
        if (!best_t) break;
        ts.push_back(*best_t);
        ratios.push_back(best_ratio);
      }
      if (ts.size() < static_cast<std::size_t>(config.witness_periods)) continue;
      Rational low = *std::min_element(ratios.begin(), ratios.end());
      double floor_sq = config.threshold * config.threshold;
      // The ratio must have settled: a decaying eps(t)/t keeps dropping across the later periods.
      const Rational& mid = ratios[ratios.size() / 2];
      if (to_double(low) < floor_sq || mid - ratios.back() > ratios.back() / 8) continue;
      Rational c = lower_root(low);
      for (const auto& t : ts) {
        if (!at_most_scaled(Distance::of(c * t), 1, epsilon_t(Y, Z, p, t).eps())) {
          throw InvariantFailure("witness inequality failed on recomputation");
        }
      }
      out.status = EquivalenceVerdict::Status::not_equivalent;
      out.witness_t = ts;
      out.witness_c = c;
      out.structural_witness = true;
      out.note = "gap midpoints of a geometric tail, one per period";
      return true;
    }
  }
  return false;
}

}  // namespace

EquivalenceVerdict decide_strong_equivalence(const SetModel& Y, const SetModel& Z, const AmbientPoint& p_in,
                                             const EquivalenceConfig& config) {
  validate(Y);
  validate(Z);
  same_dimension(Y, Z);
  if (config.growth <= 1 || config.horizon < 2) throw InputError("equivalence grid needs growth > 1 and horizon >= 2");
  AmbientPoint p = base_point(Y, p_in);
  EquivalenceVerdict out;

  // A finite Hausdorff distance bounds eps(t) by a constant.
  try {
    ExtendedDistance a = directed_hausdorff(Y, Z);
    ExtendedDistance b = directed_hausdorff(Z, Y);
    if (!a.infinite && !b.infinite) {
      out.status = EquivalenceVerdict::Status::equivalent_exact;
      out.bound = std::max(a.value, b.value);
      out.note = "eps(t) is at most the Hausdorff distance";
      return out;
    }
  } catch (const UnsupportedGeometry&) {
  }

  if (dimension(Y) == 1 && structural_witness(Y, Z, p, config, out)) return out;

  // Numeric grid: not a certificate. Several phases per step keep the grid from
  // aliasing with sets that repeat under multiplication by the growth factor.
  std::vector<Rational> ts;
  std::vector<Rational> ratios;
  const Rational phases[] = {Rational(1), Rational(5, 4), Rational(3, 2), Rational(7, 4)};
  // On the line, radii where a slice of Y or Z is nonempty are probed as well;
  // discrete sets seen from an off-lattice base point have empty slices almost everywhere.
  std::vector<LineSet> lines;
  if (dimension(Y) == 1) lines = {compile_line(Y), compile_line(Z)};
  Rational step = config.growth;
  Rational largest = 0;
  for (int k = 1; k <= config.horizon; ++k, step *= config.growth) {
    for (const auto& phase : phases) {
      Rational t = step * (1 + (phase - 1) * (config.growth - 1));
      std::vector<Rational> probes{t};
      for (const auto& line : lines) {
        for (int sign : {1, -1}) {
          Rational r = abs(line.nearest_point(p[0] + sign * t, 1) - p[0]);
          if (r > 0) probes.push_back(r);
        }
      }
      for (const auto& r : probes) {
        ts.push_back(r);
        ratios.push_back(ratio_squared(epsilon_t(Y, Z, p, r).eps(), r));
        largest = max(largest, r);
      }
    }
  }
  Rational top = largest / 10;
  double floor_sq = config.threshold * config.threshold;
  Rational worst = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] >= top) worst = max(worst, ratios[i]);
  }
  out.max_ratio = std::sqrt(to_double(worst));
  if (to_double(worst) < floor_sq) {
    out.status = EquivalenceVerdict::Status::equivalent_numerical;
    out.note = "max eps(t)/t over the top decade is below the threshold (not certified)";
    return out;
  }
  Rational low = -1;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < top || to_double(ratios[i]) < floor_sq) continue;
    out.witness_t.push_back(ts[i]);
    low = low < 0 ? ratios[i] : min(low, ratios[i]);
  }
  out.status = EquivalenceVerdict::Status::not_equivalent;
  out.witness_c = lower_root(low);
  out.note = "grid points of the top decade with eps(t)/t above the threshold";
  return out;
}

namespace {

struct Region {
  Rational lo, hi;
};

// Points of `source` at squared distance above thr_sq from `target`, first region first.
std::optional<Rational> far_point(const LineSet& source, const LineSet& target, const Rational& thr_sq,
                                  std::size_t& budget) {
  if (source.is_empty()) return std::nullopt;
  Rational extent = max(source.structural_extent(), target.structural_extent()) + 1;
  std::vector<Region> regions = {{-extent, extent}};
  Rational lo = extent;
  for (int j = 0; j < 62; ++j, lo *= 2) {
    regions.push_back({lo, 2 * lo});
    regions.push_back({-2 * lo, -lo});
  }
  const Rational slack(1, 1024);
  for (const auto& region : regions) {
    std::vector<Rational> candidates = {region.lo, region.hi};
    try {
      IntervalSet tp = target.pieces_avoiding(region.lo, region.hi, slack, 1 << 12);
      const auto& ps = tp.pieces();
      for (std::size_t i = 1; i < ps.size(); ++i) candidates.push_back((ps[i - 1].hi + ps[i].lo) / 2);
      if (!ps.empty()) {
        candidates.push_back((region.lo + ps.front().lo) / 2);
        candidates.push_back((ps.back().hi + region.hi) / 2);
      }
    } catch (const UnsupportedGeometry&) {
    }
    try {
      IntervalSet sp = source.pieces_avoiding(region.lo, region.hi, slack, 1 << 12);
      for (const auto& piece : sp.pieces()) {
        candidates.push_back(piece.lo);
        candidates.push_back(piece.hi);
      }
    } catch (const UnsupportedGeometry&) {
    }
    std::optional<Rational> found;
    for (const auto& m : candidates) {
      if (budget == 0) return found;
      --budget;
      Rational x;
      try {
        x = source.nearest_point(m, slack);
      } catch (const UnsupportedGeometry&) {
        continue;
      }
      Rational d = target.distance(x);
      if (d * d > thr_sq && (!found || abs(x) < abs(*found))) found = x;
    }
    if (found) return found;
  }
  return std::nullopt;
}

// A point of a bounded source maximising the distance to target, among the usual candidates.
Rational farthest_bounded(const LineSet& source, const LineSet& target) {
  std::vector<Rational> candidates;
  for (const auto& piece : source.core().pieces()) {
    candidates.push_back(piece.lo);
    candidates.push_back(piece.hi);
    IntervalSet tp = target.pieces_in(piece.lo, piece.hi);
    const auto& ps = tp.pieces();
    for (std::size_t i = 1; i < ps.size(); ++i) candidates.push_back((ps[i - 1].hi + ps[i].lo) / 2);
  }
  Rational best = candidates.front();
  Rational best_d = -1;
  for (const auto& m : candidates) {
    Rational x = source.nearest_point(m, Rational(1, 1024));
    Rational d = target.distance(x);
    if (d > best_d) {
      best_d = d;
      best = x;
    }
  }
  return best;
}

}  // namespace

EpsNetVerdict check_eps_net(const SetModel& Y, const SetModel& Z, const Rational& epsilon, std::size_t budget) {
  if (epsilon <= 0) throw InputError("epsilon must be positive");
  same_dimension(Y, Z);
  EpsNetVerdict out;
  std::optional<ExtendedDistance> hyz, hzy;
  try {
    hyz = directed_hausdorff(Y, Z);
    hzy = directed_hausdorff(Z, Y);
  } catch (const UnsupportedGeometry&) {
  }
  Distance eps = Distance::of(epsilon);
  if (hyz && hzy && !hyz->infinite && !hzy->infinite && hyz->value <= eps && hzy->value <= eps) {
    out.status = EpsNetVerdict::Status::certified;
    out.note = "Hausdorff distance " + std::max(hyz->value, hzy->value).exact_text() + " <= " + to_string(epsilon);
    return out;
  }
  Rational eps_sq = epsilon * epsilon;
  const SetModel* sets[2] = {&Z, &Y};
  for (int dir = 0; dir < 2; ++dir) {
    const SetModel& source = *sets[dir];
    const SetModel& target = *sets[1 - dir];
    if (dimension(source) == 1) {
      LineSet s = compile_line(source), t = compile_line(target);
      if (auto x = far_point(s, t, eps_sq, budget)) {
        out.status = EpsNetVerdict::Status::counterexample;
        out.point = {*x};
        out.point_in_y = dir == 1;
        out.distance = Distance::of(t.distance(*x));
        return out;
      }
      continue;
    }
    auto [sx, sy] = planar_factors(source);
    auto [tx, ty] = planar_factors(target);
    LineSet sxl = compile_line(sx), syl = compile_line(sy), txl = compile_line(tx), tyl = compile_line(ty);
    if (syl.unbounded()) continue;
    Rational y = farthest_bounded(syl, tyl);
    Rational dy = tyl.distance(y);
    Rational rest = eps_sq - dy * dy;
    std::optional<Rational> x;
    if (rest < 0) {
      x = sxl.nearest_point(0, Rational(1, 1024));
    } else {
      x = far_point(sxl, txl, rest, budget);
    }
    if (!x) continue;
    Rational dx = txl.distance(*x);
    Distance d = Distance::from_squared(dx * dx + dy * dy);
    if (d > eps) {
      out.status = EpsNetVerdict::Status::counterexample;
      out.point = {*x, y};
      out.point_in_y = dir == 1;
      out.distance = d;
      return out;
    }
  }
  out.note = "no certificate and no counterexample within the probe budget";
  return out;
}

NearestPointMaps build_nearest_point_maps(const SetModel& Y, const SetModel& Z, const Rational& eps1,
                                          const std::vector<PointSequenceSpec>& specs, const ScalingSequence& r,
                                          const EstimatorConfig& config) {
  if (eps1 <= 0) throw InputError("eps1 must be positive");
  same_dimension(Y, Z);
  NearestPointMaps out;
  if (dimension(Y) == 1) {
    auto zl = std::make_shared<LineSet>(compile_line(Z));
    auto yl = std::make_shared<LineSet>(compile_line(Y));
    out.phi = [zl, eps1](const AmbientPoint& y) { return AmbientPoint{zl->nearest_point(y.at(0), eps1)}; };
    out.psi = [yl, eps1](const AmbientPoint& z) { return AmbientPoint{yl->nearest_point(z.at(0), eps1)}; };
    for (const auto& spec : specs) {
      PointSequenceSpec image = PointSequenceSpec::in_set(spec.name + "->Z", Z, spec);
      out.residuals.push_back(d_up(spec, image, r, config));
    }
  } else {
    auto [yx, yy] = planar_factors(Y);
    auto [zx, zy] = planar_factors(Z);
    auto lines = std::make_shared<std::vector<LineSet>>(
        std::vector<LineSet>{compile_line(yx), compile_line(yy), compile_line(zx), compile_line(zy)});
    // The nearest point of a product is taken factor by factor.
    out.phi = [lines, eps1](const AmbientPoint& y) {
      return AmbientPoint{(*lines)[2].nearest_point(y.at(0), eps1), (*lines)[3].nearest_point(y.at(1), eps1)};
    };
    out.psi = [lines, eps1](const AmbientPoint& z) {
      return AmbientPoint{(*lines)[0].nearest_point(z.at(0), eps1), (*lines)[1].nearest_point(z.at(1), eps1)};
    };
    for (const auto& spec : specs) {
      std::vector<std::pair<long, Rational>> values;
      for (long n = config.horizon / 8 + 1; n <= config.horizon; ++n) {
        AmbientPoint y = {eval_point(spec, r, n), Rational(0)};
        AmbientPoint z = out.phi(y);
        Rational dx = z[0] - y[0], dy = z[1] - y[1];
        double d = Distance::from_squared(dx * dx + dy * dy).approx();
        values.emplace_back(n, from_double(d) / eval_scaling(r, n));
      }
      LimitEstimate e = estimate_limit(values, config);
      if (e.status == LimitEstimate::Status::no_limit) {
        e.status = LimitEstimate::Status::value;
        e.value = max(e.clusters[0], e.clusters[1]);
      }
      out.residuals.push_back(e);
    }
  }
  for (const auto& e : out.residuals) {
    if (!e.is_value(0)) out.residuals_zero = false;
  }
  return out;
}

}  // namespace asym
