#include "asym/set_model.hpp"

#include <algorithm>
#include <sstream>

namespace asym {

SetModel SetModel::lattice_model(const Rational& step, const Rational& offset, bool nonnegative_only) {
  SetModel m;
  m.kind = ModelKind::lattice;
  m.step = step;
  m.offset = offset;
  m.nonnegative_only = nonnegative_only;
  return m;
}

SetModel SetModel::ray_model(const Rational& origin, int direction) {
  SetModel m;
  m.kind = ModelKind::ray;
  m.origin = origin;
  m.direction = direction;
  return m;
}

SetModel SetModel::full() { return {}; }

SetModel SetModel::geometric_points_model(const Rational& q, const Rational& c, long n0) {
  SetModel m;
  m.kind = ModelKind::geometric_points;
  m.q = q;
  m.c = c;
  m.n0 = n0;
  return m;
}

SetModel SetModel::geometric_blocks_model(const Rational& q, const Rational& a, const Rational& b,
                                          std::optional<long> n0) {
  SetModel m;
  m.kind = ModelKind::geometric_blocks;
  m.q = q;
  m.a = a;
  m.b = b;
  m.n0 = n0;
  return m;
}

SetModel SetModel::periodic_blocks_model(const Rational& period, std::vector<Interval> blocks,
                                         const Rational& start) {
  SetModel m;
  m.kind = ModelKind::periodic_blocks;
  m.period = period;
  m.blocks = std::move(blocks);
  m.start = start;
  return m;
}

SetModel SetModel::points_model(const std::vector<Rational>& points, std::vector<Interval> intervals) {
  SetModel m;
  m.kind = ModelKind::points;
  for (const auto& p : points) m.blocks.push_back(Interval::point(p));
  for (auto& iv : intervals) m.blocks.push_back(iv);
  return m;
}

SetModel SetModel::union_model(std::vector<SetModel> members) {
  SetModel m;
  m.kind = ModelKind::finite_union;
  m.children = std::move(members);
  return m;
}

SetModel SetModel::modification(SetModel base, std::vector<Rational> added, std::vector<Interval> removed) {
  SetModel m;
  m.kind = ModelKind::finite_modification;
  m.children.push_back(std::move(base));
  m.added = std::move(added);
  m.removed = std::move(removed);
  return m;
}

SetModel SetModel::product_model(SetModel x, SetModel y) {
  SetModel m;
  m.kind = ModelKind::product;
  m.children.push_back(std::move(x));
  m.children.push_back(std::move(y));
  return m;
}

SetModel SetModel::strip(const Rational& c1, const Rational& c2) {
  SetModel m;
  m.kind = ModelKind::half_plane_strip;
  m.c1 = c1;
  m.c2 = c2;
  return m;
}

SetModel SetModel::planar_ray() { return product_model(ray_model(0, 1), points_model({Rational(0)})); }

int dimension(const SetModel& model) {
  switch (model.kind) {
    case ModelKind::product:
    case ModelKind::half_plane_strip:
      return 2;
    case ModelKind::finite_union:
      return model.children.empty() ? 1 : dimension(model.children.front());
    default:
      return 1;
  }
}

void validate(const SetModel& m, bool top_level) {
  switch (m.kind) {
    case ModelKind::lattice:
      if (m.step <= 0) throw InputError("lattice step must be positive");
      break;
    case ModelKind::ray:
      if (m.direction != 1 && m.direction != -1) throw InputError("ray direction must be +1 or -1");
      break;
    case ModelKind::full_line:
      break;
    case ModelKind::geometric_points:
      if (m.q <= 1) throw InputError("geometric_points needs q > 1");
      if (m.c <= 0) throw InputError("geometric_points needs c > 0");
      if (!m.n0) throw InputError("geometric_points needs a start index");
      break;
    case ModelKind::geometric_blocks:
      if (m.q <= 1) throw InputError("geometric_blocks needs q > 1");
      if (!(m.a > 0 && m.a < m.b && m.b <= m.a * m.q)) throw InputError("geometric_blocks needs 0 < a < b <= a*q");
      break;
    case ModelKind::periodic_blocks:
      if (m.period <= 0) throw InputError("periodic_blocks needs a positive period");
      if (m.blocks.empty()) throw InputError("periodic_blocks needs at least one block");
      for (const auto& b : m.blocks) {
        if (b.lo < 0 || b.lo > b.hi || b.hi > m.period) {
          throw InputError("periodic block [" + to_string(b.lo) + ", " + to_string(b.hi) + "] is not inside [0, period]");
        }
      }
      break;
    case ModelKind::points:
      if (m.blocks.empty()) throw InputError("points model needs at least one point");
      for (const auto& b : m.blocks) {
        if (b.lo > b.hi) throw InputError("reversed interval in points model");
      }
      break;
    case ModelKind::finite_union: {
      if (m.children.empty()) throw InputError("union needs at least one member");
      int dim = dimension(m.children.front());
      for (const auto& child : m.children) {
        validate(child, false);
        if (dimension(child) != dim) throw InputError("union members have different dimensions");
      }
      if (dim != 1) throw UnsupportedGeometry("unions of planar models are not supported");
      break;
    }
    case ModelKind::finite_modification:
      if (m.children.size() != 1) throw InputError("modification needs exactly one base model");
      validate(m.children.front(), false);
      if (dimension(m.children.front()) != 1) throw UnsupportedGeometry("planar modifications are not supported");
      for (const auto& r : m.removed) {
        if (r.lo > r.hi) throw InputError("reversed removed interval");
      }
      break;
    case ModelKind::product:
      if (m.children.size() != 2) throw InputError("product needs two factors");
      for (const auto& child : m.children) {
        validate(child, false);
        if (dimension(child) != 1) throw InputError("product factors must be one-dimensional");
      }
      if (top_level && !compile_line(m.children[0]).unbounded() && !compile_line(m.children[1]).unbounded()) {
        throw InputError("model is bounded; an unbounded set is required");
      }
      return;
    case ModelKind::half_plane_strip:
      if (!(m.c1 < 0 && 0 < m.c2)) throw InputError("strip needs c1 < 0 < c2");
      return;
  }
  if (top_level && !compile_line(m).unbounded()) throw InputError("model is bounded; an unbounded set is required");
}

LineSet compile_line(const SetModel& m) {
  switch (m.kind) {
    case ModelKind::lattice:
      return LineSet::periodic(m.step, m.offset, IntervalSet({Interval::point(0)}), m.nonnegative_only);
    case ModelKind::ray:
      return LineSet::ray(m.origin, m.direction);
    case ModelKind::full_line:
      return LineSet::full_line();
    case ModelKind::geometric_points:
      return LineSet::geometric(m.q, 0, IntervalSet({Interval::point(m.c)}), m.n0.value_or(0));
    case ModelKind::geometric_blocks:
      return LineSet::geometric(m.q, 0, IntervalSet({Interval::closed(m.a, m.b)}), m.n0);
    case ModelKind::periodic_blocks:
      return LineSet::periodic(m.period, m.start, IntervalSet(m.blocks), true);
    case ModelKind::points:
      return LineSet::from_core(IntervalSet(m.blocks));
    case ModelKind::finite_union: {
      LineSet out;
      for (const auto& child : m.children) out = out.unite(compile_line(child));
      return out;
    }
    case ModelKind::finite_modification: {
      LineSet out = compile_line(m.children.front());
      for (const auto& r : m.removed) out = out.subtract(r);
      std::vector<Interval> pts;
      for (const auto& p : m.added) pts.push_back(Interval::point(p));
      if (!pts.empty()) out = out.unite(LineSet::from_core(IntervalSet(pts)));
      return out;
    }
    case ModelKind::product:
    case ModelKind::half_plane_strip:
      throw InputError("planar model used where a subset of the line is required");
  }
  throw InvariantFailure("unknown model kind");
}

std::pair<SetModel, SetModel> planar_factors(const SetModel& m) {
  if (m.kind == ModelKind::product) return {m.children[0], m.children[1]};
  if (m.kind == ModelKind::half_plane_strip) {
    return {SetModel::ray_model(0, 1), SetModel::points_model({}, {Interval::closed(m.c1, m.c2)})};
  }
  throw InputError("model is not planar");
}

namespace {

void check_dimension(const SetModel& m, const AmbientPoint& x) {
  if (static_cast<int>(x.size()) != dimension(m)) {
    throw InputError("point has dimension " + std::to_string(x.size()) + " but the model has dimension " +
                     std::to_string(dimension(m)));
  }
}

// The x factor of a planar model, as seen by circles about the origin.
enum class AxisFactor { full, positive, negative, zero };

AxisFactor classify_axis(const SetModel& factor) {
  LineSet line = compile_line(factor);
  if (line == LineSet::full_line()) return AxisFactor::full;
  if (line == LineSet::ray(0, 1)) return AxisFactor::positive;
  if (line == LineSet::ray(0, -1)) return AxisFactor::negative;
  if (line == LineSet::from_core(IntervalSet({Interval::point(0)}))) return AxisFactor::zero;
  throw UnsupportedGeometry("circle slices need the x factor to be the line, a ray from 0, or {0}");
}

bool sign_allowed(AxisFactor f, int sign) {
  switch (f) {
    case AxisFactor::full:
      return true;
    case AxisFactor::positive:
      return sign > 0;
    case AxisFactor::negative:
      return sign < 0;
    case AxisFactor::zero:
      return false;
  }
  return false;
}

}  // namespace

bool contains(const SetModel& m, const AmbientPoint& x) {
  check_dimension(m, x);
  if (dimension(m) == 1) return compile_line(m).contains(x[0]);
  auto [fx, fy] = planar_factors(m);
  return compile_line(fx).contains(x[0]) && compile_line(fy).contains(x[1]);
}

Rational distance_to_set(const SetModel& m, const Rational& x) { return compile_line(m).distance(x); }

Distance distance_to_set(const SetModel& m, const AmbientPoint& x) {
  check_dimension(m, x);
  if (dimension(m) == 1) return Distance::of(compile_line(m).distance(x[0]));
  auto [fx, fy] = planar_factors(m);
  Rational dx = compile_line(fx).distance(x[0]);
  Rational dy = compile_line(fy).distance(x[1]);
  return Distance::from_squared(dx * dx + dy * dy);
}

SphereSlice sphere_slice(const SetModel& m, const AmbientPoint& p, const Rational& t) {
  check_dimension(m, p);
  if (t <= 0) throw InputError("sphere radius must be positive");
  SphereSlice out;
  if (dimension(m) == 1) {
    LineSet line = compile_line(m);
    for (const Rational& x : {Rational(p[0] - t), Rational(p[0] + t)}) {
      if (line.contains(x)) out.points.push_back(x);
    }
    return out;
  }
  if (p[0] != 0 || p[1] != 0) throw UnsupportedGeometry("planar circle slices are supported about the origin only");
  auto [fx, fy] = planar_factors(m);
  AxisFactor axis = classify_axis(fx);
  IntervalSet ys = compile_line(fy).pieces_in(-t, t);
  if (axis == AxisFactor::zero) {
    for (const Rational& y : {Rational(-t), t}) {
      if (ys.contains(y)) out.arcs.push_back({1, y, y, true, true});
    }
    return out;
  }
  for (int sign : {1, -1}) {
    if (!sign_allowed(axis, sign)) continue;
    for (const auto& piece : ys.pieces()) out.arcs.push_back({sign, piece.lo, piece.hi, piece.lo_closed, piece.hi_closed});
  }
  // A ray from 0 still meets the circle at (0, +-t) from the other side; those
  // points already lie on the allowed arcs when y = +-t is in the y factor.
  return out;
}

Distance sup_distance_on_arc(const SetModel& m, const Arc& arc, const Rational& t) {
  auto [fx, fy] = planar_factors(m);
  AxisFactor axis = classify_axis(fx);
  LineSet yline = compile_line(fy);
  bool x_term = !sign_allowed(axis, arc.sign);
  std::vector<Rational> candidates = {arc.y_lo, arc.y_hi};
  if (arc.y_lo < 0 && 0 < arc.y_hi) candidates.emplace_back(0);
  Rational reach = (arc.y_hi - arc.y_lo) + yline.distance(arc.y_lo) + yline.distance(arc.y_hi) + 1;
  IntervalSet near = yline.pieces_in(arc.y_lo - reach, arc.y_hi + reach);
  const auto& ps = near.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (const Rational& y : {ps[i].lo, ps[i].hi}) {
      if (y > arc.y_lo && y < arc.y_hi) candidates.push_back(y);
    }
    if (i > 0) {
      Rational mid = (ps[i - 1].hi + ps[i].lo) / 2;
      if (mid > arc.y_lo && mid < arc.y_hi) candidates.push_back(mid);
    }
  }
  Rational best = 0;
  for (const auto& y : candidates) {
    Rational dy = yline.distance(y);
    Rational sq = dy * dy + (x_term ? Rational(t * t - y * y) : Rational(0));
    best = max(best, sq);
  }
  return Distance::from_squared(best);
}

SetModel scale_model(const SetModel& m, const Rational& k) {
  if (k <= 0) throw InputError("scale factor must be positive");
  SetModel out = m;
  auto scale_interval = [&](Interval iv) {
    iv.lo *= k;
    iv.hi *= k;
    return iv;
  };
  switch (m.kind) {
    case ModelKind::lattice:
      out.step *= k;
      out.offset *= k;
      break;
    case ModelKind::ray:
      out.origin *= k;
      break;
    case ModelKind::full_line:
      break;
    case ModelKind::geometric_points:
      out.c *= k;
      break;
    case ModelKind::geometric_blocks:
      out.a *= k;
      out.b *= k;
      break;
    case ModelKind::periodic_blocks:
      out.period *= k;
      out.start *= k;
      for (auto& b : out.blocks) b = scale_interval(b);
      break;
    case ModelKind::points:
      for (auto& b : out.blocks) b = scale_interval(b);
      break;
    case ModelKind::finite_union:
    case ModelKind::product:
      for (auto& child : out.children) child = scale_model(child, k);
      break;
    case ModelKind::finite_modification:
      out.children.front() = scale_model(out.children.front(), k);
      for (auto& p : out.added) p *= k;
      for (auto& r : out.removed) r = scale_interval(r);
      break;
    case ModelKind::half_plane_strip:
      out.c1 *= k;
      out.c2 *= k;
      break;
  }
  return out;
}

Rational longest_gap(const SetModel& m, const Rational& h) {
  if (h <= 0) throw InputError("h must be positive");
  LineSet line = compile_line(m);
  if (!line.within_nonnegative()) throw UnsupportedGeometry("longest_gap needs a subset of [0, inf)");
  return line.summary(0, h).longest_gap();
}

std::string describe(const SetModel& m) {
  std::ostringstream os;
  auto iv = [](const Interval& i) {
    return std::string(i.lo_closed ? "[" : "(") + to_string(i.lo) + "," + to_string(i.hi) + (i.hi_closed ? "]" : ")");
  };
  switch (m.kind) {
    case ModelKind::lattice:
      os << "lattice(" << to_string(m.step) << "," << to_string(m.offset) << (m.nonnegative_only ? ",k>=0" : "") << ")";
      break;
    case ModelKind::ray:
      os << "ray(" << to_string(m.origin) << "," << (m.direction > 0 ? "+" : "-") << ")";
      break;
    case ModelKind::full_line:
      os << "full_line";
      break;
    case ModelKind::geometric_points:
      os << "geometric_points(" << to_string(m.q) << "," << to_string(m.c) << "," << *m.n0 << ")";
      break;
    case ModelKind::geometric_blocks:
      os << "geometric_blocks(" << to_string(m.q) << "," << to_string(m.a) << "," << to_string(m.b);
      if (m.n0) os << ",n>=" << *m.n0;
      os << ")";
      break;
    case ModelKind::periodic_blocks:
      os << "periodic_blocks(" << to_string(m.period) << ",";
      for (const auto& b : m.blocks) os << iv(b);
      os << ",start=" << to_string(m.start) << ")";
      break;
    case ModelKind::points:
      os << "points(";
      for (const auto& b : m.blocks) os << iv(b);
      os << ")";
      break;
    case ModelKind::finite_union:
      os << "union(";
      for (std::size_t i = 0; i < m.children.size(); ++i) os << (i ? "," : "") << describe(m.children[i]);
      os << ")";
      break;
    case ModelKind::finite_modification:
      os << "modify(" << describe(m.children.front());
      for (const auto& p : m.added) os << ",+" << to_string(p);
      for (const auto& r : m.removed) os << ",-" << iv(r);
      os << ")";
      break;
    case ModelKind::product:
      os << "product(" << describe(m.children[0]) << "," << describe(m.children[1]) << ")";
      break;
    case ModelKind::half_plane_strip:
      os << "strip(" << to_string(m.c1) << "," << to_string(m.c2) << ")";
      break;
  }
  return os.str();
}

}  // namespace asym
