#include "asym/line_set.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <utility>

namespace asym {

namespace {

constexpr int max_common_power_exponent = 12;

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer gcd_int(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Least common multiple of two positive rationals.
Rational lcm_rational(const Rational& a, const Rational& b) {
  Rational out(lcm_int(a.get_num(), b.get_num()), gcd_int(a.get_den(), b.get_den()));
  out.canonicalize();
  return out;
}

// Reduces pieces (given relative to an anchor) into the half-open period [0, period).
// Returns nullopt when the pattern covers the whole period.
std::optional<IntervalSet> reduce_periodic(const IntervalSet& pieces, const Rational& period) {
  IntervalSet out;
  for (Interval piece : pieces.pieces()) {
    if (piece.length() > period || (piece.length() == period && piece.lo_closed && piece.hi_closed)) {
      return std::nullopt;
    }
    Integer k = floor_int(piece.lo / period);
    Rational shift = Rational(k) * period;
    piece.lo -= shift;
    piece.hi -= shift;
    for (int round = 0; round < 3 && !piece.empty(); ++round) {
      out.unite(IntervalSet({piece}).clip_half_open(0, period));
      if (piece.hi < period || (piece.hi == period && !piece.hi_closed)) break;
      Interval rest = piece;
      rest.lo = period;
      rest.lo_closed = true;
      rest.lo -= period;
      rest.hi -= period;
      piece = rest;
    }
  }
  if (out.size() == 1 && out.pieces().front().lo == 0 && out.pieces().front().lo_closed &&
      out.pieces().front().hi == period) {
    return std::nullopt;
  }
  return out;
}

// Reduces pieces of (0, inf) into the multiplicative period [1, base).
std::optional<IntervalSet> reduce_geometric(const IntervalSet& pieces, const Rational& base) {
  IntervalSet out;
  for (Interval piece : pieces.pieces()) {
    if (piece.lo <= 0) throw InputError("geometric pattern must lie in (0, inf)");
    Rational ratio = piece.hi / piece.lo;
    if (ratio > base || (ratio == base && piece.lo_closed && piece.hi_closed)) return std::nullopt;
    long k = floor_log(piece.lo, base);
    Rational factor = pow(base, -k);
    piece.lo *= factor;
    piece.hi *= factor;
    for (int round = 0; round < 3 && !piece.empty(); ++round) {
      out.unite(IntervalSet({piece}).clip_half_open(1, base));
      if (piece.hi < base || (piece.hi == base && !piece.hi_closed)) break;
      Interval rest = piece;
      rest.lo = base;
      rest.lo_closed = true;
      rest.lo /= base;
      rest.hi /= base;
      piece = rest;
    }
  }
  if (out.size() == 1 && out.pieces().front().lo == 1 && out.pieces().front().lo_closed &&
      out.pieces().front().hi == base) {
    return std::nullopt;
  }
  return out;
}

Rational x_of(const TailComponent& c, const Rational& u) { return c.orient > 0 ? u : Rational(-u); }

// Keeps only u >= cut (or u > cut when the cut is open).
IntervalSet apply_cut(const TailComponent& c, IntervalSet pieces) {
  if (pieces.empty()) return pieces;
  Rational hi = *pieces.sup();
  if (hi < c.cut) return {};
  pieces = pieces.clip(c.cut, hi);
  if (!c.cut_closed) pieces.subtract(Interval::point(c.cut));
  return pieces;
}

// Pieces of the component with u in [ulo, uhi]. Pieces within `avoid` of an
// accumulation center are skipped when avoid is set.
IntervalSet law_pieces_u(const TailComponent& c, Rational ulo, const Rational& uhi, std::size_t cap,
                         const std::optional<Rational>& avoid = std::nullopt) {
  if (uhi < c.cut || ulo > uhi) return {};
  if (ulo < c.cut) ulo = c.cut;
  IntervalSet out;
  switch (c.kind) {
    case LawKind::full:
      out = IntervalSet({Interval::closed(ulo, uhi)});
      break;
    case LawKind::periodic: {
      Integer k_lo = floor_int((ulo - c.anchor) / c.period);
      Integer k_hi = floor_int((uhi - c.anchor) / c.period);
      Integer count = (k_hi - k_lo + 1) * static_cast<unsigned long>(c.pattern.size());
      if (count > static_cast<unsigned long>(cap)) {
        throw UnsupportedGeometry("window needs " + count.get_str() + " periodic pieces (cap " +
                                  std::to_string(cap) + ")");
      }
      std::vector<Interval> pieces;
      for (Integer k = k_lo; k <= k_hi; ++k) {
        Rational shift = c.anchor + Rational(k) * c.period;
        for (const auto& p : c.pattern.pieces()) {
          pieces.push_back({p.lo + shift, p.hi + shift, p.lo_closed, p.hi_closed});
        }
      }
      out = IntervalSet(std::move(pieces)).clip(ulo, uhi);
      break;
    }
    case LawKind::geometric: {
      Rational v_lo = ulo - c.center;
      Rational v_hi = uhi - c.center;
      if (v_hi <= 0) return {};
      if (avoid && v_lo < *avoid) v_lo = *avoid;
      if (v_lo <= 0) {
        throw AccumulationError("window reaches the accumulation point " + to_string(x_of(c, c.center)));
      }
      if (v_lo > v_hi) return {};
      long k_lo = floor_log(v_lo, c.base);
      long k_hi = floor_log(v_hi, c.base);
      Integer count = Integer(k_hi - k_lo + 1) * static_cast<unsigned long>(c.pattern.size());
      if (count > static_cast<unsigned long>(cap)) {
        throw UnsupportedGeometry("window needs " + count.get_str() + " geometric pieces");
      }
      std::vector<Interval> pieces;
      Rational scale = pow(c.base, k_lo);
      for (long k = k_lo; k <= k_hi; ++k) {
        for (const auto& p : c.pattern.pieces()) {
          pieces.push_back({c.center + p.lo * scale, c.center + p.hi * scale, p.lo_closed, p.hi_closed});
        }
        scale *= c.base;
      }
      out = IntervalSet(std::move(pieces)).clip(c.center + v_lo, uhi);
      break;
    }
  }
  return apply_cut(c, std::move(out));
}

IntervalSet comp_pieces_x(const TailComponent& c, const Rational& lo, const Rational& hi, std::size_t cap,
                          const std::optional<Rational>& avoid = std::nullopt) {
  if (c.orient > 0) return law_pieces_u(c, lo, hi, cap, avoid);
  return law_pieces_u(c, -hi, -lo, cap, avoid).affine(-1, 0);
}

struct NearResult {
  Rational distance;
  Rational point;
  bool attained = true;
};

// Nearest piece of an explicit set to x (the set must be nonempty).
NearResult nearest_in_pieces(const IntervalSet& pieces, const Rational& x) {
  NearResult best;
  bool have = false;
  for (const auto& p : pieces.pieces()) {
    Rational d = p.distance(x);
    if (!have || d < best.distance) {
      have = true;
      best.distance = d;
      if (x < p.lo) {
        best.point = p.lo;
        best.attained = p.lo_closed;
      } else if (x > p.hi) {
        best.point = p.hi;
        best.attained = p.hi_closed;
      } else {
        best.point = x;
        best.attained = p.contains(x);
        if (!best.attained) best.point = (x == p.lo) ? p.lo : p.hi;
      }
    }
  }
  if (!have) throw InvariantFailure("nearest_in_pieces on an empty window");
  return best;
}

// Pieces of the component that surely contain its nearest piece to x.
NearResult comp_nearest(const TailComponent& c, const Rational& x) {
  Rational u = c.orient > 0 ? x : Rational(-x);
  const std::size_t cap = LineSet::default_piece_cap;
  IntervalSet window;
  switch (c.kind) {
    case LawKind::full: {
      NearResult r;
      if (u >= c.cut) {
        r.distance = 0;
        r.point = x;
        r.attained = u > c.cut || c.cut_closed;
      } else {
        r.distance = c.cut - u;
        r.point = x_of(c, c.cut);
        r.attained = c.cut_closed;
      }
      return r;
    }
    case LawKind::periodic:
      if (u < c.cut) {
        window = law_pieces_u(c, c.cut, c.cut + c.period, cap);
      } else {
        window = law_pieces_u(c, max(c.cut, u - c.period), u + c.period, cap);
      }
      break;
    case LawKind::geometric: {
      Rational v = u - c.center;
      if (c.accumulates() && v <= 0) {
        NearResult r;
        r.distance = -v;
        r.point = x_of(c, c.center);
        r.attained = false;
        return r;
      }
      if (u <= c.cut) {
        window = law_pieces_u(c, c.cut, c.center + (c.cut - c.center) * c.base * c.base, cap);
      } else {
        Rational lo = c.center + v / (c.base * c.base);
        window = law_pieces_u(c, max(lo, c.cut), c.center + v * c.base * c.base, cap);
      }
      break;
    }
  }
  if (c.orient < 0) window = window.affine(-1, 0);
  return nearest_in_pieces(window, x);
}

Rational gap_midpoint(const Interval& left, const Interval& right) { return (left.hi + right.lo) / 2; }

}  // namespace

long LengthProfile::multiplicity(const Rational& length) const {
  if (std::find(periodic_lengths.begin(), periodic_lengths.end(), length) != periodic_lengths.end()) return -1;
  long count = static_cast<long>(std::count(explicit_lengths.begin(), explicit_lengths.end(), length));
  for (const auto& f : families) {
    if (length <= 0 || f.generator <= 0) continue;
    Rational q = length / f.generator;
    long k = q >= 1 ? floor_log(q, f.ratio) : -floor_log(1 / q, f.ratio);
    if (pow(f.ratio, k) != q) continue;
    if (f.k_min && k < *f.k_min) continue;
    if (f.k_max && k > *f.k_max) continue;
    ++count;
  }
  return count;
}

std::optional<Rational> common_power(const Rational& a, const Rational& b) {
  if (a <= 1 || b <= 1) return std::nullopt;
  for (int i = 1; i <= max_common_power_exponent; ++i) {
    Rational ai = pow(a, i);
    for (int j = 1; j <= max_common_power_exponent; ++j) {
      Rational bj = pow(b, j);
      if (bj == ai) return ai;
      if (bj > ai) break;
    }
  }
  return std::nullopt;
}

LineSet LineSet::from_core(IntervalSet core) {
  LineSet s;
  s.core_ = std::move(core);
  return s;
}

LineSet LineSet::full_line() { return ray(0, 1).unite(ray(0, -1)); }

LineSet LineSet::ray(const Rational& origin, int direction) {
  TailComponent c;
  c.orient = direction > 0 ? 1 : -1;
  c.kind = LawKind::full;
  c.cut = direction > 0 ? origin : Rational(-origin);
  LineSet s;
  s.comps_.push_back(c);
  s.normalize();
  return s;
}

LineSet LineSet::periodic(const Rational& period, const Rational& anchor, const IntervalSet& pattern,
                          bool one_sided) {
  if (period <= 0) throw InputError("period must be positive");
  if (pattern.empty()) throw InputError("periodic pattern must be nonempty");
  auto reduced = reduce_periodic(pattern, period);
  LineSet s;
  TailComponent c;
  c.orient = 1;
  c.cut = anchor + *pattern.inf();
  if (!reduced) {
    c.kind = LawKind::full;
    s.comps_.push_back(c);
    if (!one_sided) s.comps_.push_back({-1, LawKind::full, -c.cut, true, {}, {}, {}, {}, {}});
    s.normalize();
    return s;
  }
  c.kind = LawKind::periodic;
  c.period = period;
  c.anchor = anchor;
  c.pattern = *reduced;
  s.comps_.push_back(c);
  if (!one_sided) {
    TailComponent m = c;
    m.orient = -1;
    auto mirrored = reduce_periodic(pattern.affine(-1, 0), period);
    m.pattern = *mirrored;
    m.anchor = -anchor;
    m.cut = -c.cut;
    s.comps_.push_back(m);
  }
  s.normalize();
  return s;
}

LineSet LineSet::geometric(const Rational& base, const Rational& center, const IntervalSet& block,
                           std::optional<long> start) {
  if (base <= 1) throw InputError("geometric base must exceed 1");
  if (block.empty() || *block.inf() <= 0) throw InputError("geometric block must lie in (0, inf)");
  auto reduced = reduce_geometric(block, base);
  TailComponent c;
  c.orient = 1;
  c.center = center;
  if (start) {
    c.cut = center + *block.inf() * pow(base, *start);
    c.cut_closed = block.pieces().front().lo_closed;
  } else {
    c.cut = center;
    c.cut_closed = false;
  }
  if (!reduced) {
    c.kind = LawKind::full;
  } else {
    c.kind = LawKind::geometric;
    c.base = base;
    c.pattern = *reduced;
  }
  LineSet s;
  s.comps_.push_back(c);
  s.normalize();
  return s;
}

void LineSet::materialize(TailComponent& comp, const Rational& new_cut) {
  if (new_cut < comp.cut) return;
  if (comp.accumulates()) {
    throw UnsupportedGeometry("cannot materialize a two-sided geometric law near its accumulation point");
  }
  IntervalSet pieces = law_pieces_u(comp, comp.cut, new_cut, default_piece_cap);
  if (comp.orient < 0) pieces = pieces.affine(-1, 0);
  core_.unite(pieces);
  comp.cut = new_cut;
  comp.cut_closed = false;
}

void LineSet::normalize() {
  std::erase_if(comps_, [](const TailComponent& c) { return c.kind != LawKind::full && c.pattern.empty(); });
  for (auto& c : comps_) {
    if (c.kind == LawKind::periodic) {
      Integer k = floor_int(c.anchor / c.period);
      c.anchor -= Rational(k) * c.period;
    }
  }
  std::vector<TailComponent> distinct;
  for (const auto& c : comps_) {
    if (std::find(distinct.begin(), distinct.end(), c) == distinct.end()) distinct.push_back(c);
  }
  comps_ = std::move(distinct);
  for (int orient : {1, -1}) {
    // Keep the widest full law per side.
    std::optional<std::size_t> widest;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      const auto& c = comps_[i];
      if (c.orient != orient || c.kind != LawKind::full) continue;
      if (!widest || c.cut < comps_[*widest].cut ||
          (c.cut == comps_[*widest].cut && c.cut_closed && !comps_[*widest].cut_closed)) {
        widest = i;
      }
    }
    if (widest) {
      TailComponent keep = comps_[*widest];
      std::vector<TailComponent> rest;
      for (const auto& c : comps_) {
        if (c.orient == orient && c.kind == LawKind::full) continue;
        // Laws entirely inside the full ray add nothing.
        if (c.orient == orient && c.cut > keep.cut) continue;
        rest.push_back(c);
      }
      rest.push_back(keep);
      comps_ = std::move(rest);
    }

    // Merge periodic laws on this side into one law over the lcm period.
    std::vector<std::size_t> periodic_idx;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (comps_[i].orient == orient && comps_[i].kind == LawKind::periodic) periodic_idx.push_back(i);
    }
    if (periodic_idx.size() > 1) {
      Rational new_cut = comps_[periodic_idx.front()].cut;
      Rational period = comps_[periodic_idx.front()].period;
      for (auto i : periodic_idx) {
        new_cut = max(new_cut, comps_[i].cut);
        period = lcm_rational(period, comps_[i].period);
      }
      IntervalSet pattern;
      for (auto i : periodic_idx) {
        materialize(comps_[i], new_cut);
        pattern.unite(law_pieces_u(comps_[i], new_cut, new_cut + period, default_piece_cap));
      }
      TailComponent merged;
      merged.orient = orient;
      merged.kind = LawKind::periodic;
      merged.cut = new_cut;
      merged.cut_closed = false;
      merged.period = period;
      merged.anchor = new_cut;
      auto reduced = reduce_periodic(pattern.affine(1, -new_cut), period);
      if (!reduced) {
        merged.kind = LawKind::full;
      } else {
        merged.pattern = *reduced;
      }
      std::vector<TailComponent> rest;
      for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (std::find(periodic_idx.begin(), periodic_idx.end(), i) == periodic_idx.end()) rest.push_back(comps_[i]);
      }
      rest.push_back(merged);
      comps_ = std::move(rest);
      if (merged.kind == LawKind::full) {
        normalize();
        return;
      }
    }
  }

  // Periodic domains on opposite sides must not overlap.
  auto find_periodic = [&](int orient) -> TailComponent* {
    for (auto& c : comps_) {
      if (c.orient == orient && c.kind == LawKind::periodic) return &c;
    }
    return nullptr;
  };
  TailComponent* pos = find_periodic(1);
  TailComponent* neg = find_periodic(-1);
  if (pos && neg && pos->cut <= -neg->cut) materialize(*pos, -neg->cut);

  std::sort(comps_.begin(), comps_.end(), [](const TailComponent& a, const TailComponent& b) {
    if (a.orient != b.orient) return a.orient > b.orient;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.cut != b.cut) return a.cut < b.cut;
    if (a.base != b.base) return a.base < b.base;
    return a.period < b.period;
  });
  comps_.erase(std::unique(comps_.begin(), comps_.end()), comps_.end());
}

LineSet LineSet::unite(const LineSet& other) const {
  LineSet out = *this;
  out.core_.unite(other.core_);
  out.comps_.insert(out.comps_.end(), other.comps_.begin(), other.comps_.end());
  out.normalize();
  return out;
}

LineSet LineSet::subtract(const Interval& removed) const {
  if (removed.empty()) return *this;
  LineSet out = *this;
  for (auto& c : out.comps_) {
    Rational u_max = c.orient > 0 ? removed.hi : Rational(-removed.lo);
    if (u_max < c.cut) continue;
    if (c.accumulates()) {
      Rational u_min = c.orient > 0 ? removed.lo : Rational(-removed.hi);
      if (u_max <= c.center) continue;
      (void)u_min;
      throw UnsupportedGeometry("removing points from a two-sided geometric law is not supported");
    }
    out.materialize(c, u_max);
  }
  out.core_.subtract(removed);
  out.normalize();
  return out;
}

LineSet LineSet::affine(int sign, const Rational& shift) const {
  LineSet out;
  out.core_ = core_.affine(sign, shift);
  for (auto c : comps_) {
    c.orient *= sign;
    Rational t = c.orient > 0 ? shift : Rational(-shift);
    c.cut += t;
    c.anchor += t;
    c.center += t;
    out.comps_.push_back(c);
  }
  out.normalize();
  return out;
}

LineSet LineSet::scaled(const Rational& factor) const {
  if (factor <= 0) throw InputError("scale factor must be positive");
  LineSet out;
  out.core_ = core_.scaled(factor);
  for (auto c : comps_) {
    c.cut *= factor;
    c.anchor *= factor;
    c.center *= factor;
    if (c.kind == LawKind::periodic) {
      c.period *= factor;
      c.pattern = c.pattern.scaled(factor);
    } else if (c.kind == LawKind::geometric) {
      auto reduced = reduce_geometric(c.pattern.scaled(factor), c.base);
      if (!reduced) throw InvariantFailure("scaling turned a geometric pattern full");
      c.pattern = *reduced;
    }
    out.comps_.push_back(c);
  }
  out.normalize();
  return out;
}

LineSet LineSet::nonnegative_part() const {
  LineSet out;
  if (!core_.empty() && *core_.sup() >= 0) out.core_ = core_.clip(0, *core_.sup());
  for (auto c : comps_) {
    if (c.orient > 0) {
      if (c.cut < 0) {
        c.cut = 0;
        c.cut_closed = true;
      }
      out.comps_.push_back(c);
      continue;
    }
    // Domain x <= -cut; keep the bounded part inside [0, -cut].
    Rational top = -c.cut;
    if (top < 0) continue;
    if (c.accumulates() && -c.center > 0) {
      throw UnsupportedGeometry("accumulation from the left inside [0, inf) is not supported");
    }
    out.core_.unite(comp_pieces_x(c, 0, top, default_piece_cap));
  }
  out.normalize();
  return out;
}

LineSet LineSet::fold(const Rational& p) const {
  return affine(1, -p).nonnegative_part().unite(affine(-1, p).nonnegative_part());
}

bool LineSet::unbounded_above() const {
  return std::any_of(comps_.begin(), comps_.end(), [](const TailComponent& c) { return c.orient > 0; });
}

bool LineSet::unbounded_below() const {
  return std::any_of(comps_.begin(), comps_.end(), [](const TailComponent& c) { return c.orient < 0; });
}

bool LineSet::within_nonnegative() const {
  if (!core_.empty() && *core_.inf() < 0) return false;
  for (const auto& c : comps_) {
    if (c.orient < 0) return false;
    if (c.cut < 0) return false;
  }
  return true;
}

bool LineSet::contains(const Rational& x) const {
  if (core_.contains(x)) return true;
  for (const auto& c : comps_) {
    Rational u = c.orient > 0 ? x : Rational(-x);
    if (u < c.cut || (u == c.cut && !c.cut_closed)) continue;
    if (c.kind == LawKind::geometric && u <= c.center) continue;
    if (!comp_pieces_x(c, x, x, default_piece_cap).empty()) return true;
  }
  return false;
}

Rational LineSet::distance(const Rational& x) const {
  if (is_empty()) throw InputError("distance to an empty set");
  std::optional<Rational> best = core_.distance(x);
  for (const auto& c : comps_) {
    Rational d = comp_nearest(c, x).distance;
    if (!best || d < *best) best = d;
  }
  return *best;
}

Rational LineSet::nearest_point(const Rational& x, const Rational& slack) const {
  if (is_empty()) throw InputError("nearest point in an empty set");
  if (slack <= 0) throw InputError("slack must be positive");
  std::optional<NearResult> best;
  const TailComponent* best_comp = nullptr;
  if (!core_.empty()) best = nearest_in_pieces(core_, x);
  for (const auto& c : comps_) {
    NearResult r = comp_nearest(c, x);
    if (!best || r.distance < best->distance || (r.distance == best->distance && r.attained && !best->attained)) {
      best = r;
      best_comp = &c;
    }
  }
  if (best->attained) return best->point;
  if (best_comp && best_comp->accumulates() && best->point == best_comp->accumulation_x()) {
    // Step into the law at a scale below the slack.
    const auto& c = *best_comp;
    Rational v = min(slack, Rational(1));
    IntervalSet near = law_pieces_u(c, c.center + v / (c.base * c.base), c.center + v, default_piece_cap);
    if (c.orient < 0) near = near.affine(-1, 0);
    return nearest_in_pieces(near, x).point;
  }
  // Open endpoint: move inward by a fraction of the slack.
  IntervalSet around = pieces_avoiding(best->point - slack, best->point + slack, slack / 4);
  for (const auto& p : around.pieces()) {
    if (p.lo == best->point || p.hi == best->point) {
      Rational step = min(slack / 2, (p.hi - p.lo) / 2);
      return p.lo == best->point ? Rational(p.lo + step) : Rational(p.hi - step);
    }
  }
  throw UnsupportedGeometry("no attained point near " + to_string(x));
}

IntervalSet LineSet::pieces_in(const Rational& lo, const Rational& hi, std::size_t cap) const {
  IntervalSet out = lo <= hi ? core_.clip(lo, hi) : IntervalSet();
  for (const auto& c : comps_) out.unite(comp_pieces_x(c, lo, hi, cap));
  return out;
}

IntervalSet LineSet::pieces_avoiding(const Rational& lo, const Rational& hi, const Rational& radius,
                                     std::size_t cap) const {
  IntervalSet out = lo <= hi ? core_.clip(lo, hi) : IntervalSet();
  for (const auto& c : comps_) {
    out.unite(comp_pieces_x(c, lo, hi, cap, c.accumulates() ? std::optional<Rational>(radius) : std::nullopt));
  }
  return out;
}

std::vector<Rational> LineSet::accumulation_points() const {
  std::vector<Rational> out;
  for (const auto& c : comps_) {
    if (c.accumulates()) out.push_back(c.accumulation_x());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational LineSet::structural_extent() const {
  Rational extent = 0;
  if (!core_.empty()) extent = max(abs(*core_.inf()), abs(*core_.sup()));
  for (const auto& c : comps_) {
    extent = max(extent, abs(c.cut));
    if (c.kind == LawKind::geometric) extent = max(extent, abs(c.center));
  }
  return extent;
}

namespace {

// Summary over [s, e] (u coordinates) of a periodic component alone.
GapSummary periodic_summary_u(const TailComponent& c, const Rational& s, const Rational& e) {
  if (e < c.cut) return GapSummary::blank(e - s);
  GapSummary prefix = GapSummary::blank(0);
  Rational start = s;
  if (s < c.cut) {
    prefix = GapSummary::blank(c.cut - s);
    start = c.cut;
  }
  Integer k0 = floor_int((start - c.anchor) / c.period);
  Integer k1 = floor_int((e - c.anchor) / c.period);
  GapSummary body;
  const std::size_t cap = LineSet::default_piece_cap;
  if (k1 - k0 <= 3) {
    body = GapSummary::of(law_pieces_u(c, start, e, cap), start, e);
  } else {
    Rational b1 = c.anchor + Rational(k0 + 1) * c.period;
    Rational b2 = c.anchor + Rational(k1) * c.period;
    GapSummary first = GapSummary::of(law_pieces_u(c, start, b1, cap), start, b1);
    GapSummary unit = GapSummary::of(c.pattern, 0, c.period);
    GapSummary middle = repeat(unit, k1 - k0 - 1);
    GapSummary last = GapSummary::of(law_pieces_u(c, b2, e, cap), b2, e);
    body = combine(combine(first, middle), last);
  }
  return combine(prefix, body);
}

GapSummary mirror(GapSummary s) {
  std::swap(s.lead, s.trail);
  return s;
}

GapSummary periodic_summary_x(const TailComponent& c, const Rational& a, const Rational& b) {
  if (c.orient > 0) return periodic_summary_u(c, a, b);
  return mirror(periodic_summary_u(c, -b, -a));
}

}  // namespace

GapSummary LineSet::summary(const Rational& lo, const Rational& hi) const {
  if (lo > hi) throw InputError("summary window is reversed");
  IntervalSet explicit_pieces = core_.clip(lo, hi);
  Rational hidden_gap = 0;
  bool have_hidden = false;
  std::vector<const TailComponent*> periodic;
  const std::size_t cap = default_piece_cap;

  for (const auto& c : comps_) {
    if (c.kind == LawKind::periodic) {
      periodic.push_back(&c);
      continue;
    }
    Rational ulo = c.orient > 0 ? lo : Rational(-hi);
    Rational uhi = c.orient > 0 ? hi : Rational(-lo);
    if (!c.accumulates() || ulo > c.center || uhi <= c.center) {
      explicit_pieces.unite(comp_pieces_x(c, lo, hi, cap));
      continue;
    }
    // The window reaches the accumulation point: replace the pieces within
    // delta of it by one dense block and remember the largest hidden gap.
    Rational ax = c.accumulation_x();
    Rational bound = min(Rational(1), uhi - c.center);
    LineSet others;
    others.core_ = core_;
    for (const auto& o : comps_) {
      if (&o != &c) others.comps_.push_back(o);
    }
    IntervalSet near = c.orient > 0 ? others.pieces_in(ax, ax + bound, cap) : others.pieces_in(ax - bound, ax, cap);
    for (const auto& p : near.pieces()) {
      Rational d = c.orient > 0 ? Rational(p.lo - ax) : Rational(ax - p.hi);
      if (d <= 0) {
        bool only_at_point = c.orient > 0 ? (p.hi == ax) : (p.lo == ax);
        if (!only_at_point) throw UnsupportedGeometry("other pieces crowd an accumulation point");
        continue;
      }
      bound = min(bound, d);
    }
    Rational s0 = *c.pattern.inf();
    long k = floor_log(bound / s0, c.base);
    Rational delta = s0 * pow(c.base, k);
    IntervalSet top = law_pieces_u(c, c.center + delta / (c.base * c.base), c.center + delta, cap);
    hidden_gap = max(hidden_gap, GapSummary::of(top, c.center + delta / (c.base * c.base), c.center + delta).inner);
    have_hidden = true;
    IntervalSet dense({Interval::closed(c.center, c.center + delta)});
    IntervalSet rest = law_pieces_u(c, c.center + delta, uhi, cap);
    if (c.orient < 0) {
      dense = dense.affine(-1, 0);
      rest = rest.affine(-1, 0);
    }
    explicit_pieces.unite(dense.clip(lo, hi));
    explicit_pieces.unite(rest);
  }

  auto stretch = [&](const Rational& a, const Rational& b) {
    // Split [a, b] by periodic domains; outside them the stretch is empty.
    std::vector<std::tuple<Rational, Rational, const TailComponent*>> parts;
    for (const auto* c : periodic) {
      Rational d_lo = c->orient > 0 ? c->cut : a;
      Rational d_hi = c->orient > 0 ? b : Rational(-c->cut);
      Rational s = max(a, d_lo);
      Rational e = min(b, d_hi);
      if (s < e) parts.emplace_back(s, e, c);
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });
    GapSummary acc = GapSummary::blank(0);
    Rational pos = a;
    for (const auto& [s, e, c] : parts) {
      Rational start = max(s, pos);
      if (start > pos) acc = combine(acc, GapSummary::blank(start - pos));
      if (e > start) acc = combine(acc, periodic_summary_x(*c, start, e));
      pos = max(pos, e);
    }
    if (b > pos) acc = combine(acc, GapSummary::blank(b - pos));
    return acc;
  };

  GapSummary acc = GapSummary::blank(0);
  Rational pos = lo;
  for (const auto& p : explicit_pieces.pieces()) {
    if (p.lo > pos) acc = combine(acc, stretch(pos, p.lo));
    Rational start = max(p.lo, pos);
    acc = combine(acc, GapSummary::full(p.hi - start));
    pos = p.hi;
  }
  if (hi > pos) acc = combine(acc, stretch(pos, hi));
  if (have_hidden && !acc.empty) acc.inner = max(acc.inner, hidden_gap);
  return acc;
}

namespace {

// Lengths of gaps between consecutive pieces.
std::vector<Rational> gap_lengths(const IntervalSet& pieces) {
  std::vector<Rational> out;
  const auto& ps = pieces.pieces();
  for (std::size_t i = 1; i < ps.size(); ++i) out.push_back(ps[i].lo - ps[i - 1].hi);
  return out;
}

}  // namespace

LengthProfile LineSet::complement_lengths() const {
  LengthProfile profile;
  if (is_empty()) {
    profile.unbounded_components = 1;
    return profile;
  }
  profile.unbounded_components = (unbounded_above() ? 0 : 1) + (unbounded_below() ? 0 : 1);
  const std::size_t cap = default_piece_cap;

  Rational extent = structural_extent() + 1;
  for (const auto& c : comps_) {
    if (c.kind == LawKind::periodic) extent = max(extent, abs(c.cut) + 2 * c.period);
  }

  // Tail analysis per side. Returns the x where explicit enumeration stops.
  auto tail = [&](int orient) -> Rational {
    std::vector<const TailComponent*> side;
    for (const auto& c : comps_) {
      if (c.orient == orient) side.push_back(&c);
    }
    if (side.empty()) return orient > 0 ? extent : Rational(-extent);
    bool has_full = false;
    bool has_periodic = false;
    bool has_geometric = false;
    for (const auto* c : side) {
      has_full |= c->kind == LawKind::full;
      has_periodic |= c->kind == LawKind::periodic;
      has_geometric |= c->kind == LawKind::geometric;
    }
    if (has_full) {
      Rational cut = 0;
      for (const auto* c : side) {
        if (c->kind == LawKind::full) cut = c->cut;
      }
      Rational stop = max(extent, abs(cut) + 1);
      return orient > 0 ? stop : Rational(-stop);
    }
    if (has_periodic && has_geometric) {
      throw UnsupportedGeometry("complement structure of mixed periodic and geometric tails");
    }
    if (has_periodic) {
      const TailComponent& c = *side.front();
      Integer k = ceil_int((extent - c.anchor) / c.period);
      Rational start = c.anchor + Rational(k) * c.period + *c.pattern.inf();
      IntervalSet window = law_pieces_u(c, start, start + 2 * c.period, cap);
      const auto& ps = window.pieces();
      for (std::size_t i = 1; i < ps.size(); ++i) {
        if (ps[i - 1].lo < start + c.period) {
          Rational g = ps[i].lo - ps[i - 1].hi;
          if (std::find(profile.periodic_lengths.begin(), profile.periodic_lengths.end(), g) ==
              profile.periodic_lengths.end()) {
            profile.periodic_lengths.push_back(g);
          }
        }
      }
      return orient > 0 ? start : Rational(-start);
    }
    // Geometric laws only: require a shared center and commensurable bases.
    Rational center = side.front()->center;
    Rational ratio = side.front()->base;
    for (const auto* c : side) {
      if (c->center != center) throw UnsupportedGeometry("geometric tails with different centers");
      auto q = common_power(ratio, c->base);
      if (!q) throw UnsupportedGeometry("geometric tails with incommensurable bases");
      ratio = *q;
    }
    // Start at a piece of the first law beyond the extent.
    const TailComponent& c0 = *side.front();
    Rational s0 = *c0.pattern.inf();
    Rational v_need = extent + abs(center);
    long k = floor_log(v_need / s0, c0.base) + 1;
    Rational start_v = s0 * pow(c0.base, k);
    Rational start = center + start_v;
    IntervalSet window;
    for (const auto* c : side) window.unite(law_pieces_u(*c, start, center + start_v * ratio * ratio, cap));
    const auto& ps = window.pieces();
    for (std::size_t i = 1; i < ps.size(); ++i) {
      if (ps[i - 1].lo < center + start_v * ratio) {
        profile.families.push_back({ps[i].lo - ps[i - 1].hi, ratio, 0, std::nullopt});
      }
    }
    return orient > 0 ? start : Rational(-start);
  };

  Rational right = tail(1);
  Rational left = tail(-1);

  // Accumulation points: families of shrinking gaps, dense blocks in the explicit scan.
  IntervalSet dense;
  for (const auto& c : comps_) {
    if (!c.accumulates()) continue;
    Rational ax = c.accumulation_x();
    LineSet others;
    others.core_ = core_;
    for (const auto& o : comps_) {
      if (!(o == c)) others.comps_.push_back(o);
    }
    Rational bound(1);
    IntervalSet near = c.orient > 0 ? others.pieces_avoiding(ax, ax + 1, Rational(1, 1 << 20), cap)
                                    : others.pieces_avoiding(ax - 1, ax, Rational(1, 1 << 20), cap);
    for (const auto& p : near.pieces()) {
      Rational d = c.orient > 0 ? Rational(p.lo - ax) : Rational(ax - p.hi);
      if (d <= 0) {
        bool only_at_point = c.orient > 0 ? (p.hi == ax) : (p.lo == ax);
        if (!only_at_point) throw UnsupportedGeometry("other pieces crowd an accumulation point");
        continue;
      }
      bound = min(bound, d);
    }
    Rational s0 = *c.pattern.inf();
    long k = floor_log(bound / s0, c.base) - 1;
    Rational delta = s0 * pow(c.base, k);
    IntervalSet top = law_pieces_u(c, c.center + delta / (c.base * c.base), c.center + delta, cap);
    for (const auto& p : top.pieces()) (void)p;
    const auto& ps = top.pieces();
    for (std::size_t i = 1; i < ps.size(); ++i) {
      if (ps[i].lo > c.center + delta / c.base) {
        profile.families.push_back({ps[i].lo - ps[i - 1].hi, c.base, std::nullopt, 0});
      }
    }
    IntervalSet block({Interval::closed(c.center, c.center + delta)});
    dense.unite(c.orient > 0 ? block : block.affine(-1, 0));
  }

  IntervalSet pieces = pieces_avoiding(left, right, Rational(1, 1 << 30), cap);
  // Pieces hidden inside dense blocks are replaced by the blocks themselves.
  IntervalSet scan;
  for (const auto& p : pieces.pieces()) {
    bool hidden = false;
    for (const auto& d : dense.pieces()) {
      if (d.lo < p.hi && p.lo < d.hi) hidden = true;
      if (p.lo >= d.lo && p.hi <= d.hi) hidden = true;
    }
    if (!hidden) scan.add(p);
  }
  scan.unite(dense.clip(left, right));
  for (const auto& g : gap_lengths(scan)) profile.explicit_lengths.push_back(g);
  std::sort(profile.explicit_lengths.begin(), profile.explicit_lengths.end());
  return profile;
}

namespace {

// sup over [a, b] of distance(., to); to must be nonempty.
std::optional<Rational> sup_distance_on(const Interval& piece, const LineSet& to) {
  Rational best = max(to.distance(piece.lo), to.distance(piece.hi));
  if (piece.lo == piece.hi) return best;
  IntervalSet inside;
  try {
    inside = to.pieces_in(piece.lo, piece.hi);
  } catch (const UnsupportedGeometry&) {
    return std::nullopt;
  }
  const auto& ps = inside.pieces();
  for (std::size_t i = 1; i < ps.size(); ++i) best = max(best, to.distance(gap_midpoint(ps[i - 1], ps[i])));
  return best;
}

// Covering radius of a periodic law: half of its widest gap.
Rational periodic_covering_radius(const TailComponent& c) {
  GapSummary unit = GapSummary::of(c.pattern, 0, c.period);
  Rational widest = max(unit.inner, unit.lead + unit.trail);
  return widest / 2;
}

}  // namespace

DirectedHausdorff directed_hausdorff(const LineSet& from, const LineSet& to) {
  DirectedHausdorff out;
  if (from.is_empty()) {
    out.status = DirectedHausdorff::Status::finite;
    out.value = 0;
    return out;
  }
  if (to.is_empty()) {
    out.status = DirectedHausdorff::Status::infinite;
    return out;
  }
  if ((from.unbounded_above() && !to.unbounded_above()) || (from.unbounded_below() && !to.unbounded_below())) {
    out.status = DirectedHausdorff::Status::infinite;
    return out;
  }

  // Components shared verbatim contribute nothing.
  std::vector<TailComponent> own;
  for (const auto& c : from.components()) {
    if (std::find(to.components().begin(), to.components().end(), c) == to.components().end()) own.push_back(c);
  }

  Rational extent = max(from.structural_extent(), to.structural_extent()) + 1;
  for (const auto* set : {&from, &to}) {
    for (const auto& c : set->components()) {
      if (c.kind == LawKind::periodic) extent = max(extent, abs(c.cut) + 2 * c.period);
    }
  }
  for (const auto& c : own) {
    if (c.accumulates()) {
      return out;  // unknown
    }
  }

  Rational best = 0;
  bool exact = true;
  const std::size_t cap = LineSet::default_piece_cap;

  // Middle region, handled piece by piece.
  IntervalSet middle = from.core().clip(-extent, extent);
  for (const auto& c : own) middle.unite(comp_pieces_x(c, -extent, extent, cap));
  for (const auto& p : middle.pieces()) {
    if (to.contains(p.lo) && to.contains(p.hi) && to.pieces_in(p.lo, p.hi).size() == 1) continue;
    auto s = sup_distance_on(p, to);
    if (!s) return out;
    best = max(best, *s);
  }

  for (int orient : {1, -1}) {
    std::vector<const TailComponent*> from_side;
    std::vector<const TailComponent*> to_side;
    for (const auto& c : own) {
      if (c.orient == orient) from_side.push_back(&c);
    }
    for (const auto& c : to.components()) {
      if (c.orient == orient) to_side.push_back(&c);
    }
    if (from_side.empty()) continue;
    bool to_full = false;
    const TailComponent* to_periodic = nullptr;
    bool to_geometric = false;
    for (const auto* c : to_side) {
      to_full |= c->kind == LawKind::full;
      if (c->kind == LawKind::periodic) to_periodic = c;
      to_geometric |= c->kind == LawKind::geometric;
    }
    if (to_full) continue;
    if (to_periodic) {
      Rational radius = periodic_covering_radius(*to_periodic);
      for (const auto* c : from_side) {
        if (c->kind == LawKind::periodic && !to_geometric) {
          Rational period = lcm_rational(c->period, to_periodic->period);
          Rational start = extent + 1;
          IntervalSet window = comp_pieces_x(*c, orient > 0 ? start : Rational(-start - period),
                                             orient > 0 ? Rational(start + period) : Rational(-start), cap);
          for (const auto& p : window.pieces()) {
            auto s = sup_distance_on(p, to);
            if (!s) return out;
            best = max(best, *s);
          }
        } else if (c->kind == LawKind::full && !to_geometric) {
          best = max(best, radius);
        } else {
          best = max(best, radius);
          exact = false;
        }
      }
      continue;
    }
    if (to_geometric) {
      for (const auto* c : from_side) {
        if (c->kind != LawKind::geometric) {
          out.status = DirectedHausdorff::Status::infinite;
          return out;
        }
        // Shared center and common ratio make the sup scale with the ratio.
        Rational ratio = c->base;
        for (const auto* t : to_side) {
          if (t->center != c->center) return out;
          auto q = common_power(ratio, t->base);
          if (!q) return out;
          ratio = *q;
        }
        Rational v0 = extent + abs(c->center) + 1;
        Rational u0 = c->center + v0;
        IntervalSet window = law_pieces_u(*c, u0, c->center + v0 * ratio, cap);
        if (orient < 0) window = window.affine(-1, 0);
        Rational period_sup = 0;
        for (const auto& p : window.pieces()) {
          auto s = sup_distance_on(p, to);
          if (!s) return out;
          period_sup = max(period_sup, *s);
        }
        if (period_sup > 0) {
          out.status = DirectedHausdorff::Status::infinite;
          return out;
        }
      }
    }
  }
  out.status = DirectedHausdorff::Status::finite;
  out.value = best;
  out.exact = exact;
  return out;
}

}  // namespace asym
