#include "asym/interval_set.hpp"

#include <algorithm>

namespace asym {

bool Interval::contains(const Rational& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

Rational Interval::distance(const Rational& x) const {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return Rational(0);
}

IntervalSet::IntervalSet(std::vector<Interval> pieces) : pieces_(std::move(pieces)) { normalize(); }

void IntervalSet::normalize() {
  std::erase_if(pieces_, [](const Interval& p) { return p.empty(); });
  std::sort(pieces_.begin(), pieces_.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> merged;
  for (const auto& piece : pieces_) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      bool overlaps = piece.lo < last.hi || (piece.lo == last.hi && (piece.lo_closed || last.hi_closed));
      if (overlaps) {
        if (piece.hi > last.hi) {
          last.hi = piece.hi;
          last.hi_closed = piece.hi_closed;
        } else if (piece.hi == last.hi) {
          last.hi_closed = last.hi_closed || piece.hi_closed;
        }
        if (piece.lo == last.lo) last.lo_closed = last.lo_closed || piece.lo_closed;
        continue;
      }
    }
    merged.push_back(piece);
  }
  pieces_ = std::move(merged);
}

void IntervalSet::add(const Interval& piece) {
  pieces_.push_back(piece);
  normalize();
}

void IntervalSet::unite(const IntervalSet& other) {
  pieces_.insert(pieces_.end(), other.pieces_.begin(), other.pieces_.end());
  normalize();
}

namespace {

// piece ∩ (-inf, bound] (inclusive) or (-inf, bound).
Interval below(Interval piece, const Rational& bound, bool inclusive) {
  if (piece.hi > bound) {
    piece.hi = bound;
    piece.hi_closed = inclusive;
  } else if (piece.hi == bound) {
    piece.hi_closed = piece.hi_closed && inclusive;
  }
  return piece;
}

// piece ∩ [bound, inf) (inclusive) or (bound, inf).
Interval above(Interval piece, const Rational& bound, bool inclusive) {
  if (piece.lo < bound) {
    piece.lo = bound;
    piece.lo_closed = inclusive;
  } else if (piece.lo == bound) {
    piece.lo_closed = piece.lo_closed && inclusive;
  }
  return piece;
}

}  // namespace

void IntervalSet::subtract(const Interval& cut) {
  if (cut.empty()) return;
  std::vector<Interval> out;
  for (const auto& piece : pieces_) {
    Interval left = below(piece, cut.lo, !cut.lo_closed);
    Interval right = above(piece, cut.hi, !cut.hi_closed);
    if (!left.empty()) out.push_back(left);
    if (!right.empty()) out.push_back(right);
  }
  pieces_ = std::move(out);
  normalize();
}

IntervalSet IntervalSet::clip(const Rational& lo, const Rational& hi) const {
  std::vector<Interval> out;
  for (const auto& piece : pieces_) {
    if (piece.hi < lo || piece.lo > hi) continue;
    Interval p = piece;
    if (p.lo < lo) {
      p.lo = lo;
      p.lo_closed = true;
    }
    if (p.hi > hi) {
      p.hi = hi;
      p.hi_closed = true;
    }
    if (!p.empty()) out.push_back(p);
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::clip_half_open(const Rational& lo, const Rational& hi) const {
  IntervalSet out = clip(lo, hi);
  out.subtract(Interval::point(hi));
  return out;
}

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const Interval& p) { return v < p.lo; });
  if (it != pieces_.begin() && std::prev(it)->contains(x)) return true;
  return it != pieces_.end() && it->contains(x);
}

std::optional<Rational> IntervalSet::distance(const Rational& x) const {
  if (pieces_.empty()) return std::nullopt;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const Interval& p) { return v < p.lo; });
  std::optional<Rational> best;
  if (it != pieces_.end()) best = it->distance(x);
  if (it != pieces_.begin()) {
    Rational d = std::prev(it)->distance(x);
    if (!best || d < *best) best = d;
  }
  return best;
}

IntervalSet IntervalSet::affine(int sign, const Rational& shift) const {
  std::vector<Interval> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) {
    if (sign > 0) {
      out.push_back({p.lo + shift, p.hi + shift, p.lo_closed, p.hi_closed});
    } else {
      out.push_back({shift - p.hi, shift - p.lo, p.hi_closed, p.lo_closed});
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::scaled(const Rational& factor) const {
  std::vector<Interval> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back({p.lo * factor, p.hi * factor, p.lo_closed, p.hi_closed});
  return IntervalSet(std::move(out));
}

std::optional<Rational> IntervalSet::inf() const {
  if (pieces_.empty()) return std::nullopt;
  return pieces_.front().lo;
}

std::optional<Rational> IntervalSet::sup() const {
  if (pieces_.empty()) return std::nullopt;
  return pieces_.back().hi;
}

GapSummary GapSummary::blank(const Rational& length) { return {length, true, 0, 0, 0}; }

GapSummary GapSummary::full(const Rational& length) { return {length, false, 0, 0, 0}; }

GapSummary GapSummary::of(const IntervalSet& set, const Rational& lo, const Rational& hi) {
  IntervalSet inside = set.clip(lo, hi);
  if (inside.empty()) return blank(hi - lo);
  GapSummary s;
  s.length = hi - lo;
  s.empty = false;
  s.lead = inside.pieces().front().lo - lo;
  s.trail = hi - inside.pieces().back().hi;
  s.inner = 0;
  const auto& pieces = inside.pieces();
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    Rational gap = pieces[i].lo - pieces[i - 1].hi;
    if (gap > s.inner) s.inner = gap;
  }
  return s;
}

Rational GapSummary::longest_gap() const {
  if (empty) return length;
  return max(max(lead, trail), inner);
}

GapSummary combine(const GapSummary& left, const GapSummary& right) {
  GapSummary out;
  out.length = left.length + right.length;
  if (left.empty && right.empty) return GapSummary::blank(out.length);
  if (left.empty) {
    out = right;
    out.length = left.length + right.length;
    out.lead = left.length + right.lead;
    return out;
  }
  if (right.empty) {
    out = left;
    out.length = left.length + right.length;
    out.trail = left.trail + right.length;
    return out;
  }
  out.empty = false;
  out.lead = left.lead;
  out.trail = right.trail;
  out.inner = max(max(left.inner, right.inner), left.trail + right.lead);
  return out;
}

GapSummary repeat(const GapSummary& unit, const Integer& times) {
  if (times <= 0) return GapSummary::blank(0);
  GapSummary result = GapSummary::blank(0);
  bool have_result = false;
  GapSummary power = unit;
  Integer n = times;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t()) != 0) {
      result = have_result ? combine(result, power) : power;
      have_result = true;
    }
    n >>= 1;
    if (n > 0) power = combine(power, power);
  }
  return result;
}

}  // namespace asym
