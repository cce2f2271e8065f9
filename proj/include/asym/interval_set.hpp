#pragma once

#include <optional>
#include <vector>

#include "asym/rational.hpp"

namespace asym {

/// Bounded interval with explicit endpoint types. lo == hi only for a closed point.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval point(const Rational& x) { return {x, x, true, true}; }
  static Interval closed(const Rational& a, const Rational& b) { return {a, b, true, true}; }
  static Interval open(const Rational& a, const Rational& b) { return {a, b, false, false}; }

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool is_point() const { return lo == hi; }
  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const;
  Rational distance(const Rational& x) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of bounded intervals kept sorted, disjoint and non-touching.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  std::size_t size() const { return pieces_.size(); }

  void add(const Interval& piece);
  void unite(const IntervalSet& other);
  void subtract(const Interval& piece);

  /// Intersection with the closed window [lo, hi].
  IntervalSet clip(const Rational& lo, const Rational& hi) const;
  /// Intersection with [lo, hi) (used when a tail law takes over at hi).
  IntervalSet clip_half_open(const Rational& lo, const Rational& hi) const;

  bool contains(const Rational& x) const;
  /// Infimum of |x - y| over the set; nullopt when empty.
  std::optional<Rational> distance(const Rational& x) const;

  /// Image under x -> sign * x + shift (sign = +1 or -1).
  IntervalSet affine(int sign, const Rational& shift) const;
  /// Image under x -> factor * x, factor > 0.
  IntervalSet scaled(const Rational& factor) const;

  std::optional<Rational> inf() const;
  std::optional<Rational> sup() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  void normalize();
  std::vector<Interval> pieces_;
};

/// Translation-invariant summary of a set inside a window [lo, lo + length].
/// It composes associatively over adjacent windows, which lets long periodic
/// stretches be summarized by repeated squaring.
struct GapSummary {
  Rational length;
  bool empty = true;
  Rational lead;   // first set point minus window start
  Rational trail;  // window end minus last set point
  Rational inner;  // longest gap strictly between set points

  static GapSummary blank(const Rational& length);
  static GapSummary full(const Rational& length);
  /// Summary of the given pieces inside [lo, hi]; pieces outside are ignored.
  static GapSummary of(const IntervalSet& set, const Rational& lo, const Rational& hi);

  /// Longest open interval of the window missing the set.
  Rational longest_gap() const;
};

GapSummary combine(const GapSummary& left, const GapSummary& right);
GapSummary repeat(const GapSummary& unit, const Integer& times);

}  // namespace asym
