#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "asym/interval_set.hpp"
#include "asym/rational.hpp"

namespace asym {

/// Thrown when a query window would need infinitely many pieces near an
/// accumulation point of a two-sided geometric law.
class AccumulationError : public UnsupportedGeometry {
 public:
  using UnsupportedGeometry::UnsupportedGeometry;
};

enum class LawKind { full, periodic, geometric };

/// One unbounded ingredient of a line set, written in the oriented coordinate
/// u = orient * x. The ingredient is {orient * u : u in law, u >= cut}.
///
/// full:      every u.
/// periodic:  u = anchor + k * period + y, y in pattern, pattern inside [0, period).
/// geometric: u = center + base^k * y, y in pattern, pattern inside [1, base).
///            When cut == center the law is two-sided in k and accumulates at center.
struct TailComponent {
  int orient = 1;
  LawKind kind = LawKind::full;
  Rational cut;
  bool cut_closed = true;

  Rational period;
  Rational anchor;
  Rational base;
  Rational center;
  IntervalSet pattern;

  bool accumulates() const { return kind == LawKind::geometric && cut == center; }
  /// x coordinate of the accumulation point (valid when accumulates()).
  Rational accumulation_x() const { return orient > 0 ? center : Rational(-center); }

  friend bool operator==(const TailComponent&, const TailComponent&) = default;
};

/// Multiset of complement-component lengths described symbolically.
struct LengthProfile {
  std::vector<Rational> explicit_lengths;  // sorted, with multiplicity
  std::vector<Rational> periodic_lengths;  // each occurs infinitely often
  struct Family {
    Rational generator;
    Rational ratio;
    std::optional<long> k_min;  // nullopt: unbounded below
    std::optional<long> k_max;  // nullopt: unbounded above
  };
  std::vector<Family> families;  // generator * ratio^k for k in range
  int unbounded_components = 0;

  /// How many times `length` occurs; -1 encodes infinitely many.
  long multiplicity(const Rational& length) const;
};

/// Exact description of a subset of the real line: a bounded core plus tail laws.
/// Every supported set variant compiles to this form, and all 1-D queries
/// (membership, distance, gap scans, complement structure) run on it.
class LineSet {
 public:
  static constexpr std::size_t default_piece_cap = 1u << 20;

  LineSet() = default;

  static LineSet from_core(IntervalSet core);
  static LineSet full_line();
  /// [origin, inf) for direction +1, (-inf, origin] for direction -1.
  static LineSet ray(const Rational& origin, int direction);
  /// anchor + period * k + pattern for k >= 0 (one_sided) or all k.
  static LineSet periodic(const Rational& period, const Rational& anchor, const IntervalSet& pattern,
                          bool one_sided);
  /// center + base^k * block for k >= start, or all k when start is nullopt.
  static LineSet geometric(const Rational& base, const Rational& center, const IntervalSet& block,
                           std::optional<long> start);

  LineSet unite(const LineSet& other) const;
  /// Removes a bounded interval (or point).
  LineSet subtract(const Interval& removed) const;
  /// Image under x -> sign * x + shift.
  LineSet affine(int sign, const Rational& shift) const;
  /// Image under x -> factor * x, factor > 0.
  LineSet scaled(const Rational& factor) const;
  /// Intersection with [0, inf).
  LineSet nonnegative_part() const;
  /// {|x - p| : x in set}.
  LineSet fold(const Rational& p) const;

  const IntervalSet& core() const { return core_; }
  const std::vector<TailComponent>& components() const { return comps_; }

  bool is_empty() const { return core_.empty() && comps_.empty(); }
  bool unbounded_above() const;
  bool unbounded_below() const;
  bool unbounded() const { return unbounded_above() || unbounded_below(); }
  bool within_nonnegative() const;

  bool contains(const Rational& x) const;
  /// inf |x - y| over the set. Throws on an empty set.
  Rational distance(const Rational& x) const;
  /// A point of the set within distance(x) + slack of x (exact nearest when attained).
  Rational nearest_point(const Rational& x, const Rational& slack) const;

  /// Pieces inside [lo, hi]. Throws AccumulationError when the window reaches an
  /// accumulation point and UnsupportedGeometry when more than `cap` pieces would be produced.
  IntervalSet pieces_in(const Rational& lo, const Rational& hi, std::size_t cap = default_piece_cap) const;
  /// Like pieces_in but skips pieces within `radius` of accumulation points.
  IntervalSet pieces_avoiding(const Rational& lo, const Rational& hi, const Rational& radius,
                              std::size_t cap = default_piece_cap) const;

  /// Gap summary of the set over [lo, hi], exact for every supported law.
  GapSummary summary(const Rational& lo, const Rational& hi) const;

  std::vector<Rational> accumulation_points() const;

  /// Smallest H such that outside [-H, H] only tail laws act (core and cuts inside).
  Rational structural_extent() const;

  /// Complement-component lengths as a symbolic multiset.
  LengthProfile complement_lengths() const;

  friend bool operator==(const LineSet&, const LineSet&) = default;

 private:
  void normalize();
  void materialize(TailComponent& comp, const Rational& new_cut);

  IntervalSet core_;
  std::vector<TailComponent> comps_;
};

/// Exact sup of |x - y| style distances: sup over z in `from` of distance(z, to).
/// Returns nullopt when the supremum is infinite.
struct DirectedHausdorff {
  enum class Status { finite, infinite, unknown };
  Status status = Status::unknown;
  Rational value;     // valid for finite
  bool exact = true;  // false: value is only an upper bound
};
DirectedHausdorff directed_hausdorff(const LineSet& from, const LineSet& to);

/// Common power Q = a^i = b^j (small i, j) of two bases, if one exists.
std::optional<Rational> common_power(const Rational& a, const Rational& b);

}  // namespace asym
