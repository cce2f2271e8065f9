#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asym/distance.hpp"
#include "asym/interval_set.hpp"
#include "asym/line_set.hpp"
#include "asym/rational.hpp"

namespace asym {

enum class ModelKind {
  lattice,            // {step*k + offset}, k in Z (or k >= 0 when nonnegative_only)
  ray,                // [origin, inf) or (-inf, origin]
  full_line,
  geometric_points,   // {c * q^n : n >= n0}
  geometric_blocks,   // union of [a q^n, b q^n], n in Z (or n >= n0)
  periodic_blocks,    // start + k * period + blocks, k >= 0
  points,             // finite union of points and closed intervals (bounded)
  finite_union,
  finite_modification,
  product,            // model_x x model_y in the plane
  half_plane_strip,   // {x >= 0, c1 <= y <= c2}
};

/// Symbolic description of a subset of the line or the plane. Parameters are
/// exact; nothing is enumerated until a query asks for a window.
struct SetModel {
  ModelKind kind = ModelKind::full_line;

  Rational step, offset;
  bool nonnegative_only = false;

  Rational origin;
  int direction = 1;

  Rational q, c, a, b;
  std::optional<long> n0;

  Rational period, start;
  std::vector<Interval> blocks;  // periodic blocks or bounded pieces

  std::vector<SetModel> children;      // union members, modification base, product factors
  std::vector<Rational> added;         // modification: added points
  std::vector<Interval> removed;       // modification: removed points / intervals

  Rational c1, c2;

  friend bool operator==(const SetModel&, const SetModel&) = default;

  static SetModel lattice_model(const Rational& step, const Rational& offset, bool nonnegative_only = false);
  static SetModel ray_model(const Rational& origin, int direction);
  static SetModel full();
  static SetModel geometric_points_model(const Rational& q, const Rational& c, long n0);
  static SetModel geometric_blocks_model(const Rational& q, const Rational& a, const Rational& b,
                                         std::optional<long> n0 = std::nullopt);
  static SetModel periodic_blocks_model(const Rational& period, std::vector<Interval> blocks, const Rational& start);
  static SetModel points_model(const std::vector<Rational>& points, std::vector<Interval> intervals = {});
  static SetModel union_model(std::vector<SetModel> members);
  static SetModel modification(SetModel base, std::vector<Rational> added, std::vector<Interval> removed);
  static SetModel product_model(SetModel x, SetModel y);
  static SetModel strip(const Rational& c1, const Rational& c2);
  /// {(x, 0) : x >= 0} in the plane.
  static SetModel planar_ray();
};

using AmbientPoint = std::vector<Rational>;

int dimension(const SetModel& model);

/// Checks parameter constraints. Top-level models must be unbounded.
void validate(const SetModel& model, bool top_level = true);

/// Normal form of a one-dimensional model.
LineSet compile_line(const SetModel& model);

/// For planar models: the two factors (x first). half_plane_strip becomes [0, inf) x [c1, c2].
std::pair<SetModel, SetModel> planar_factors(const SetModel& model);

bool contains(const SetModel& model, const AmbientPoint& x);
Rational distance_to_set(const SetModel& model, const Rational& x);
Distance distance_to_set(const SetModel& model, const AmbientPoint& x);

/// Piece of the circle of radius t about the origin: points (sign * sqrt(t^2 - y^2), y)
/// for y between y_lo and y_hi.
struct Arc {
  int sign = 1;
  Rational y_lo, y_hi;
  bool lo_closed = true, hi_closed = true;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct SphereSlice {
  std::vector<Rational> points;  // ambient line
  std::vector<Arc> arcs;         // ambient plane
  bool empty() const { return points.empty() && arcs.empty(); }
};

SphereSlice sphere_slice(const SetModel& model, const AmbientPoint& p, const Rational& t);

/// Exact sup over the arc (radius t) of the distance to a planar model.
Distance sup_distance_on_arc(const SetModel& model, const Arc& arc, const Rational& t);

SetModel scale_model(const SetModel& model, const Rational& k);

/// Longest open interval of [0, h] missing the set; the model must live in [0, inf).
Rational longest_gap(const SetModel& model, const Rational& h);

std::string describe(const SetModel& model);

}  // namespace asym
