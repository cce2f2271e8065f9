#include "doctest.h"

#include <random>

#include "asym/line_set.hpp"

#include "support.hpp"

using namespace asym;

namespace {

// Explicit point list of {c q^n : n >= 0} (c = 1, q = 2) below a bound.
std::vector<Rational> powers_below(const Rational& bound) {
  std::vector<Rational> out;
  for (Rational p = 1; p <= bound; p *= 2) out.push_back(p);
  return out;
}

Rational brute_distance(const std::vector<Rational>& pts, const Rational& x) {
  Rational best = abs(pts.front() - x);
  for (const auto& p : pts) best = min(best, abs(p - x));
  return best;
}

}  // namespace

TEST_CASE("interval set normal form") {
  IntervalSet s;
  s.add(Interval::closed(0, 1));
  s.add(Interval::closed(1, 2));
  s.add(Interval::point(5));
  s.add(Interval::open(3, 4));
  REQUIRE(s.size() == 3);
  CHECK(s.pieces()[0] == Interval::closed(0, 2));
  CHECK(s.contains(5));
  CHECK_FALSE(s.contains(3));
  CHECK(*s.distance(frac(9, 2)) == frac(1, 2));
  s.subtract(Interval::open(0, 2));
  CHECK(s.contains(0));
  CHECK_FALSE(s.contains(1));
}

TEST_CASE("gap summaries compose") {
  IntervalSet s({Interval::point(1), Interval::closed(3, 4)});
  GapSummary whole = GapSummary::of(s, 0, 10);
  GapSummary left = GapSummary::of(s, 0, 2), right = GapSummary::of(s, 2, 10);
  GapSummary joined = combine(left, right);
  CHECK(joined.longest_gap() == whole.longest_gap());
  CHECK(whole.longest_gap() == 6);
  GapSummary unit = GapSummary::of(IntervalSet({Interval::point(0)}), 0, 3);
  CHECK(repeat(unit, 1000).longest_gap() == 3);
}

TEST_CASE("geometric law agrees with explicit enumeration") {
  LineSet g = LineSet::geometric(2, 0, IntervalSet({Interval::point(1)}), 0);
  auto pts = powers_below(Rational(1) << 12);
  for (long num = -50; num < 5000; num += 7) {
    Rational x = frac(num, 3);
    CHECK(g.contains(x) == (std::find(pts.begin(), pts.end(), x) != pts.end()));
    if (x < 2000) CHECK(g.distance(x) == brute_distance(pts, x));
  }
  CHECK(g.pieces_in(0, 100).size() == 7);
  CHECK(g.summary(0, 64).longest_gap() == 32);
}

TEST_CASE("periodic law agrees with explicit enumeration") {
  LineSet p = LineSet::periodic(3, 1, IntervalSet({Interval::closed(0, frac(1, 2))}), true);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 400; ++i) {
    Rational x = frac(static_cast<long>(rng() % 6000) - 100, 1 + static_cast<long>(rng() % 12));
    bool expected = false;
    for (long k = 0; k < 2000; ++k) expected = expected || (x >= 1 + 3 * k && x <= 1 + 3 * k + frac(1, 2));
    CHECK(p.contains(x) == expected);
  }
  CHECK(p.summary(1, 1000).longest_gap() == frac(5, 2));
}

TEST_CASE("unions, subtraction and transforms") {
  LineSet r = LineSet::ray(0, 1);
  LineSet cut = r.subtract(Interval::open(2, 5));
  CHECK(cut.contains(2));
  CHECK_FALSE(cut.contains(3));
  CHECK(cut.distance(frac(7, 2)) == frac(3, 2));
  LineSet mirrored = cut.affine(-1, 0);
  CHECK(mirrored.contains(-2));
  CHECK_FALSE(mirrored.contains(-3));
  CHECK(mirrored.unbounded_below());
  CHECK_FALSE(mirrored.unbounded_above());
  LineSet lat = LineSet::periodic(1, 0, IntervalSet({Interval::point(0)}), false);
  CHECK(lat.unite(lat) == lat);
  CHECK(lat.scaled(frac(1, 2)).contains(frac(7, 2)));
  LineSet folded = LineSet::full_line().fold(3);
  for (long num = -40; num < 400; ++num) CHECK(folded.contains(frac(num, 7)) == (num >= 0));
  CHECK_FALSE(folded.unbounded_below());
  CHECK(folded.unbounded_above());
}

TEST_CASE("two-sided geometric laws accumulate") {
  LineSet g = LineSet::geometric(4, 0, IntervalSet({Interval::closed(1, 2)}), std::nullopt);
  CHECK(g.accumulation_points() == std::vector<Rational>{0});
  CHECK_THROWS_AS(g.pieces_in(0, 10), AccumulationError);
  CHECK(g.pieces_avoiding(0, 40, frac(3, 4)).size() == 3);
  CHECK(g.contains(pow(Rational(4), -30)));
  CHECK_FALSE(g.contains(3 * pow(Rational(4), -30)));
}

TEST_CASE("complement length profile") {
  LineSet s = LineSet::full_line().subtract(Interval::open(0, 1));
  LengthProfile p = s.complement_lengths();
  CHECK(p.explicit_lengths == std::vector<Rational>{1});
  CHECK(p.unbounded_components == 0);
  CHECK(p.multiplicity(1) == 1);
  LengthProfile lat = LineSet::periodic(1, 0, IntervalSet({Interval::point(0)}), false).complement_lengths();
  CHECK(lat.multiplicity(1) == -1);
  CHECK(LineSet::ray(5, 1).complement_lengths().unbounded_components == 1);
}

TEST_CASE("directed Hausdorff between line sets") {
  LineSet full = LineSet::full_line();
  LineSet lat = LineSet::periodic(1, 0, IntervalSet({Interval::point(0)}), false);
  auto d = directed_hausdorff(full, lat);
  REQUIRE(d.status == DirectedHausdorff::Status::finite);
  CHECK(d.value == frac(1, 2));
  CHECK(directed_hausdorff(lat, full).value == 0);
  LineSet g = LineSet::geometric(2, 0, IntervalSet({Interval::point(1)}), 0);
  CHECK(directed_hausdorff(LineSet::ray(0, 1), g).status == DirectedHausdorff::Status::infinite);
}
