#include "doctest.h"

#include <algorithm>

#include "asym/real_line.hpp"

#include "support.hpp"

using namespace asym;

namespace {

SetModel with_points(SetModel base, std::vector<Rational> pts) { return SetModel::modification(std::move(base), pts, {}); }

SetModel line_minus_unit() { return SetModel::modification(SetModel::full(), {}, {Interval::open(0, 1)}); }

bool has_length(const ComponentReport& r, const Rational& l) {
  return std::find(r.lengths.begin(), r.lengths.end(), l) != r.lengths.end();
}

}  // namespace

TEST_CASE("complement components") {
  auto ray = complement_components(SetModel::ray_model(0, 1), 64);
  CHECK(ray.bounded.empty());
  REQUIRE(ray.unbounded.size() == 1);
  CHECK(ray.unbounded[0].end == 0);
  CHECK(ray.unbounded[0].direction == -1);

  auto cut = complement_components(line_minus_unit(), 64);
  REQUIRE(cut.bounded.size() == 1);
  CHECK(cut.bounded[0] == Interval::open(0, 1));
  CHECK(cut.unbounded.empty());

  auto gb = complement_components(SetModel::geometric_blocks_model(4, 1, 2), 64);
  std::vector<Interval> expected{Interval::open(2, 4), Interval::open(8, 16), Interval::open(32, 64)};
  CHECK(gb.bounded == expected);
  CHECK(gb.lengths == std::vector<Rational>{2, 8, 32});

  CHECK_THROWS_AS(complement_components(with_points(SetModel::ray_model(100, 1), {0}), 10), InputError);
}

TEST_CASE("line isometries") {
  SetModel a = SetModel::union_model({SetModel::points_model({0, 1, 3}), SetModel::ray_model(10, 1)});
  SetModel b = SetModel::union_model({SetModel::points_model({5, 6, 8}), SetModel::ray_model(15, 1)});
  auto t = line_isometry_test(a, b);
  CHECK(t.isometric);
  CHECK(t.sign == 1);
  CHECK(t.shift == 5);
  auto back = line_isometry_test(b, a);
  CHECK(back.isometric);
  CHECK(back.shift == -5);
  CHECK(line_isometry_test(a, a).isometric);

  auto refl = line_isometry_test(SetModel::points_model({0, 1, 3}), SetModel::points_model({0, 2, 3}));
  CHECK(refl.isometric);
  CHECK(refl.sign == -1);
  CHECK(refl.shift == 3);

  auto no = line_isometry_test(with_points(SetModel::ray_model(10, 1), {0, 1, 2}),
                               with_points(SetModel::ray_model(10, 1), {0, 1, 3}));
  CHECK_FALSE(no.isometric);
  CHECK_FALSE(no.statistic.empty());

  // a reflected lattice-with-hole is still recognised
  SetModel holes = SetModel::modification(SetModel::lattice_model(1, 0), {}, {Interval::point(3)});
  SetModel moved = SetModel::modification(SetModel::lattice_model(1, frac(1, 2)), {}, {Interval::point(frac(-5, 2))});
  auto lat = line_isometry_test(holes, moved);
  CHECK(lat.isometric);
}

TEST_CASE("isometric sets have matching complement reports") {
  SetModel a = SetModel::union_model({SetModel::points_model({0, 1, 3}), SetModel::ray_model(10, 1)});
  SetModel b = SetModel::union_model({SetModel::points_model({-5, -6, -8}), SetModel::ray_model(-15, -1)});
  auto t = line_isometry_test(a, b);
  REQUIRE(t.isometric);
  CHECK(t.sign == -1);
  CHECK(complement_components(a, 64).lengths == complement_components(b, 64).lengths);
}

TEST_CASE("scaling self-similarity") {
  for (const auto& k : default_k_samples()) CHECK(scaling_self_similarity(SetModel::ray_model(0, 1), k).consistent);
  auto s = scaling_self_similarity(line_minus_unit(), 2);
  CHECK_FALSE(s.consistent);
  CHECK(s.witness_length == frac(1, 2));
  CHECK(s.witness_in_scaled);
  CHECK(scaling_self_similarity(SetModel::geometric_blocks_model(4, 1, 2), 4).consistent);
  CHECK(scaling_self_similarity(SetModel::geometric_blocks_model(4, 1, 2), frac(1, 16)).consistent);
  CHECK_FALSE(scaling_self_similarity(SetModel::geometric_blocks_model(4, 1, 2), 2).consistent);
  CHECK_THROWS_AS(scaling_self_similarity(SetModel::ray_model(0, 1), 0), InputError);
}

TEST_CASE("classifier") {
  auto plus = classify_line_subspace(SetModel::ray_model(5, 1), default_k_samples());
  CHECK(plus.status == LineClassification::Status::isometric_to_R_plus);
  CHECK(plus.sign == 1);
  CHECK(plus.shift == -5);
  auto minus = classify_line_subspace(SetModel::ray_model(-2, -1), default_k_samples());
  CHECK(minus.status == LineClassification::Status::isometric_to_R_plus);
  CHECK(minus.sign == -1);
  CHECK(classify_line_subspace(SetModel::full(), default_k_samples()).status ==
        LineClassification::Status::isometric_to_R);

  auto fails = classify_line_subspace(line_minus_unit(), default_k_samples());
  REQUIRE(fails.status == LineClassification::Status::fails_condition_with);
  CHECK(fails.k == Rational(2));
  CHECK(fails.length == frac(1, 2));
  auto original = complement_components(line_minus_unit(), 64);
  auto scaled = complement_components(scale_model(line_minus_unit(), 1 / *fails.k), 64);
  CHECK(has_length(original, *fails.length) != has_length(scaled, *fails.length));

  // a self-similar set passes every sampled k it is invariant under
  auto geo = classify_line_subspace(SetModel::geometric_blocks_model(4, 1, 2), {Rational(4), frac(1, 4)});
  CHECK(geo.status == LineClassification::Status::inconclusive);
}
