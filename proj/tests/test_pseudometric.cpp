#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "asym/pseudometric.hpp"

#include "support.hpp"

using namespace asym;

namespace {

FinitePseudometricSpace space(const DistanceTable& d) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d.size(); ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return FinitePseudometricSpace::make(labels, d);
}

// Oracle: representatives by first zero-distance partner, then brute-force bijections.
std::vector<std::size_t> reps(const DistanceTable& d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    bool fresh = true;
    for (auto r : out) fresh = fresh && d[i][r] != 0;
    if (fresh) out.push_back(i);
  }
  return out;
}

bool quotients_isometric(const DistanceTable& x, const DistanceTable& y) {
  auto rx = reps(x), ry = reps(y);
  if (rx.size() != ry.size()) return false;
  std::vector<std::size_t> perm(ry.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < rx.size(); ++i)
      for (std::size_t j = 0; ok && j < rx.size(); ++j) ok = x[rx[i]][rx[j]] == y[ry[perm[i]]][ry[perm[j]]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("validate_pseudometric") {
  CHECK(validate_pseudometric({"a", "b"}, {{0, 1}, {1, 0}}).ok);
  auto bad = validate_pseudometric({"a", "b", "c"}, {{0, 3, 1}, {3, 0, 1}, {1, 1, 0}});
  REQUIRE_FALSE(bad.ok);
  bool found = false;
  for (const auto& v : bad.violations) {
    found = found || (v.kind == Violation::Kind::triangle && v.i == 0 && v.j == 2 && v.k == 1);
  }
  CHECK(found);
  CHECK(validate_pseudometric({"a", "b", "c"}, {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}}).ok);
  CHECK_FALSE(validate_pseudometric({"a", "b"}, {{0, 1}}).ok);
  CHECK_FALSE(validate_pseudometric({"a", "b"}, {{0, -1}, {-1, 0}}).ok);
  CHECK_FALSE(validate_pseudometric({"a", "b"}, {{0, 1}, {2, 0}}).ok);
  CHECK_THROWS_AS(space({{0, 3, 1}, {3, 0, 1}, {1, 1, 0}}), InputError);
}

TEST_CASE("zero classes and metric identification") {
  auto s = space({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
  auto z = zero_classes(s);
  CHECK(z.blocks == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  auto q = metric_identify(s);
  REQUIRE(q.quotient.size() == 2);
  CHECK(q.quotient.dist[0][1] == 1);
  CHECK(q.projection == std::vector<std::size_t>{0, 0, 1});

  auto zero = space(DistanceTable(4, std::vector<Rational>(4, Rational(0))));
  CHECK(zero_classes(zero).blocks.size() == 1);

  auto metric = space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(zero_classes(metric).blocks.size() == 3);
  auto mq = metric_identify(metric);
  CHECK(mq.quotient.dist == metric.dist);

  // {a,b} and {c,e} at distance 2: every representative pair agrees
  DistanceTable d{{0, 0, 2, 2}, {0, 0, 2, 2}, {2, 2, 0, 0}, {2, 2, 0, 0}};
  auto q4 = metric_identify(space(d));
  REQUIRE(q4.quotient.size() == 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(q4.quotient.dist[q4.projection[i]][q4.projection[j]] == d[i][j]);
}

TEST_CASE("is_pseudoisometry") {
  auto metric = space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(is_pseudoisometry({0, 1, 2}, metric, metric).ok);
  auto s = space({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
  auto q = metric_identify(s);
  CHECK(is_pseudoisometry(q.projection, s, q.quotient).ok);
  auto two = space({{0, 1}, {1, 0}});
  auto check = is_pseudoisometry({0, 0}, two, two);
  CHECK_FALSE(check.ok);
  CHECK(check.bad_pair.has_value());
  CHECK_THROWS_AS(is_pseudoisometry({0, 5}, two, two), InputError);
}

TEST_CASE("composition of pseudoisometries") {
  std::mt19937_64 rng(7);
  int composed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_pseudometric(rng, 1 + rng() % 4);
    auto y = random_pseudometric(rng, 1 + rng() % 4);
    auto z = random_pseudometric(rng, 1 + rng() % 4);
    auto f = exists_pseudoisometry(x, y);
    auto g = exists_pseudoisometry(y, z);
    if (!f || !g) continue;
    std::vector<std::size_t> gf;
    for (auto i : *f) gf.push_back((*g)[i]);
    CHECK(is_pseudoisometry(gf, x, z).ok);
    ++composed;
  }
  // also the projection followed by an identity always composes
  auto s = space({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
  auto q = metric_identify(s);
  std::vector<std::size_t> id(q.quotient.size());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::size_t> gf;
  for (auto i : q.projection) gf.push_back(id[i]);
  CHECK(is_pseudoisometry(gf, s, q.quotient).ok);
  CHECK(composed > 0);
}

TEST_CASE("exists_pseudoisometry") {
  auto metric = space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  auto id = exists_pseudoisometry(metric, metric);
  REQUIRE(id.has_value());
  CHECK(is_pseudoisometry(*id, metric, metric).ok);
  CHECK(exists_pseudoisometry(space({{0, 0}, {0, 0}}), space({{0}})).has_value());
  auto big = space(DistanceTable(7, std::vector<Rational>(7, Rational(0))));
  CHECK_THROWS(exists_pseudoisometry(big, big));
}

TEST_CASE("exists_pseudoisometry agrees with quotient isometry") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_pseudometric(rng, 1 + rng() % 5);
    auto y = random_pseudometric(rng, 1 + rng() % 5);
    CHECK(validate_pseudometric(x.labels, x.dist).ok);
    CHECK(exists_pseudoisometry(x, y).has_value() == quotients_isometric(x.dist, y.dist));
  }
}

TEST_CASE("closure of subsets matches the ball-topology closure") {
  auto s = space({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
  CHECK(closure_of_subset(s, {0}) == std::vector<std::size_t>{0, 1});
  CHECK(closure_of_subset(s, {0, 1}) == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(closure_of_subset(s, {}), InputError);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto sp = random_pseudometric(rng, 5);
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < 5; ++i)
      if (rng() % 2) subset.push_back(i);
    if (subset.empty()) subset.push_back(rng() % 5);
    // x is in the closure iff every open ball around x meets the subset
    std::set<Rational> radii;
    for (const auto& row : sp.dist)
      for (const auto& v : row) radii.insert(v);
    radii.insert(frac(1, 1000));
    std::vector<std::size_t> expected;
    for (std::size_t x = 0; x < 5; ++x) {
      bool in = true;
      for (const auto& r : radii) {
        if (r <= 0) continue;
        for (Rational rr : {Rational(r), Rational(r / 2)}) {
          bool meets = false;
          for (auto y : subset) meets = meets || sp.dist[x][y] < rr;
          in = in && meets;
        }
      }
      if (in) expected.push_back(x);
    }
    CHECK(closure_of_subset(sp, subset) == expected);
  }
}
