#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "asym/stability.hpp"

#include "support.hpp"

using namespace asym;

namespace {

using S = PointSequenceSpec;
const ScalingSequence geo2 = ScalingSequence::geometric(2);

std::vector<S> four_family() {
  return {S::affine("r", 1), S::affine("2r", 2), S::affine("sqrt", 0, 1, Sublinear::sqrt_r),
          S::affine("alt", 1, 0, Sublinear::constant, true)};
}

// Oracle: maximal cliques by brute force over all vertex subsets.
std::vector<std::vector<std::size_t>> brute_cliques(const StabilityGraph& g) {
  std::size_t n = g.vertices.size();
  std::vector<std::vector<std::size_t>> cliques;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) members.push_back(i);
    bool clique = true;
    for (auto i : members)
      for (auto j : members) clique = clique && (i == j || g.adjacent(i, j));
    if (!clique) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v) {
      if (mask >> v & 1) continue;
      bool joins = true;
      for (auto i : members) joins = joins && g.adjacent(i, v);
      maximal = !joins;
    }
    if (maximal) cliques.push_back(members);
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

}  // namespace

TEST_CASE("stability graph of the four-sequence family") {
  auto g = stability_graph(four_family(), geo2);
  CHECK(g.value(0, 1) == Rational(1));
  CHECK(g.value(0, 2) == Rational(1));
  CHECK(g.value(1, 2) == Rational(2));
  CHECK(g.value(3, 2) == Rational(1));
  CHECK_FALSE(g.adjacent(3, 0));
  CHECK_FALSE(g.adjacent(3, 1));
  CHECK(g.edges.size() == 4);
  CHECK(g.zero_set == std::vector<bool>{false, false, true, false});
  auto cliques = maximal_self_stable(g);
  CHECK(cliques == std::vector<std::vector<std::size_t>>{{0, 1, 2}, {2, 3}});
  CHECK(cliques == brute_cliques(g));
}

TEST_CASE("trivial graphs") {
  auto single = stability_graph({S::affine("x", 1)}, geo2);
  CHECK(single.edges.empty());
  CHECK(maximal_self_stable(single) == std::vector<std::vector<std::size_t>>{{0}});
  std::vector<S> bounded{S::affine("a", 0, 1), S::affine("b", 0, -4), S::closed_form("c", "3"),
                         S::affine("d", 0, 2, Sublinear::constant, true)};
  auto g = stability_graph(bounded, geo2);
  CHECK(g.edges.size() == 6);
  for (const auto& e : g.edges) CHECK(e.value == 0);
  CHECK(maximal_self_stable(g).size() == 1);
}

TEST_CASE("zero-set vertex joins every clique") {
  // three mutually unstable vertices plus a sublinear one adjacent to all
  StabilityGraph g;
  g.vertices = {S::affine("x", 1), S::affine("y", 2), S::affine("z", 3), S::affine("o", 0, 1, Sublinear::sqrt_r)};
  g.edges = {{0, 3, 1}, {1, 3, 2}, {2, 3, 3}};
  g.zero_set = {false, false, false, true};
  g.scaling = geo2;
  auto cliques = maximal_self_stable(g);
  CHECK(cliques == std::vector<std::vector<std::size_t>>{{0, 3}, {1, 3}, {2, 3}});
  CHECK(cliques == brute_cliques(g));
}

TEST_CASE("clique enumeration matches brute force on random affine families") {
  std::vector<S> pool;
  for (int a = 0; a <= 3; ++a)
    for (bool alt : {false, true}) pool.push_back(S::affine("p", frac(a, 2), a, Sublinear::sqrt_r, alt));
  for (unsigned mask = 1; mask < (1u << pool.size()); mask += 7) {
    std::vector<S> family;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask >> i & 1) family.push_back(pool[i]);
    auto g = stability_graph(family, geo2);
    CHECK(maximal_self_stable(g) == brute_cliques(g));
  }
}

TEST_CASE("graph errors") {
  CHECK_THROWS_AS(stability_graph({S::closed_form("x", "(1 + (-1)^n) * r")}, geo2), InputError);
  std::vector<S> many;
  for (int i = 0; i < 21; ++i) many.push_back(S::affine("x", i));
  auto g = stability_graph(many, geo2);
  CHECK_THROWS_AS(maximal_self_stable(g), InputError);
}

TEST_CASE("pretangent spaces") {
  std::vector<S> clique{S::affine("0", 0), S::affine("1/2", frac(1, 2)), S::affine("1", 1), S::affine("2", 2)};
  auto q = pretangent_space(clique, geo2);
  REQUIRE(q.quotient.size() == 4);
  std::vector<Rational> pts{0, frac(1, 2), 1, 2};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(q.quotient.dist[q.projection[i]][q.projection[j]] == abs(pts[i] - pts[j]));

  auto zeros = pretangent_space({S::affine("a", 0, 3), S::affine("b", 0, 1, Sublinear::sqrt_r)}, geo2);
  CHECK(zeros.quotient.size() == 1);
  auto twins = pretangent_space({S::affine("x", 1, 1, Sublinear::sqrt_r), S::affine("y", 1)}, geo2);
  CHECK(twins.quotient.size() == 1);
  CHECK_THROWS(pretangent_space({S::affine("x", 1), S::affine("y", 1, 0, Sublinear::constant, true)}, geo2));
}

TEST_CASE("subsequence pushes") {
  auto even = IndexMap::affine(2, 0);
  auto push = subsequence_push({S::affine("r", 1), S::affine("2r", 2)}, geo2, even);
  CHECK(push.distances_preserved);
  CHECK(push.tilde_preserved);
  CHECK(d_r(push.pushed[0], push.pushed[1], push.scaling).is_value(1));

  auto fixed = subsequence_push({S::affine("r", 1), S::affine("alt", 1, 0, Sublinear::constant, true)}, geo2, even);
  CHECK(fixed.newly_stable.size() == 1);
  CHECK(d_r(fixed.pushed[0], fixed.pushed[1], fixed.scaling).is_value(0));

  auto family = four_family();
  auto same = subsequence_push(family, geo2, IndexMap::identity());
  CHECK(same.distances_preserved);
  CHECK(same.newly_stable.empty());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) {
      auto before = d_up(family[i], family[j], geo2);
      auto after = d_up(same.pushed[i], same.pushed[j], same.scaling);
      CHECK(before.value == after.value);
    }
}

TEST_CASE("tangency probes") {
  std::vector<S> clique{S::affine("0", 0), S::affine("1", 1), S::affine("2", 2)};
  std::vector<S> affine_pool{S::affine("3", 3), S::affine("1/3", frac(1, 3))};
  std::vector<IndexMap> maps{IndexMap::affine(2, 0), IndexMap::affine(3, 1), IndexMap::power(2)};
  for (const auto& probe : tangency_probe(clique, geo2, maps, affine_pool)) CHECK_FALSE(probe.extension_found);
  for (const auto& probe : tangency_probe(clique, geo2, maps, {})) CHECK_FALSE(probe.extension_found);

  // alt pushes onto r under the even map: an existing class, not a new one
  auto alt = S::affine("alt", 1, 0, Sublinear::constant, true);
  auto probes = tangency_probe({S::affine("r", 1)}, geo2, {IndexMap::affine(2, 0)}, {alt});
  CHECK_FALSE(probes[0].extension_found);
  // 3 on even indices, 0 on odd: unstable with r under r, stable at distance 2 after the even push
  auto sparse = S::closed_form("sparse", "(3/2) * (1 + (-1)^n) * r");
  auto found = tangency_probe({S::affine("r", 1)}, geo2, {IndexMap::affine(2, 0)}, {sparse});
  CHECK(found[0].extension_found);
  CHECK(found[0].witness == std::size_t{0});
}

TEST_CASE("projection to subspaces") {
  std::vector<S> family{S::affine("a", 1), S::affine("b", frac(5, 3)), S::affine("c", frac(-7, 2))};
  auto lat = project_family_to_subspace(family, SetModel::lattice_model(1, 0), geo2, true);
  CHECK(lat.all_zero);
  for (const auto& r : lat.residuals) CHECK(r.is_value(0));
  auto same = project_family_to_subspace(family, SetModel::full(), geo2, true);
  CHECK(same.all_zero);

  auto far = project_family_to_subspace({S::affine("a", frac(3, 2))}, SetModel::geometric_points_model(2, 1, 0),
                                        geo2);
  CHECK_FALSE(far.all_zero);
  CHECK(far.residuals[0].is_value(frac(1, 2)));
  // nearest power to (3/2) 2^n is at distance 2^(n-1); relative to r_n = 2^n that is 1/2
  for (long n = 1; n < 20; ++n) {
    Rational x = frac(3, 2) * pow(Rational(2), n);
    CHECK(abs(eval_point(far.projected[0], geo2, n) - x) == pow(Rational(2), n - 1));
  }
  CHECK_THROWS_AS(project_family_to_subspace({S::affine("a", frac(3, 2))},
                                             SetModel::geometric_points_model(2, 1, 0), geo2, true),
                  InvariantFailure);
}
