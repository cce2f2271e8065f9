#include "asym/stability.hpp"

#include <algorithm>
#include <cmath>

namespace asym {

bool StabilityGraph::adjacent(std::size_t i, std::size_t j) const { return value(i, j).has_value(); }

std::optional<Rational> StabilityGraph::value(std::size_t i, std::size_t j) const {
  if (i == j) return Rational(0);
  if (i > j) std::swap(i, j);
  for (const auto& e : edges) {
    if (e.i == i && e.j == j) return e.value;
  }
  return std::nullopt;
}

StabilityGraph stability_graph(const std::vector<PointSequenceSpec>& family, const ScalingSequence& r,
                               const EstimatorConfig& config) {
  StabilityGraph g;
  g.vertices = family;
  g.scaling = r;
  for (const auto& x : family) {
    LimitEstimate t = tilde_d(x, r, 0, config);
    if (t.status != LimitEstimate::Status::value) {
      throw InputError("sequence '" + x.name + "' has no certified finite d~ (" + t.diagnostic + ")");
    }
    g.zero_set.push_back(t.value == 0);
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      LimitEstimate d = d_r(family[i], family[j], r, config);
      if (d.status == LimitEstimate::Status::inconclusive) {
        throw UnsupportedGeometry("stability of ('" + family[i].name + "', '" + family[j].name +
                                  "') is inconclusive: " + d.diagnostic);
      }
      if (d.status == LimitEstimate::Status::value) g.edges.push_back({i, j, d.value});
    }
  }
  return g;
}

std::vector<std::vector<std::size_t>> maximal_self_stable(const StabilityGraph& graph) {
  const std::size_t n = graph.vertices.size();
  if (n > max_clique_vertices) {
    throw InputError("clique enumeration bound exceeded: " + std::to_string(n) + " vertices (bound " +
                     std::to_string(max_clique_vertices) + ")");
  }
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : graph.edges) adj[e.i][e.j] = adj[e.j][e.i] = true;
  std::vector<std::vector<std::size_t>> cliques;
  auto bron_kerbosch = [&](auto&& self, std::vector<std::size_t> R, std::vector<std::size_t> P,
                           std::vector<std::size_t> X) -> void {
    if (P.empty() && X.empty()) {
      std::sort(R.begin(), R.end());
      cliques.push_back(R);
      return;
    }
    std::size_t pivot = !P.empty() ? P.front() : X.front();
    std::size_t best = 0;
    for (auto u : P) {
      std::size_t deg = std::count_if(P.begin(), P.end(), [&](std::size_t v) { return adj[u][v]; });
      if (deg >= best) {
        best = deg;
        pivot = u;
      }
    }
    std::vector<std::size_t> candidates;
    for (auto v : P) {
      if (!adj[pivot][v]) candidates.push_back(v);
    }
    for (auto v : candidates) {
      std::vector<std::size_t> R2 = R, P2, X2;
      R2.push_back(v);
      for (auto w : P) {
        if (adj[v][w]) P2.push_back(w);
      }
      for (auto w : X) {
        if (adj[v][w]) X2.push_back(w);
      }
      self(self, R2, P2, X2);
      P.erase(std::find(P.begin(), P.end(), v));
      X.push_back(v);
    }
  };
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (n > 0) bron_kerbosch(bron_kerbosch, {}, all, {});
  std::sort(cliques.begin(), cliques.end());
  // Zero-set members are stable with every member of Seq, so they sit in every clique.
  for (const auto& clique : cliques) {
    for (std::size_t v = 0; v < n; ++v) {
      if (graph.zero_set[v] && std::find(clique.begin(), clique.end(), v) == clique.end()) {
        throw InvariantFailure("maximal clique misses zero-set member '" + graph.vertices[v].name + "'");
      }
    }
  }
  return cliques;
}

QuotientMetricSpace pretangent_space(const StabilityGraph& graph, const std::vector<std::size_t>& clique) {
  FinitePseudometricSpace space;
  space.dist.assign(clique.size(), std::vector<Rational>(clique.size(), Rational(0)));
  for (std::size_t a = 0; a < clique.size(); ++a) {
    space.labels.push_back(graph.vertices[clique[a]].name);
    for (std::size_t b = 0; b < clique.size(); ++b) {
      auto v = graph.value(clique[a], clique[b]);
      if (!v) {
        throw InputError("'" + graph.vertices[clique[a]].name + "' and '" + graph.vertices[clique[b]].name +
                         "' are not mutually stable");
      }
      space.dist[a][b] = *v;
    }
  }
  auto check = validate_pseudometric(space.labels, space.dist);
  if (!check.ok) throw InvariantFailure("d_r on a clique is not a pseudometric: " + check.violations.front().message);
  return metric_identify(space);
}

QuotientMetricSpace pretangent_space(const std::vector<PointSequenceSpec>& clique, const ScalingSequence& r,
                                     const EstimatorConfig& config) {
  StabilityGraph g = stability_graph(clique, r, config);
  std::vector<std::size_t> all(clique.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return pretangent_space(g, all);
}

namespace {

bool same_value(const LimitEstimate& a, const LimitEstimate& b, const EstimatorConfig& config) {
  if (a.certificate == LimitEstimate::Certificate::exact && b.certificate == LimitEstimate::Certificate::exact) {
    return a.value == b.value;
  }
  return std::abs(to_double(a.value - b.value)) <= config.tolerance * std::max(1.0, std::abs(to_double(a.value)));
}

}  // namespace

PushReport subsequence_push(const std::vector<PointSequenceSpec>& family, const ScalingSequence& r, const IndexMap& map,
                            const EstimatorConfig& config) {
  PushReport out;
  out.scaling = ScalingSequence::subsequence(r, map);
  for (const auto& x : family) out.pushed.push_back(push_spec(x, r, map));
  for (std::size_t i = 0; i < family.size(); ++i) {
    LimitEstimate before = tilde_d(family[i], r, 0, config);
    LimitEstimate after = tilde_d(out.pushed[i], out.scaling, 0, config);
    if (before.status == LimitEstimate::Status::value &&
        (after.status != LimitEstimate::Status::value || !same_value(before, after, config))) {
      out.tilde_preserved = false;
      out.mismatches.push_back("d~ of '" + family[i].name + "' changed");
    }
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      LimitEstimate d0 = d_r(family[i], family[j], r, config);
      LimitEstimate d1 = d_r(out.pushed[i], out.pushed[j], out.scaling, config);
      if (d0.status == LimitEstimate::Status::value) {
        if (d1.status != LimitEstimate::Status::value || !same_value(d0, d1, config)) {
          out.distances_preserved = false;
          out.mismatches.push_back("d_r('" + family[i].name + "','" + family[j].name + "') changed");
        }
      } else if (d0.status == LimitEstimate::Status::no_limit && d1.status == LimitEstimate::Status::value) {
        out.newly_stable.emplace_back(i, j);
      }
    }
  }
  return out;
}

std::vector<TangencyProbe> tangency_probe(const std::vector<PointSequenceSpec>& clique, const ScalingSequence& r,
                                          const std::vector<IndexMap>& maps, const std::vector<PointSequenceSpec>& pool,
                                          const EstimatorConfig& config) {
  std::vector<TangencyProbe> out;
  for (const auto& map : maps) {
    TangencyProbe probe;
    probe.map = map;
    ScalingSequence r2 = ScalingSequence::subsequence(r, map);
    std::vector<PointSequenceSpec> pushed;
    for (const auto& c : clique) pushed.push_back(push_spec(c, r, map));
    for (std::size_t w = 0; w < pool.size() && !probe.extension_found; ++w) {
      bool stable_before = true;
      for (const auto& c : clique) {
        if (d_r(pool[w], c, r, config).status != LimitEstimate::Status::value) stable_before = false;
      }
      if (stable_before) continue;
      PointSequenceSpec w2 = push_spec(pool[w], r, map);
      bool fits = true;
      for (const auto& c : pushed) {
        LimitEstimate d = d_r(w2, c, r2, config);
        if (d.status != LimitEstimate::Status::value || d.value == 0) fits = false;
      }
      if (fits) {
        probe.extension_found = true;
        probe.witness = w;
        probe.note = "'" + pool[w].name + "' becomes a new point after restricting to n_k = " + map.describe();
      }
    }
    if (!probe.extension_found) probe.note = "no extension in the pool (not a tangency certificate)";
    out.push_back(probe);
  }
  return out;
}

Projection project_family_to_subspace(const std::vector<PointSequenceSpec>& family, const SetModel& Y,
                                      const ScalingSequence& r, bool expect_equivalent, const EstimatorConfig& config) {
  Projection out;
  for (const auto& x : family) {
    PointSequenceSpec p = PointSequenceSpec::in_set(x.name + "@Y", Y, x);
    LimitEstimate residual = d_up(x, p, r, config);
    bool zero = residual.status == LimitEstimate::Status::value && residual.value == 0;
    if (!zero) out.all_zero = false;
    if (expect_equivalent && !zero) {
      throw InvariantFailure("projection of '" + x.name + "' onto " + describe(Y) + " has nonzero residual");
    }
    out.projected.push_back(std::move(p));
    out.residuals.push_back(std::move(residual));
  }
  return out;
}

}  // namespace asym
