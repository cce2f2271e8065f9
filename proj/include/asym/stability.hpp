#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asym/pseudometric.hpp"
#include "asym/sequence.hpp"

namespace asym {

struct StabilityEdge {
  std::size_t i, j;  // i < j
  Rational value;    // d_r
};

struct StabilityGraph {
  std::vector<PointSequenceSpec> vertices;
  std::vector<StabilityEdge> edges;
  std::vector<bool> zero_set;  // d~ = 0
  ScalingSequence scaling;

  bool adjacent(std::size_t i, std::size_t j) const;
  std::optional<Rational> value(std::size_t i, std::size_t j) const;
};

/// Pairwise d_r over the family. Throws UnsupportedGeometry naming the pair when a
/// pair is inconclusive, and InputError when a member has no finite d~.
StabilityGraph stability_graph(const std::vector<PointSequenceSpec>& family, const ScalingSequence& r,
                               const EstimatorConfig& config = {});

inline constexpr std::size_t max_clique_vertices = 20;

/// All maximal cliques (Bron-Kerbosch with pivoting), each sorted, in lexicographic order.
std::vector<std::vector<std::size_t>> maximal_self_stable(const StabilityGraph& graph);

/// Metric identification of the clique under d_r.
QuotientMetricSpace pretangent_space(const StabilityGraph& graph, const std::vector<std::size_t>& clique);
QuotientMetricSpace pretangent_space(const std::vector<PointSequenceSpec>& clique, const ScalingSequence& r,
                                     const EstimatorConfig& config = {});

struct PushReport {
  std::vector<PointSequenceSpec> pushed;
  ScalingSequence scaling;  // r' = subsequence(r, map)
  bool distances_preserved = true;   // all originally stable pairs keep their value
  bool tilde_preserved = true;       // d~ unchanged
  std::vector<std::pair<std::size_t, std::size_t>> newly_stable;
  std::vector<std::string> mismatches;
};

PushReport subsequence_push(const std::vector<PointSequenceSpec>& family, const ScalingSequence& r, const IndexMap& map,
                            const EstimatorConfig& config = {});

struct TangencyProbe {
  IndexMap map;
  bool extension_found = false;
  std::optional<std::size_t> witness;  // pool index
  std::string note;
};

/// For each map, look for a pool member unstable with the clique under r whose push is
/// stable with the pushed clique and sits at positive distance from all of it.
std::vector<TangencyProbe> tangency_probe(const std::vector<PointSequenceSpec>& clique, const ScalingSequence& r,
                                          const std::vector<IndexMap>& maps, const std::vector<PointSequenceSpec>& pool,
                                          const EstimatorConfig& config = {});

struct Projection {
  std::vector<PointSequenceSpec> projected;
  std::vector<LimitEstimate> residuals;  // d^r(original, projected)
  bool all_zero = true;
};

/// Replaces each member by the nearest point of Y. When expect_equivalent is set
/// a nonzero residual raises InvariantFailure.
Projection project_family_to_subspace(const std::vector<PointSequenceSpec>& family, const SetModel& Y,
                                      const ScalingSequence& r, bool expect_equivalent = false,
                                      const EstimatorConfig& config = {});

}  // namespace asym
