#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "asym/rational.hpp"

namespace asym {

using DistanceTable = std::vector<std::vector<Rational>>;

struct FinitePseudometricSpace {
  std::vector<std::string> labels;
  DistanceTable dist;

  std::size_t size() const { return labels.size(); }
  /// Builds a space and validates it; throws InputError listing violations.
  static FinitePseudometricSpace make(std::vector<std::string> labels, DistanceTable dist);
};

struct Violation {
  enum class Kind { shape, negative, asymmetric, diagonal, triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;  // triangle: d(i,k) > d(i,j) + d(j,k)
  std::string message;
};

struct ValidationResult {
  bool ok = true;
  std::vector<Violation> violations;
};

ValidationResult validate_pseudometric(const std::vector<std::string>& labels, const DistanceTable& table);

struct ZeroClassPartition {
  std::vector<std::vector<std::size_t>> blocks;  // label indices, each block sorted, blocks by first member
  std::vector<std::size_t> block_of;             // label index -> block index
};

ZeroClassPartition zero_classes(const FinitePseudometricSpace& space);

struct QuotientMetricSpace {
  FinitePseudometricSpace quotient;
  std::vector<std::size_t> projection;  // label index -> quotient point
};

QuotientMetricSpace metric_identify(const FinitePseudometricSpace& space);

struct PseudoisometryCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> bad_pair;  // distance not preserved
  std::optional<std::size_t> uncovered;                         // dst point far from the image
};

/// map[i] is the dst index of src label i.
PseudoisometryCheck is_pseudoisometry(const std::vector<std::size_t>& map, const FinitePseudometricSpace& src,
                                      const FinitePseudometricSpace& dst);

inline constexpr std::size_t default_search_bound = 6;

/// Exhaustive search over all label maps src -> dst.
std::optional<std::vector<std::size_t>> exists_pseudoisometry(const FinitePseudometricSpace& src,
                                                              const FinitePseudometricSpace& dst,
                                                              std::size_t bound = default_search_bound);

/// Distance-preserving bijection between two metric spaces, if any.
std::optional<std::vector<std::size_t>> find_isometry(const FinitePseudometricSpace& a,
                                                      const FinitePseudometricSpace& b);

/// Closure in the ball topology; for finite spaces the union of zero classes.
std::vector<std::size_t> closure_of_subset(const FinitePseudometricSpace& space, const std::vector<std::size_t>& subset);

/// Random valid pseudometric: l1 distances of points on a small integer grid
/// (repeated points produce zero classes).
FinitePseudometricSpace random_pseudometric(std::mt19937_64& rng, std::size_t points);

}  // namespace asym
