#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asym/sequence.hpp"
#include "asym/set_model.hpp"

namespace asym {

struct EpsilonPair {
  Distance zy;  // sup over S_t^Z of the distance to Y
  Distance yz;  // sup over S_t^Y of the distance to Z
  Distance eps() const { return std::max(zy, yz); }
};

/// Exact directed values at radius t about p (empty slices give 0).
EpsilonPair epsilon_t(const SetModel& Y, const SetModel& Z, const AmbientPoint& p, const Rational& t);

struct EpsilonSample {
  Rational t;
  Distance zy, yz, eps, ratio;  // ratio = eps / t
};

struct EpsilonCurve {
  std::vector<EpsilonSample> samples;
};

EpsilonCurve epsilon_curve(const SetModel& Y, const SetModel& Z, const AmbientPoint& p,
                           const std::vector<Rational>& t_grid);

/// Sup of a distance that may be infinite.
struct ExtendedDistance {
  bool infinite = false;
  Distance value;
  std::string text() const { return infinite ? "inf" : value.exact_text(); }
};

struct EquivalenceConfig {
  Rational growth = 2;   // numeric grid t_k = growth^k
  int horizon = 64;      // number of grid points
  double threshold = 1e-3;
  int witness_periods = 8;
};

struct EquivalenceVerdict {
  enum class Status { equivalent_exact, equivalent_numerical, not_equivalent };
  Status status = Status::equivalent_numerical;
  std::optional<Distance> bound;      // equivalent_exact: eps(t) <= bound for all t
  std::vector<Rational> witness_t;    // not_equivalent: eps(t) >= c t at each
  Rational witness_c;
  bool structural_witness = false;    // false: witness read off the numeric grid
  double max_ratio = 0;               // equivalent_numerical: max eps/t over the top decade
  std::string note;
};

const char* to_string(EquivalenceVerdict::Status s);

EquivalenceVerdict decide_strong_equivalence(const SetModel& Y, const SetModel& Z, const AmbientPoint& p = {},
                                             const EquivalenceConfig& config = {});

/// Directed Hausdorff distance sup_{a in A} d(a, B) for models of equal dimension.
ExtendedDistance directed_hausdorff(const SetModel& A, const SetModel& B);

/// max(sup_{z in B} d(z, Y), sup_{y in A} d(y, Z)); requires A inside Y and B inside Z.
ExtendedDistance conditional_hausdorff(const SetModel& A, const SetModel& B, const SetModel& Y, const SetModel& Z);

struct EpsNetVerdict {
  enum class Status { certified, counterexample, inconclusive };
  Status status = Status::inconclusive;
  AmbientPoint point;  // counterexample: a point of Y when point_in_y, else of Z
  bool point_in_y = false;
  Distance distance;   // its distance to the other set
  std::string note;
};

const char* to_string(EpsNetVerdict::Status s);

/// Are Y and Z mutual epsilon-nets? Counterexamples are searched in order of
/// increasing |x| over at most `budget` candidate points.
EpsNetVerdict check_eps_net(const SetModel& Y, const SetModel& Z, const Rational& epsilon, std::size_t budget = 4096);

struct NearestPointMaps {
  std::function<AmbientPoint(const AmbientPoint&)> phi;  // Y -> Z
  std::function<AmbientPoint(const AmbientPoint&)> psi;  // Z -> Y
  std::vector<LimitEstimate> residuals;  // limsup d(phi(y_n), y_n) / r_n per spec
  bool residuals_zero = true;
};

/// Points y_n of the planar cases are taken on the x axis, (spec_n, 0).
NearestPointMaps build_nearest_point_maps(const SetModel& Y, const SetModel& Z, const Rational& eps1,
                                          const std::vector<PointSequenceSpec>& specs, const ScalingSequence& r,
                                          const EstimatorConfig& config = {});

}  // namespace asym
