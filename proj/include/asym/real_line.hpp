#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asym/set_model.hpp"

namespace asym {

/// A complementary ray (-inf, end) or (end, inf); `end_in_set` tells whether the
/// set contains the endpoint.
struct ComplementRay {
  Rational end;
  int direction = 1;
  bool end_in_set = true;
};

struct ComponentReport {
  Rational window;
  Rational inner_radius;                // components this close to accumulation points are skipped
  std::vector<Interval> bounded;        // open components inside [-H, H]
  std::vector<Interval> truncated;      // components cut by the window edge
  std::vector<ComplementRay> unbounded;
  std::vector<Rational> lengths;        // sorted lengths of `bounded`
};

/// Smallest window accepted by the windowed operations.
Rational required_window(const SetModel& model);

ComponentReport complement_components(const SetModel& model, const Rational& H,
                                      const Rational& inner_radius = Rational(1));

struct LineIsometry {
  bool isometric = false;
  int sign = 1;      // t -> sign * t + shift
  Rational shift;
  std::string statistic;  // why not, when not isometric
};

LineIsometry line_isometry_test(const SetModel& A, const SetModel& B, const Rational& H = 64);

struct SelfSimilarity {
  bool consistent = true;
  std::optional<Rational> witness_length;
  bool witness_in_scaled = false;  // the witness occurs in R \ (A / k) but not in R \ A
};

SelfSimilarity scaling_self_similarity(const SetModel& A, const Rational& k, const Rational& H = 64);

struct LineClassification {
  enum class Status { isometric_to_R, isometric_to_R_plus, fails_condition_with, inconclusive };
  Status status = Status::inconclusive;
  std::optional<Rational> k;
  std::optional<Rational> length;
  int sign = 1;      // isometric_to_R_plus: t -> sign * t + shift maps Y onto [0, inf)
  Rational shift;
};

const char* to_string(LineClassification::Status s);

std::vector<Rational> default_k_samples();

LineClassification classify_line_subspace(const SetModel& Y, const std::vector<Rational>& k_samples,
                                          const Rational& H = 64);

}  // namespace asym
