#pragma once

#include <optional>
#include <vector>

#include "asym/sequence.hpp"
#include "asym/set_model.hpp"

namespace asym {

struct DistanceSet {
  LineSet set;             // subset of [0, inf)
  Rational boundary_bound; // |d(z, p) - nominal| stays below this; 0 for exact 1-D folds
};

/// {d(x, p) : x in model}. Planar support: x factor the line or a ray from 0,
/// and the nearest distance from p to the model rational.
DistanceSet distance_set(const SetModel& model, const AmbientPoint& p);

struct SpectrumQuery {
  SetModel set;
  AmbientPoint p;  // empty: origin
  ScalingSequence scaling;
  Rational t;
  Rational epsilon = Rational(1, 100);
  long horizon = 50;
  long persistence = 10;
};

struct SpectrumVerdict {
  enum class Status { present, absent_at_horizon };
  Status status = Status::absent_at_horizon;
  std::vector<long> hit_indices;
};

const char* to_string(SpectrumVerdict::Status s);

SpectrumVerdict spectrum_contains(const SpectrumQuery& query);
/// Same probe on a precomputed distance set.
SpectrumVerdict spectrum_contains(const LineSet& distances, const ScalingSequence& r, const Rational& t,
                                  const Rational& epsilon, long horizon, long persistence);

struct SpectrumRow {
  Rational t;
  SpectrumVerdict first, second;
  std::optional<long> first_divergent_index;  // set when the statuses differ
  bool differs() const { return first.status != second.status; }
};

struct SpectrumComparison {
  std::vector<SpectrumRow> rows;
  std::vector<Rational> differences;
};

/// {0, 1/8, ..., 4}
std::vector<Rational> default_spectrum_grid();

SpectrumComparison compare_spectra(const SetModel& set, const ScalingSequence& r1, const ScalingSequence& r2,
                                   const std::vector<Rational>& t_grid, const Rational& epsilon = Rational(1, 100),
                                   long horizon = 50, long persistence = 10, const AmbientPoint& p = {});

}  // namespace asym
