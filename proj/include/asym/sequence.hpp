#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asym/rational.hpp"
#include "asym/set_model.hpp"

namespace asym {

/// Strictly increasing index map k -> n_k (k >= 1).
struct IndexMap {
  enum class Kind { affine, power };
  Kind kind = Kind::affine;
  long alpha = 1;  // affine: n_k = alpha * k + beta
  long beta = 0;
  int exponent = 1;  // power: n_k = k^exponent

  long operator()(long k) const;
  std::string describe() const;

  static IndexMap identity() { return {}; }
  static IndexMap affine(long alpha, long beta);
  static IndexMap power(int exponent);

  friend bool operator==(const IndexMap&, const IndexMap&) = default;
};

struct PointSequenceSpec;

struct ScalingSequence {
  enum class Kind { geometric, polynomial, interleave, subsequence, distance_of };
  Kind kind = Kind::geometric;
  Rational q = 2, c = 1;  // geometric: c q^n; polynomial: c n^degree
  int degree = 1;
  std::vector<ScalingSequence> parts;  // interleave: two; subsequence: one
  IndexMap map;
  std::shared_ptr<const PointSequenceSpec> source;  // distance_of: r_n = |x_n - p| (1 when x_n = p)
  Rational base_point;

  static ScalingSequence geometric(const Rational& q, const Rational& c = 1);
  static ScalingSequence polynomial(int degree, const Rational& c = 1);
  static ScalingSequence interleave(ScalingSequence odd, ScalingSequence even);
  static ScalingSequence subsequence(ScalingSequence base, IndexMap map);
  /// The scaling built from a sequence: r_n = d(x_n, p), or 1 where x_n = p.
  static ScalingSequence distance_of(const PointSequenceSpec& x, const Rational& p);

  std::string describe() const;
};

void validate(const ScalingSequence& r);
Rational eval_scaling(const ScalingSequence& r, long n);

/// Expression in n, r (= r_n), rationals, + - * / ^, sqrt(), log().
struct Expr {
  enum class Op { constant, index, scale, add, sub, mul, div, pow, neg, sqrt, log };
  Op op = Op::constant;
  Rational value;
  std::vector<Expr> args;

  static Expr parse(const std::string& text);
  bool uses_scale() const;
  std::string to_string() const;
};

enum class Sublinear { constant, sqrt_r, log_r };

struct PointSequenceSpec {
  enum class Kind { affine, in_set, closed_form, reindexed };
  Kind kind = Kind::affine;
  std::string name;

  // affine: x_n = sign * (-1)^(alternating * n) * (a r_n + b u_n)
  Rational a, b;
  Sublinear u = Sublinear::constant;
  int sign = 1;
  bool alternating = false;

  // in_set: nearest point of the model to the base sequence
  std::shared_ptr<SetModel> model;
  std::shared_ptr<PointSequenceSpec> base;
  std::shared_ptr<const LineSet> line;  // compiled model

  // closed_form
  Expr expr;

  // reindexed: x'_k = base_{n_k} with base evaluated under `original`
  IndexMap map;
  std::shared_ptr<ScalingSequence> original;

  static PointSequenceSpec affine(std::string name, const Rational& a, const Rational& b = 0,
                                  Sublinear u = Sublinear::constant, bool alternating = false, int sign = 1);
  static PointSequenceSpec in_set(std::string name, const SetModel& model, const PointSequenceSpec& base);
  static PointSequenceSpec closed_form(std::string name, const std::string& expression);

  std::string describe() const;
};

/// Value of x_n. Irrational parts (sqrt, log) are replaced by rationals with
/// roughly 200 bits of relative accuracy.
Rational eval_point(const PointSequenceSpec& x, const ScalingSequence& r, long n);

struct LimitEstimate {
  enum class Status { value, no_limit, inconclusive };
  enum class Certificate { exact, numeric };
  Status status = Status::inconclusive;
  Certificate certificate = Certificate::exact;
  Rational value;                      // valid when status == value
  std::vector<Rational> clusters;      // no_limit: distinct cluster values
  std::vector<std::vector<long>> witness_indices;  // no_limit: one index family per cluster
  std::string diagnostic;

  bool is_value(const Rational& v) const { return status == Status::value && value == v; }
};

struct EstimatorConfig {
  long horizon = 1024;        // largest index probed (power of two)
  double tolerance = 1e-9;    // tail spread accepted as convergence
};

/// Finite-horizon limit estimate of f(n): odd and even indices are examined
/// separately over the last three dyadic blocks.
LimitEstimate estimate_limit(const std::vector<std::pair<long, Rational>>& values, const EstimatorConfig& config);

LimitEstimate tilde_d(const PointSequenceSpec& x, const ScalingSequence& r, const Rational& p = 0,
                      const EstimatorConfig& config = {});
LimitEstimate d_r(const PointSequenceSpec& x, const PointSequenceSpec& y, const ScalingSequence& r,
                  const EstimatorConfig& config = {});
/// limsup |x_n - y_n| / r_n.
LimitEstimate d_up(const PointSequenceSpec& x, const PointSequenceSpec& y, const ScalingSequence& r,
                   const EstimatorConfig& config = {});

/// x'_k = x_{n_k}, expressed symbolically when possible.
PointSequenceSpec push_spec(const PointSequenceSpec& x, const ScalingSequence& r, const IndexMap& map);

}  // namespace asym
