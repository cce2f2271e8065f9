#include "asym/sequence.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <sstream>

namespace asym {

long IndexMap::operator()(long k) const {
  if (k < 1) throw InputError("indices start at 1");
  if (kind == Kind::affine) return alpha * k + beta;
  long out = 1;
  for (int i = 0; i < exponent; ++i) out *= k;
  return out;
}

std::string IndexMap::describe() const {
  if (kind == Kind::power) return "k^" + std::to_string(exponent);
  std::string out = alpha == 1 ? "k" : std::to_string(alpha) + "k";
  if (beta > 0) out += "+" + std::to_string(beta);
  if (beta < 0) out += std::to_string(beta);
  return out;
}

IndexMap IndexMap::affine(long alpha, long beta) {
  if (alpha < 1 || alpha + beta < 1) throw InputError("index map k -> alpha k + beta needs alpha >= 1 and alpha + beta >= 1");
  IndexMap m;
  m.alpha = alpha;
  m.beta = beta;
  return m;
}

IndexMap IndexMap::power(int exponent) {
  if (exponent < 1) throw InputError("index map k -> k^p needs p >= 1");
  IndexMap m;
  m.kind = Kind::power;
  m.exponent = exponent;
  return m;
}

ScalingSequence ScalingSequence::geometric(const Rational& q, const Rational& c) {
  ScalingSequence r;
  r.kind = Kind::geometric;
  r.q = q;
  r.c = c;
  return r;
}

ScalingSequence ScalingSequence::polynomial(int degree, const Rational& c) {
  ScalingSequence r;
  r.kind = Kind::polynomial;
  r.degree = degree;
  r.c = c;
  return r;
}

ScalingSequence ScalingSequence::interleave(ScalingSequence odd, ScalingSequence even) {
  ScalingSequence r;
  r.kind = Kind::interleave;
  r.parts = {std::move(odd), std::move(even)};
  return r;
}

ScalingSequence ScalingSequence::subsequence(ScalingSequence base, IndexMap map) {
  ScalingSequence r;
  r.kind = Kind::subsequence;
  r.parts = {std::move(base)};
  r.map = map;
  return r;
}

ScalingSequence ScalingSequence::distance_of(const PointSequenceSpec& x, const Rational& p) {
  if (x.kind != PointSequenceSpec::Kind::closed_form || x.expr.uses_scale()) {
    throw InputError("a scaling built from a sequence needs a closed form in n alone");
  }
  ScalingSequence r;
  r.kind = Kind::distance_of;
  r.source = std::make_shared<PointSequenceSpec>(x);
  r.base_point = p;
  return r;
}

std::string ScalingSequence::describe() const {
  switch (kind) {
    case Kind::geometric:
      return (c == 1 ? "" : to_string(c) + "*") + to_string(q) + "^n";
    case Kind::polynomial:
      return (c == 1 ? "" : to_string(c) + "*") + "n^" + std::to_string(degree);
    case Kind::interleave:
      return "interleave(" + parts[0].describe() + "," + parts[1].describe() + ")";
    case Kind::subsequence:
      return "subsequence(" + parts[0].describe() + ",n_k=" + map.describe() + ")";
    case Kind::distance_of:
      return "distance_of(" + source->describe() + "," + to_string(base_point) + ")";
  }
  return "";
}

void validate(const ScalingSequence& r) {
  switch (r.kind) {
    case ScalingSequence::Kind::geometric:
      if (r.q <= 1 || r.c <= 0) throw InputError("geometric scaling needs q > 1 and c > 0");
      break;
    case ScalingSequence::Kind::polynomial:
      if (r.degree < 1 || r.c <= 0) throw InputError("polynomial scaling needs degree >= 1 and c > 0");
      break;
    case ScalingSequence::Kind::interleave:
      if (r.parts.size() != 2) throw InputError("interleave needs two scalings");
      validate(r.parts[0]);
      validate(r.parts[1]);
      break;
    case ScalingSequence::Kind::subsequence:
      if (r.parts.size() != 1) throw InputError("subsequence needs one scaling");
      validate(r.parts[0]);
      if (r.map.kind == IndexMap::Kind::affine && (r.map.alpha < 1 || r.map.alpha + r.map.beta < 1)) {
        throw InputError("index map must be strictly increasing with n_1 >= 1");
      }
      if (r.map.kind == IndexMap::Kind::power && r.map.exponent < 1) throw InputError("index power must be >= 1");
      break;
    case ScalingSequence::Kind::distance_of:
      if (!r.source) throw InputError("distance_of scaling needs a source sequence");
      break;
  }
}

Rational eval_scaling(const ScalingSequence& r, long n) {
  if (n < 1) throw InputError("scaling indices start at 1");
  switch (r.kind) {
    case ScalingSequence::Kind::geometric:
      return r.c * pow(r.q, n);
    case ScalingSequence::Kind::polynomial:
      return r.c * pow(Rational(n), r.degree);
    case ScalingSequence::Kind::interleave:
      return n % 2 == 1 ? eval_scaling(r.parts[0], (n + 1) / 2) : eval_scaling(r.parts[1], n / 2);
    case ScalingSequence::Kind::subsequence:
      return eval_scaling(r.parts[0], r.map(n));
    case ScalingSequence::Kind::distance_of: {
      Rational x = eval_point(*r.source, ScalingSequence::geometric(2), n);
      Rational d = abs(x - r.base_point);
      return d == 0 ? Rational(1) : d;
    }
  }
  throw InvariantFailure("unknown scaling kind");
}

namespace {

Rational sqrt_approx(const Rational& x) {
  if (x < 0) throw InputError("sqrt of a negative value");
  if (auto exact = exact_sqrt(x)) return *exact;
  Integer scale = Integer(1) << 200;
  Integer radicand = x.get_num() * x.get_den() * scale * scale;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  Rational out(root, x.get_den() * scale);
  out.canonicalize();
  return out;
}

double ln_integer(const Integer& m) {
  long bits = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
  long shift = std::max(0L, bits - 60);
  Integer top = m >> shift;
  return std::log(top.get_d()) + static_cast<double>(shift) * std::log(2.0);
}

Rational log_approx(const Rational& x) {
  if (x <= 0) throw InputError("log of a nonpositive value");
  if (x == 1) return 0;
  return from_double(ln_integer(x.get_num()) - ln_integer(x.get_den()));
}

// Recursive-descent parser over a small grammar.
class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Expr parse() {
    Expr e = expression();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("expression '" + text_ + "' at position " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static Expr node(Expr::Op op, std::vector<Expr> args) {
    Expr e;
    e.op = op;
    e.args = std::move(args);
    return e;
  }
  Expr expression() {
    Expr left = term();
    while (true) {
      if (eat('+')) {
        Expr right = term();
        left = node(Expr::Op::add, {left, right});
      } else if (eat('-')) {
        Expr right = term();
        left = node(Expr::Op::sub, {left, right});
      } else {
        return left;
      }
    }
  }
  Expr term() {
    Expr left = unary();
    while (true) {
      if (eat('*')) {
        Expr right = unary();
        left = node(Expr::Op::mul, {left, right});
      } else if (eat('/')) {
        Expr right = unary();
        left = node(Expr::Op::div, {left, right});
      } else {
        return left;
      }
    }
  }
  Expr unary() {
    if (eat('-')) {
      Expr inner = unary();
      return node(Expr::Op::neg, {inner});
    }
    return power();
  }
  Expr power() {
    Expr base = primary();
    if (eat('^')) {
      Expr exponent = unary();
      return node(Expr::Op::pow, {base, exponent});
    }
    return base;
  }
  Expr primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (eat('(')) {
      Expr inner = expression();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
      Expr e;
      e.op = Expr::Op::constant;
      e.value = parse_rational(text_.substr(start, pos_ - start));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      if (word == "n") return node(Expr::Op::index, {});
      if (word == "r") return node(Expr::Op::scale, {});
      if (word == "sqrt" || word == "log") {
        if (!eat('(')) fail("expected '(' after " + word);
        Expr inner = expression();
        if (!eat(')')) fail("missing ')'");
        return node(word == "sqrt" ? Expr::Op::sqrt : Expr::Op::log, {inner});
      }
      fail("unknown name '" + word + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

Rational eval_expr(const Expr& e, long n, const Rational& r) {
  switch (e.op) {
    case Expr::Op::constant:
      return e.value;
    case Expr::Op::index:
      return Rational(n);
    case Expr::Op::scale:
      return r;
    case Expr::Op::add:
      return eval_expr(e.args[0], n, r) + eval_expr(e.args[1], n, r);
    case Expr::Op::sub:
      return eval_expr(e.args[0], n, r) - eval_expr(e.args[1], n, r);
    case Expr::Op::mul:
      return eval_expr(e.args[0], n, r) * eval_expr(e.args[1], n, r);
    case Expr::Op::div: {
      Rational d = eval_expr(e.args[1], n, r);
      if (d == 0) throw InputError("division by zero in expression");
      return eval_expr(e.args[0], n, r) / d;
    }
    case Expr::Op::pow: {
      Rational base = eval_expr(e.args[0], n, r);
      Rational exponent = eval_expr(e.args[1], n, r);
      if (exponent.get_den() != 1) throw InputError("non-integer exponent in expression");
      if (abs(exponent) > 100000) throw InputError("exponent too large in expression");
      return pow(base, exponent.get_num().get_si());
    }
    case Expr::Op::neg:
      return -eval_expr(e.args[0], n, r);
    case Expr::Op::sqrt:
      return sqrt_approx(eval_expr(e.args[0], n, r));
    case Expr::Op::log:
      return log_approx(eval_expr(e.args[0], n, r));
  }
  throw InvariantFailure("unknown expression node");
}

}  // namespace

Expr Expr::parse(const std::string& text) { return Parser(text).parse(); }

bool Expr::uses_scale() const {
  if (op == Op::scale) return true;
  for (const auto& a : args) {
    if (a.uses_scale()) return true;
  }
  return false;
}

std::string Expr::to_string() const {
  auto bin = [&](const char* sym) { return "(" + args[0].to_string() + sym + args[1].to_string() + ")"; };
  switch (op) {
    case Op::constant:
      return asym::to_string(value);
    case Op::index:
      return "n";
    case Op::scale:
      return "r";
    case Op::add:
      return bin("+");
    case Op::sub:
      return bin("-");
    case Op::mul:
      return bin("*");
    case Op::div:
      return bin("/");
    case Op::pow:
      return bin("^");
    case Op::neg:
      return "(-" + args[0].to_string() + ")";
    case Op::sqrt:
      return "sqrt(" + args[0].to_string() + ")";
    case Op::log:
      return "log(" + args[0].to_string() + ")";
  }
  return "";
}

PointSequenceSpec PointSequenceSpec::affine(std::string name, const Rational& a, const Rational& b, Sublinear u,
                                            bool alternating, int sign) {
  PointSequenceSpec s;
  s.kind = Kind::affine;
  s.name = std::move(name);
  s.a = a;
  s.b = b;
  s.u = u;
  s.alternating = alternating;
  s.sign = sign >= 0 ? 1 : -1;
  return s;
}

PointSequenceSpec PointSequenceSpec::in_set(std::string name, const SetModel& model, const PointSequenceSpec& base) {
  validate(model);
  if (dimension(model) != 1) throw UnsupportedGeometry("sequences live on the line");
  PointSequenceSpec s;
  s.kind = Kind::in_set;
  s.name = std::move(name);
  s.model = std::make_shared<SetModel>(model);
  s.base = std::make_shared<PointSequenceSpec>(base);
  s.line = std::make_shared<const LineSet>(compile_line(model));
  return s;
}

PointSequenceSpec PointSequenceSpec::closed_form(std::string name, const std::string& expression) {
  PointSequenceSpec s;
  s.kind = Kind::closed_form;
  s.name = std::move(name);
  s.expr = Expr::parse(expression);
  return s;
}

std::string PointSequenceSpec::describe() const {
  switch (kind) {
    case Kind::affine: {
      std::string out = sign < 0 ? "-" : "";
      if (alternating) out += "(-1)^n*";
      out += "(" + to_string(a) + "*r";
      if (b != 0) {
        out += "+" + to_string(b);
        if (u == Sublinear::sqrt_r) out += "*sqrt(r)";
        if (u == Sublinear::log_r) out += "*log(1+r)";
      }
      return out + ")";
    }
    case Kind::in_set:
      return "nearest(" + asym::describe(*model) + "," + base->describe() + ")";
    case Kind::closed_form:
      return expr.to_string();
    case Kind::reindexed:
      return base->describe() + "@n_k=" + map.describe();
  }
  return "";
}

Rational eval_point(const PointSequenceSpec& x, const ScalingSequence& r, long n) {
  switch (x.kind) {
    case PointSequenceSpec::Kind::affine: {
      Rational rn = eval_scaling(r, n);
      Rational u = 1;
      if (x.u == Sublinear::sqrt_r) u = sqrt_approx(rn);
      if (x.u == Sublinear::log_r) u = log_approx(1 + rn);
      Rational value = x.a * rn + x.b * u;
      if (x.alternating && n % 2 == 1) value = -value;
      return x.sign < 0 ? Rational(-value) : value;
    }
    case PointSequenceSpec::Kind::in_set: {
      Rational target = eval_point(*x.base, r, n);
      LineSet line = x.line ? *x.line : compile_line(*x.model);
      return line.nearest_point(target, Rational(1, 1 << 30));
    }
    case PointSequenceSpec::Kind::closed_form:
      return eval_expr(x.expr, n, x.expr.uses_scale() ? eval_scaling(r, n) : Rational(0));
    case PointSequenceSpec::Kind::reindexed:
      return eval_point(*x.base, *x.original, x.map(n));
  }
  throw InvariantFailure("unknown sequence kind");
}

LimitEstimate estimate_limit(const std::vector<std::pair<long, Rational>>& values, const EstimatorConfig& config) {
  LimitEstimate out;
  out.certificate = LimitEstimate::Certificate::numeric;
  long horizon = 0;
  for (const auto& [n, v] : values) horizon = std::max(horizon, n);
  if (horizon < 16) {
    out.status = LimitEstimate::Status::inconclusive;
    out.diagnostic = "horizon too short";
    return out;
  }
  // Three dyadic blocks (h/8, h/4], (h/4, h/2], (h/2, h], per parity.
  double limits[2] = {0, 0};
  std::vector<long> tails[2];
  std::ostringstream diag;
  bool converged = true;
  for (int parity = 0; parity < 2; ++parity) {
    double spread[3] = {0, 0, 0};
    double last = 0;
    for (int block = 0; block < 3; ++block) {
      long lo = horizon >> (3 - block);
      long hi = horizon >> (2 - block);
      double mn = 0, mx = 0;
      bool seen = false;
      for (const auto& [n, v] : values) {
        if (n <= lo || n > hi || n % 2 != parity) continue;
        double d = to_double(v);
        if (!seen) mn = mx = d;
        mn = std::min(mn, d);
        mx = std::max(mx, d);
        seen = true;
        if (block == 2) {
          last = d;
          if (tails[parity].size() < 8) tails[parity].push_back(n);
        }
      }
      spread[block] = mx - mn;
    }
    bool monotone = spread[2] <= spread[1] && spread[1] <= spread[0];
    diag << (parity ? "odd" : "even") << " spreads " << spread[0] << "," << spread[1] << "," << spread[2]
         << (monotone ? " (shrinking)" : "") << "; ";
    if (spread[2] > config.tolerance * std::max(1.0, std::abs(last))) converged = false;
    limits[parity] = std::abs(last) <= config.tolerance ? 0.0 : last;
  }
  out.diagnostic = diag.str();
  if (!converged) {
    out.status = LimitEstimate::Status::inconclusive;
    return out;
  }
  if (std::abs(limits[0] - limits[1]) <= config.tolerance * std::max(1.0, std::abs(limits[0]))) {
    out.status = LimitEstimate::Status::value;
    out.value = from_double(limits[0]);
    return out;
  }
  out.status = LimitEstimate::Status::no_limit;
  out.clusters = {from_double(limits[0]), from_double(limits[1])};
  out.witness_indices = {tails[0], tails[1]};
  return out;
}

namespace {

std::vector<std::pair<long, Rational>> sample(const EstimatorConfig& config,
                                              const std::function<Rational(long)>& f) {
  std::vector<std::pair<long, Rational>> out;
  for (long n = config.horizon / 8 + 1; n <= config.horizon; ++n) out.emplace_back(n, f(n));
  return out;
}

// Symbolic affine form of a spec (in_set specs over sets at finite Hausdorff
// distance from the line inherit their base's form).
std::optional<PointSequenceSpec> affine_form(const PointSequenceSpec& x) {
  if (x.kind == PointSequenceSpec::Kind::affine) return x;
  if (x.kind == PointSequenceSpec::Kind::in_set) {
    auto h = directed_hausdorff(LineSet::full_line(), x.line ? *x.line : compile_line(*x.model));
    if (h.status == DirectedHausdorff::Status::finite) return affine_form(*x.base);
  }
  return std::nullopt;
}

Rational signed_coefficient(const PointSequenceSpec& x) { return x.sign < 0 ? Rational(-x.a) : x.a; }

std::vector<long> parity_indices(int parity) {
  std::vector<long> out;
  for (long n = parity == 0 ? 2 : 1; out.size() < 8; n += 2) out.push_back(n);
  return out;
}

LimitEstimate exact_value(const Rational& v) {
  LimitEstimate out;
  out.status = LimitEstimate::Status::value;
  out.certificate = LimitEstimate::Certificate::exact;
  out.value = v;
  return out;
}

// Cluster values of |x_n - y_n| / r_n on even and odd indices.
std::pair<Rational, Rational> affine_clusters(const PointSequenceSpec& x, const PointSequenceSpec& y) {
  Rational ax = signed_coefficient(x);
  Rational ay = signed_coefficient(y);
  Rational even = abs(ax - ay);
  Rational odd = abs((x.alternating ? Rational(-ax) : ax) - (y.alternating ? Rational(-ay) : ay));
  return {even, odd};
}

}  // namespace

LimitEstimate tilde_d(const PointSequenceSpec& x, const ScalingSequence& r, const Rational& p,
                      const EstimatorConfig& config) {
  if (auto ax = affine_form(x)) return exact_value(abs(ax->a));
  // Explicit return types: a deduced gmpxx expression would outlive its operands.
  auto ratio = [&](long n) -> Rational { return abs(eval_point(x, r, n) - p) / eval_scaling(r, n); };
  return estimate_limit(sample(config, ratio), config);
}

LimitEstimate d_r(const PointSequenceSpec& x, const PointSequenceSpec& y, const ScalingSequence& r,
                  const EstimatorConfig& config) {
  auto ax = affine_form(x);
  auto ay = affine_form(y);
  if (ax && ay) {
    auto [even, odd] = affine_clusters(*ax, *ay);
    if (even == odd) return exact_value(even);
    LimitEstimate out;
    out.status = LimitEstimate::Status::no_limit;
    out.certificate = LimitEstimate::Certificate::exact;
    out.clusters = {even, odd};
    out.witness_indices = {parity_indices(0), parity_indices(1)};
    out.diagnostic = "sign patterns differ and both coefficients are nonzero";
    return out;
  }
  auto ratio = [&](long n) -> Rational {
    return abs(eval_point(x, r, n) - eval_point(y, r, n)) / eval_scaling(r, n);
  };
  return estimate_limit(sample(config, ratio), config);
}

LimitEstimate d_up(const PointSequenceSpec& x, const PointSequenceSpec& y, const ScalingSequence& r,
                   const EstimatorConfig& config) {
  LimitEstimate lim = d_r(x, y, r, config);
  if (lim.status == LimitEstimate::Status::no_limit) {
    LimitEstimate out = lim;
    out.status = LimitEstimate::Status::value;
    out.value = max(lim.clusters[0], lim.clusters[1]);
    out.clusters.clear();
    out.witness_indices.clear();
    return out;
  }
  return lim;
}

PointSequenceSpec push_spec(const PointSequenceSpec& x, const ScalingSequence& r, const IndexMap& map) {
  switch (x.kind) {
    case PointSequenceSpec::Kind::affine: {
      PointSequenceSpec out = x;
      if (x.alternating) {
        if (map.kind == IndexMap::Kind::affine) {
          // (-1)^(alpha k + beta) = (-1)^beta * ((-1)^alpha)^k
          if (map.beta % 2 != 0) out.sign = -out.sign;
          out.alternating = map.alpha % 2 != 0;
        }
        // k^p has the parity of k, so the pattern survives a power map.
      }
      return out;
    }
    case PointSequenceSpec::Kind::in_set: {
      PointSequenceSpec out = x;
      out.base = std::make_shared<PointSequenceSpec>(push_spec(*x.base, r, map));
      return out;
    }
    case PointSequenceSpec::Kind::closed_form:
    case PointSequenceSpec::Kind::reindexed: {
      PointSequenceSpec out;
      out.kind = PointSequenceSpec::Kind::reindexed;
      out.name = x.name;
      out.base = std::make_shared<PointSequenceSpec>(x);
      out.map = map;
      out.original = std::make_shared<ScalingSequence>(r);
      return out;
    }
  }
  throw InvariantFailure("unknown sequence kind");
}

}  // namespace asym
