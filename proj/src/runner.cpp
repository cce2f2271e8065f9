#include "asym/runner.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "asym/distance_sets.hpp"
#include "asym/equivalence.hpp"
#include "asym/json_io.hpp"
#include "asym/porosity.hpp"
#include "asym/pseudometric.hpp"
#include "asym/real_line.hpp"
#include "asym/stability.hpp"

namespace asym {

namespace fs = std::filesystem;

namespace {

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row(std::move(header)); }

  void row(std::vector<std::string> cells) {
    if (cells.size() != width_) throw InvariantFailure("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "," : "") << cells[i];
    text_ << '\n';
  }

  std::string str() const { return text_.str(); }

 private:
  std::size_t width_;
  std::ostringstream text_;
};

struct Context {
  const RunOptions& options;
  Json config;
  RunResult result;
  bool negative = false;

  void write(const std::string& name, const std::string& content) {
    fs::path path = fs::path(options.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("cannot write " + path.string());
    result.files.push_back(path.string());
  }

  void write_json(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }

  std::string expect(const std::string& fallback) const {
    auto it = config.find("expect");
    if (it == config.end()) return fallback;
    if (!it->is_string()) throw ConfigError("/expect: expected a string");
    return it->get<std::string>();
  }

  void check(bool ok, const std::string& what) {
    if (!ok) {
      negative = true;
      result.message = what;
    }
  }
};

const Json& need(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ConfigError(std::string("/: missing field '") + name + "'");
  return *it;
}

AmbientPoint point_or_origin(const Json& config, const SetModel& model) {
  auto it = config.find("p");
  if (it == config.end()) return AmbientPoint(dimension(model), Rational(0));
  AmbientPoint p = point_from_json(*it, "/p");
  if (static_cast<int>(p.size()) != dimension(model)) throw ConfigError("/p: dimension does not match the models");
  return p;
}

long integer_or(const Json& config, const char* name, long fallback) {
  auto it = config.find(name);
  if (it == config.end()) return fallback;
  if (!it->is_number_integer()) throw ConfigError(std::string("/") + name + ": expected an integer");
  return it->get<long>();
}

const char* status_name(LimitEstimate::Status s) {
  switch (s) {
    case LimitEstimate::Status::value:
      return "value";
    case LimitEstimate::Status::no_limit:
      return "no_limit";
    case LimitEstimate::Status::inconclusive:
      return "inconclusive";
  }
  return "";
}

Json estimate_json(const LimitEstimate& e) {
  Json j{{"status", status_name(e.status)},
         {"certificate", e.certificate == LimitEstimate::Certificate::exact ? "exact" : "numeric"}};
  if (e.status == LimitEstimate::Status::value) j["value"] = number_json(e.value);
  if (e.status == LimitEstimate::Status::no_limit) {
    Json clusters = Json::array();
    for (const auto& c : e.clusters) clusters.push_back(to_string(c));
    j["clusters"] = clusters;
    j["witness_indices"] = e.witness_indices;
  }
  return j;
}

// ---------------------------------------------------------------- porosity

void run_porosity(Context& ctx) {
  SetModel model = model_from_json(need(ctx.config, "model"), "/model");
  int horizon = static_cast<int>(ctx.options.horizon.value_or(integer_or(ctx.config, "horizon_exponent",
                                                                         default_horizon_exponent)));
  PorosityResult r = porosity_at_infinity(model, horizon);
  Csv csv({"h", "h_decimal", "gap_length", "gap_length_decimal", "ratio", "ratio_decimal"});
  for (const auto& row : r.trace) {
    csv.row({to_string(row.h), to_decimal(row.h), to_string(row.gap), to_decimal(row.gap), to_string(row.ratio),
             to_decimal(row.ratio)});
  }
  ctx.write("porosity_trace.csv", csv.str());
  Json summary{{"value", to_string(r.value)},
               {"kind", r.kind == PorosityKind::exact ? "exact" : "horizon_estimate"},
               {"value_decimal", to_decimal(r.value)},
               {"estimate", number_json(r.estimate)},
               {"horizon", number_json(r.horizon)},
               {"model", describe(model)}};
  ctx.write_json("porosity.json", summary);
  ctx.result.message = "porosity " + to_string(r.value) + " (" + summary["kind"].get<std::string>() + ")";
  std::string expect = ctx.expect("");
  if (expect == "porous") ctx.check(r.value > 0, "expected a porous set, got porosity 0");
  if (expect == "nonporous") ctx.check(r.value == 0, "expected a nonporous set, got " + to_string(r.value));
}

// ---------------------------------------------------------------- epsilon / equiv

std::string curve_csv(const EpsilonCurve& curve) {
  Csv csv({"t", "t_decimal", "eps_ZY", "eps_ZY_decimal", "eps_YZ", "eps_YZ_decimal", "eps", "eps_decimal", "ratio",
           "ratio_decimal"});
  for (const auto& s : curve.samples) {
    csv.row({to_string(s.t), to_decimal(s.t), s.zy.exact_text(), s.zy.decimal_text(), s.yz.exact_text(),
             s.yz.decimal_text(), s.eps.exact_text(), s.eps.decimal_text(), s.ratio.exact_text(),
             s.ratio.decimal_text()});
  }
  return csv.str();
}

std::vector<Rational> default_t_grid() {
  std::vector<Rational> grid;
  Rational t = 1;
  for (int i = 0; i < 24; ++i, t *= 2) grid.push_back(t);
  return grid;
}

void run_epsilon(Context& ctx) {
  SetModel Y = model_from_json(need(ctx.config, "Y"), "/Y");
  SetModel Z = model_from_json(need(ctx.config, "Z"), "/Z");
  AmbientPoint p = point_or_origin(ctx.config, Y);
  auto it = ctx.config.find("t_grid");
  std::vector<Rational> grid = it == ctx.config.end() ? default_t_grid() : grid_from_json(*it, "/t_grid");
  EpsilonCurve curve = epsilon_curve(Y, Z, p, grid);
  ctx.write("epsilon_curve.csv", curve_csv(curve));
  Distance worst;
  bool zero = true;
  for (const auto& s : curve.samples) {
    worst = std::max(worst, s.ratio);
    zero = zero && s.eps.squared == 0;
  }
  ctx.write_json("epsilon.json", Json{{"samples", curve.samples.size()}, {"max_ratio", number_json(worst)}, {"all_zero", zero}});
  ctx.result.message = "max eps(t)/t " + worst.exact_text();
  if (ctx.expect("") == "zero") ctx.check(zero, "expected an all-zero curve");
}

void run_equiv(Context& ctx) {
  SetModel Y = model_from_json(need(ctx.config, "Y"), "/Y");
  SetModel Z = model_from_json(need(ctx.config, "Z"), "/Z");
  AmbientPoint p = point_or_origin(ctx.config, Y);
  EquivalenceConfig cfg;
  if (auto it = ctx.config.find("growth"); it != ctx.config.end()) cfg.growth = rational_from_json(*it, "/growth");
  cfg.horizon = static_cast<int>(ctx.options.horizon.value_or(integer_or(ctx.config, "horizon", cfg.horizon)));
  if (auto it = ctx.config.find("threshold"); it != ctx.config.end()) {
    cfg.threshold = to_double(rational_from_json(*it, "/threshold"));
  }
  EquivalenceVerdict v = decide_strong_equivalence(Y, Z, p, cfg);
  Json verdict{{"status", to_string(v.status)}};
  if (v.bound) {
    verdict["bound"] = v.bound->exact_text();
    verdict["bound_decimal"] = v.bound->decimal_text();
  }
  if (v.status == EquivalenceVerdict::Status::not_equivalent) {
    Json ts = Json::array();
    for (const auto& t : v.witness_t) ts.push_back(to_string(t));
    verdict["witness"] = Json{{"t", ts}, {"c", to_string(v.witness_c)}, {"structural", v.structural_witness}};
  }
  if (v.status == EquivalenceVerdict::Status::equivalent_numerical) verdict["max_ratio"] = v.max_ratio;
  verdict["certified"] = v.status != EquivalenceVerdict::Status::equivalent_numerical;
  verdict["note"] = v.note;
  ctx.write_json("verdict.json", verdict);
  auto it = ctx.config.find("t_grid");
  std::vector<Rational> grid = it == ctx.config.end() ? default_t_grid() : grid_from_json(*it, "/t_grid");
  ctx.write("equiv_curve.csv", curve_csv(epsilon_curve(Y, Z, p, grid)));
  ctx.result.message = to_string(v.status);
  std::string expect = ctx.expect("equivalent");
  bool equivalent = v.status != EquivalenceVerdict::Status::not_equivalent;
  if (expect == "equivalent") ctx.check(equivalent, "expected equivalence, got " + ctx.result.message);
  if (expect == "not_equivalent") ctx.check(!equivalent, "expected non-equivalence, got " + ctx.result.message);
}

// ---------------------------------------------------------------- spectrum

void run_spectrum(Context& ctx) {
  SetModel model = model_from_json(need(ctx.config, "model"), "/model");
  AmbientPoint p = point_or_origin(ctx.config, model);
  ScalingSequence r1 = scaling_from_json(need(ctx.config, "scaling1"), "/scaling1");
  ScalingSequence r2 = scaling_from_json(need(ctx.config, "scaling2"), "/scaling2");
  auto it = ctx.config.find("t_grid");
  std::vector<Rational> grid = it == ctx.config.end() ? default_spectrum_grid() : grid_from_json(*it, "/t_grid");
  Rational eps(1, 100);
  if (auto e = ctx.config.find("epsilon"); e != ctx.config.end()) eps = rational_from_json(*e, "/epsilon");
  long horizon = ctx.options.horizon.value_or(integer_or(ctx.config, "horizon", 50));
  long persistence = integer_or(ctx.config, "persistence", 10);
  SpectrumComparison cmp = compare_spectra(model, r1, r2, grid, eps, horizon, persistence, p);
  Csv csv({"t", "t_decimal", "status_r1", "status_r2", "first_divergent_index"});
  for (const auto& row : cmp.rows) {
    csv.row({to_string(row.t), to_decimal(row.t), to_string(row.first.status), to_string(row.second.status),
             row.first_divergent_index ? std::to_string(*row.first_divergent_index) : ""});
  }
  ctx.write("spectrum.csv", csv.str());
  Json diffs = Json::array();
  for (const auto& t : cmp.differences) diffs.push_back(to_string(t));
  DistanceSet ds = distance_set(model, p);
  ctx.write_json("spectrum.json", Json{{"differences", diffs}, {"boundary_bound", to_string(ds.boundary_bound)}});
  ctx.result.message = std::to_string(cmp.differences.size()) + " differing t values";
  std::string expect = ctx.expect("same");
  if (expect == "same") ctx.check(cmp.differences.empty(), "expected equal spectra, " + ctx.result.message);
  if (expect == "different") ctx.check(!cmp.differences.empty(), "expected differing spectra");
}

// ---------------------------------------------------------------- lab

void run_lab(Context& ctx) {
  ScalingSequence r = scaling_from_json(need(ctx.config, "scaling"), "/scaling");
  EstimatorConfig est;
  est.horizon = ctx.options.horizon.value_or(integer_or(ctx.config, "estimator_horizon", est.horizon));
  if (est.horizon < 16) throw ConfigError("/estimator_horizon: must be at least 16");
  std::vector<PointSequenceSpec> family;
  const Json& fam = need(ctx.config, "family");
  if (!fam.is_array() || fam.empty()) throw ConfigError("/family: expected a nonempty array");
  for (std::size_t i = 0; i < fam.size(); ++i) family.push_back(spec_from_json(fam[i], "/family/" + std::to_string(i)));

  StabilityGraph graph = stability_graph(family, r, est);
  Csv csv({"i", "j", "name_i", "name_j", "status", "value", "value_decimal", "certificate"});
  bool all_stable = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      LimitEstimate d = d_r(family[i], family[j], r, est);
      all_stable = all_stable && d.status == LimitEstimate::Status::value;
      bool has = d.status == LimitEstimate::Status::value;
      csv.row({std::to_string(i), std::to_string(j), family[i].name, family[j].name, status_name(d.status),
               has ? to_string(d.value) : "", has ? to_decimal(d.value) : "",
               d.certificate == LimitEstimate::Certificate::exact ? "exact" : "numeric"});
    }
  }
  ctx.write("lab_pairs.csv", csv.str());

  Json out;
  Json zero = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (graph.zero_set[i]) zero.push_back(family[i].name);
  }
  out["zero_set"] = zero;
  Json cliques = Json::array();
  Json pretangents = Json::array();
  std::vector<std::vector<std::size_t>> maximal = maximal_self_stable(graph);
  for (const auto& clique : maximal) {
    Json names = Json::array();
    for (auto v : clique) names.push_back(family[v].name);
    cliques.push_back(names);
    pretangents.push_back(space_to_json(pretangent_space(graph, clique).quotient));
  }
  out["cliques"] = cliques;
  out["pretangent_spaces"] = pretangents;

  std::vector<IndexMap> maps;
  if (auto it = ctx.config.find("maps"); it != ctx.config.end()) {
    for (std::size_t i = 0; i < it->size(); ++i) maps.push_back(index_map_from_json((*it)[i], "/maps/" + std::to_string(i)));
  }
  Json pushes = Json::array();
  for (const auto& map : maps) {
    PushReport rep = subsequence_push(family, r, map, est);
    Json newly = Json::array();
    for (auto [i, j] : rep.newly_stable) newly.push_back(Json::array({family[i].name, family[j].name}));
    pushes.push_back(Json{{"map", map.describe()},
                          {"distances_preserved", rep.distances_preserved},
                          {"tilde_preserved", rep.tilde_preserved},
                          {"newly_stable", newly},
                          {"mismatches", rep.mismatches}});
  }
  out["pushes"] = pushes;

  if (auto it = ctx.config.find("pool"); it != ctx.config.end() && !maps.empty()) {
    std::vector<PointSequenceSpec> pool;
    for (std::size_t i = 0; i < it->size(); ++i) pool.push_back(spec_from_json((*it)[i], "/pool/" + std::to_string(i)));
    Json probes = Json::array();
    for (const auto& clique : maximal) {
      std::vector<PointSequenceSpec> members;
      Json names = Json::array();
      for (auto v : clique) {
        members.push_back(family[v]);
        names.push_back(family[v].name);
      }
      for (const auto& probe : tangency_probe(members, r, maps, pool, est)) {
        Json p{{"clique", names},
               {"map", probe.map.describe()},
               {"extension_found", probe.extension_found},
               {"note", probe.note}};
        if (probe.witness) p["witness"] = pool[*probe.witness].name;
        probes.push_back(p);
      }
    }
    out["tangency_probes"] = probes;
  }

  bool projection_ok = true;
  if (auto it = ctx.config.find("project"); it != ctx.config.end()) {
    SetModel Y = model_from_json(need(*it, "Y"), "/project/Y");
    bool expect_equivalent = it->value("expect_equivalent", false);
    Projection proj = project_family_to_subspace(family, Y, r, false, est);
    Json residuals = Json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
      residuals.push_back(Json{{"name", family[i].name}, {"residual", estimate_json(proj.residuals[i])}});
    }
    out["projection"] = Json{{"residuals", residuals}, {"all_zero", proj.all_zero}};
    if (expect_equivalent) projection_ok = proj.all_zero;
  }
  ctx.write_json("lab.json", out);
  ctx.result.message = std::to_string(cliques.size()) + " maximal self-stable families";
  std::string expect = ctx.expect("");
  if (expect == "stable") ctx.check(all_stable, "expected a self-stable family");
  ctx.check(projection_ok, "projection residuals are not all zero");
}

// ---------------------------------------------------------------- classify-line

void run_classify(Context& ctx) {
  SetModel model = model_from_json(need(ctx.config, "model"), "/model");
  std::vector<Rational> ks = default_k_samples();
  if (auto it = ctx.config.find("k_samples"); it != ctx.config.end()) ks = rationals_from_json(*it, "/k_samples");
  Rational H = 64;
  if (auto it = ctx.config.find("window"); it != ctx.config.end()) H = rational_from_json(*it, "/window");
  H = max(H, required_window(model));
  LineClassification c = classify_line_subspace(model, ks, H);
  Json out{{"status", to_string(c.status)}};
  if (c.k) out["k"] = to_string(*c.k);
  if (c.length) out["length"] = to_string(*c.length);
  if (c.status == LineClassification::Status::isometric_to_R_plus) {
    out["map"] = Json{{"sign", c.sign}, {"shift", to_string(c.shift)}};
  }
  ComponentReport report = complement_components(model, H);
  Csv csv({"lo", "hi", "length", "length_decimal"});
  for (const auto& iv : report.bounded) {
    csv.row({to_string(iv.lo), to_string(iv.hi), to_string(iv.hi - iv.lo), to_decimal(iv.hi - iv.lo)});
  }
  out["window"] = to_string(H);
  out["unbounded_components"] = report.unbounded.size();
  if (auto it = ctx.config.find("compare"); it != ctx.config.end()) {
    LineIsometry iso = line_isometry_test(model, model_from_json(*it, "/compare"), H);
    Json j{{"isometric", iso.isometric}};
    if (iso.isometric) {
      j["sign"] = iso.sign;
      j["shift"] = to_string(iso.shift);
    } else {
      j["statistic"] = iso.statistic;
    }
    out["isometry"] = j;
  }
  ctx.write_json("classify.json", out);
  ctx.write("components.csv", csv.str());
  ctx.result.message = to_string(c.status);
  std::string expect = ctx.expect("isometric");
  if (expect == "isometric") {
    ctx.check(c.status == LineClassification::Status::isometric_to_R ||
                  c.status == LineClassification::Status::isometric_to_R_plus,
              "expected R or R+, got " + ctx.result.message);
  } else {
    ctx.check(expect == ctx.result.message, "expected " + expect + ", got " + ctx.result.message);
  }
}

// ---------------------------------------------------------------- pseudo

void run_pseudo(Context& ctx) {
  if (auto fz = ctx.config.find("fuzz"); fz != ctx.config.end()) {
    long count = integer_or(*fz, "count", 200);
    long max_points = integer_or(*fz, "max_points", 5);
    if (count < 1 || max_points < 1 || max_points > static_cast<long>(default_search_bound)) {
      throw ConfigError("/fuzz: need count >= 1 and 1 <= max_points <= " + std::to_string(default_search_bound));
    }
    std::uint64_t seed = ctx.options.seed.value_or(static_cast<std::uint64_t>(integer_or(ctx.config, "seed", 1)));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> size(1, max_points);
    Csv csv({"pair", "size_x", "size_y", "pseudoisometry", "quotients_isometric", "agree"});
    long agree = 0;
    for (long i = 0; i < count; ++i) {
      FinitePseudometricSpace x = random_pseudometric(rng, static_cast<std::size_t>(size(rng)));
      FinitePseudometricSpace y = random_pseudometric(rng, static_cast<std::size_t>(size(rng)));
      bool pseudo = exists_pseudoisometry(x, y).has_value();
      bool iso = find_isometry(metric_identify(x).quotient, metric_identify(y).quotient).has_value();
      agree += pseudo == iso;
      csv.row({std::to_string(i), std::to_string(x.size()), std::to_string(y.size()), pseudo ? "1" : "0",
               iso ? "1" : "0", pseudo == iso ? "1" : "0"});
    }
    ctx.write("pseudo_fuzz.csv", csv.str());
    ctx.write_json("pseudo_fuzz.json", Json{{"pairs", count}, {"agree", agree}, {"seed", seed}});
    ctx.result.message = std::to_string(agree) + "/" + std::to_string(count) + " pairs agree";
    ctx.check(agree == count, "pseudoisometry and quotient isometry disagree");
    return;
  }
  FinitePseudometricSpace space = space_from_json(need(ctx.config, "space"), "/space");
  ValidationResult check = validate_pseudometric(space.labels, space.dist);
  Json out{{"valid", check.ok}};
  Json violations = Json::array();
  for (const auto& v : check.violations) violations.push_back(v.message);
  out["violations"] = violations;
  if (check.ok) {
    ZeroClassPartition zc = zero_classes(space);
    Json blocks = Json::array();
    for (const auto& b : zc.blocks) {
      Json names = Json::array();
      for (auto i : b) names.push_back(space.labels[i]);
      blocks.push_back(names);
    }
    out["zero_classes"] = blocks;
    QuotientMetricSpace q = metric_identify(space);
    out["quotient"] = space_to_json(q.quotient);
    out["projection"] = q.projection;
    if (auto it = ctx.config.find("other"); it != ctx.config.end()) {
      FinitePseudometricSpace other = space_from_json(*it, "/other");
      FinitePseudometricSpace::make(other.labels, other.dist);
      auto map = exists_pseudoisometry(space, other);
      out["pseudoisometry"] = map ? Json(*map) : Json(nullptr);
    }
  }
  ctx.write_json("pseudo.json", out);
  ctx.result.message = check.ok ? "valid pseudometric" : "not a pseudometric";
  if (ctx.expect("valid") == "valid") ctx.check(check.ok, "expected a valid pseudometric");
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"porosity", "epsilon", "equiv", "spectrum",
                                                 "lab",      "classify-line", "pseudo"};
  return names;
}

RunResult run(const RunOptions& options) {
  Context ctx{options, Json(), RunResult(), false};
  try {
    std::ifstream in(options.config_path);
    if (!in) throw InputError("cannot read config " + options.config_path);
    try {
      ctx.config = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw InputError("malformed config " + options.config_path + ": " + e.what());
    }
    if (!ctx.config.is_object()) throw ConfigError("/: the config must be a JSON object");
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw InputError("cannot create " + options.out_dir + ": " + ec.message());
    const std::string& c = options.command;
    if (c == "porosity") {
      run_porosity(ctx);
    } else if (c == "epsilon") {
      run_epsilon(ctx);
    } else if (c == "equiv") {
      run_equiv(ctx);
    } else if (c == "spectrum") {
      run_spectrum(ctx);
    } else if (c == "lab") {
      run_lab(ctx);
    } else if (c == "classify-line") {
      run_classify(ctx);
    } else if (c == "pseudo") {
      run_pseudo(ctx);
    } else {
      throw InputError("unknown command '" + c + "'");
    }
  } catch (const InputError& e) {
    ctx.result.exit_code = exit_input;
    ctx.result.message = e.what();
    return ctx.result;
  } catch (const UnsupportedGeometry& e) {
    ctx.result.exit_code = exit_input;
    ctx.result.message = std::string("unsupported: ") + e.what();
    return ctx.result;
  } catch (const Json::exception& e) {
    ctx.result.exit_code = exit_input;
    ctx.result.message = std::string("config: ") + e.what();
    return ctx.result;
  } catch (const InvariantFailure& e) {
    ctx.result.exit_code = exit_internal;
    ctx.result.message = std::string("internal: ") + e.what();
    return ctx.result;
  }
  if (options.assert_verdict && ctx.negative) ctx.result.exit_code = exit_negative;
  return ctx.result;
}

}  // namespace asym
