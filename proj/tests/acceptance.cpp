#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "asym/distance_sets.hpp"
#include "asym/equivalence.hpp"
#include "asym/porosity.hpp"
#include "asym/pseudometric.hpp"
#include "asym/real_line.hpp"
#include "asym/runner.hpp"
#include "asym/stability.hpp"

#include "support.hpp"

using namespace asym;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && secs > budget_s) out.require(false, "over the time budget");
  std::printf("%s criterion %d: %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs,
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  if (!out.ok) ++failures;
}

// ---- oracles kept independent of the library

Rational gap_in(const std::vector<std::pair<Rational, Rational>>& blocks, const Rational& h) {
  Rational last = 0, best = 0;
  for (const auto& [lo, hi] : blocks) {
    if (lo > h) break;
    best = max(best, lo - last);
    last = max(last, hi);
  }
  return max(best, h - min(last, h));
}

Rational dense_porosity(const std::vector<std::pair<Rational, Rational>>& blocks) {
  Rational best = 0;
  for (int m = 40; m < 60; ++m)
    for (int i = 0; i <= 128; ++i) {
      Rational h = pow(Rational(2), m) * (1 + frac(i, 128));
      best = max(best, gap_in(blocks, h) / h);
    }
  return best;
}

Rational nearest_power_distance(const Rational& x) {
  if (x <= 1) return 1 - x;
  Rational p = 1;
  while (p * 2 <= x) p *= 2;
  return min(x - p, 2 * p - x);
}

bool quotients_isometric(const DistanceTable& x, const DistanceTable& y) {
  auto reps = [](const DistanceTable& d) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.size(); ++i) {
      bool fresh = true;
      for (auto r : out) fresh = fresh && d[i][r] != 0;
      if (fresh) out.push_back(i);
    }
    return out;
  };
  auto rx = reps(x), ry = reps(y);
  if (rx.size() != ry.size()) return false;
  std::vector<std::size_t> perm(ry.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < rx.size(); ++i)
      for (std::size_t j = 0; ok && j < rx.size(); ++j) ok = x[rx[i]][rx[j]] == y[ry[perm[i]]][ry[perm[j]]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---- criteria

void porosity_exactness(Outcome& o) {
  auto gp = SetModel::geometric_points_model(2, 1, 0);
  auto gb = SetModel::geometric_blocks_model(4, 1, 2);
  for (const auto& m : {gp, gb}) {
    auto r = porosity_at_infinity(m);
    o.require(r.kind == PorosityKind::exact && r.value == frac(1, 2), describe(m) + " is not exactly 1/2");
  }
  for (const auto& m : {SetModel::lattice_model(1, 0, true), SetModel::ray_model(0, 1)}) {
    auto r = porosity_at_infinity(m);
    o.require(r.kind == PorosityKind::exact && r.value == 0, describe(m) + " is not exactly 0");
  }
  std::vector<std::pair<Rational, Rational>> gp_blocks, gb_blocks;
  for (int n = 0; n <= 62; ++n) gp_blocks.push_back({pow(Rational(2), n), pow(Rational(2), n)});
  for (int n = -80; n <= 32; ++n) gb_blocks.push_back({pow(Rational(4), n), 2 * pow(Rational(4), n)});
  Rational gp_oracle = dense_porosity(gp_blocks), gb_oracle = dense_porosity(gb_blocks);
  o.require(gp_oracle == frac(1, 2) && gb_oracle == frac(1, 2), "dense oracle disagrees with 1/2");
  for (const auto& m : {gp, gb}) {
    auto est = porosity_estimate(compile_line(m), 240);  // h up to 2^60
    o.require(to_double(abs(est.estimate - frac(1, 2))) < 1e-6, "estimator off by more than 1e-6");
    o.require(est.estimate <= frac(1, 2), "estimator exceeds the exact value");
  }
  for (const auto& m : {SetModel::lattice_model(1, 0, true), SetModel::ray_model(0, 1)}) {
    auto est = porosity_estimate(compile_line(m), 240);
    o.require(to_double(est.estimate) < 1e-6, "nonporous estimator above 1e-6");
  }
}

void equivalence_cases(Outcome& o) {
  auto v = decide_strong_equivalence(SetModel::full(), SetModel::lattice_model(1, 0));
  o.require(v.status == EquivalenceVerdict::Status::equivalent_exact, "line vs lattice not equivalent_exact");
  o.require(v.bound && *v.bound == Distance::of(frac(1, 2)), "line vs lattice bound is not 1/2");
  auto gp = SetModel::geometric_points_model(2, 1, 0);
  auto ray = SetModel::ray_model(0, 1);
  auto n = decide_strong_equivalence(gp, ray);
  o.require(n.status == EquivalenceVerdict::Status::not_equivalent, "points vs ray not refuted");
  o.require(to_double(n.witness_c) >= 1.0 / 3 - 1e-12, "witness constant below 1/3");
  o.require(!n.witness_t.empty(), "no witness radii");
  for (const auto& t : n.witness_t) {
    auto e = epsilon_t(gp, ray, {Rational(0)}, t);
    o.require(at_most_scaled(Distance::of(n.witness_c * t), 1, e.eps()), "witness fails under epsilon_t");
    o.require(Distance::of(nearest_power_distance(t)) == e.zy, "epsilon_t disagrees with nearest-power oracle");
  }
}

void strip_case(Outcome& o) {
  auto v = decide_strong_equivalence(SetModel::planar_ray(), SetModel::strip(-1, 2));
  o.require(v.status == EquivalenceVerdict::Status::equivalent_exact, "strip vs ray not equivalent_exact");
  o.require(v.bound && *v.bound == Distance::of(2), "strip bound is not 2");
}

void spectra(Outcome& o) {
  auto r1 = ScalingSequence::geometric(4, 4);
  auto r2 = ScalingSequence::geometric(4, 2);
  auto gb = SetModel::geometric_blocks_model(4, 1, 2);
  auto cmp = compare_spectra(gb, r1, r2, default_spectrum_grid(), frac(1, 100), 50, 10);
  o.require(std::find(cmp.differences.begin(), cmp.differences.end(), frac(3, 4)) != cmp.differences.end(),
            "no difference at t = 3/4");
  // per-index oracle at t = 3/4: windows [0.74 r, 0.76 r] against blocks [4^k, 2 4^k]
  for (const auto& [r, expect_hits] : {std::pair{r1, false}, std::pair{r2, true}}) {
    long hits = 0;
    for (long n = 1; n <= 50; ++n) {
      Rational rn = eval_scaling(r, n), lo = frac(74, 100) * rn, hi = frac(76, 100) * rn;
      Rational k = 1;
      while (k * 4 <= lo) k *= 4;
      hits += (k < hi && 2 * k > lo) || (4 * k < hi);
    }
    o.require((hits >= 10) == expect_hits, "window oracle disagrees at t = 3/4");
  }
  for (const auto& m : {SetModel::ray_model(0, 1), SetModel::lattice_model(1, 0, true)}) {
    auto c = compare_spectra(m, r1, r2, default_spectrum_grid(), frac(1, 100), 50, 10);
    o.require(c.differences.empty(), describe(m) + " shows spectrum differences");
  }
}

void pseudoisometry_suite(Outcome& o) {
  std::mt19937_64 rng(20240601);
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    auto x = random_pseudometric(rng, 1 + rng() % 5);
    auto y = random_pseudometric(rng, 1 + rng() % 5);
    // half of the pairs are built to be pseudoisometric: duplicate points of x
    if (i % 2 == 0) {
      y = x;
      std::size_t dup = rng() % x.size();
      if (y.size() < 5) {
        for (auto& row : y.dist) row.push_back(row[dup]);
        auto extra = y.dist[dup];
        extra.back() = 0;
        y.dist.push_back(extra);
        y.labels.push_back("dup");
      }
    }
    bool found = exists_pseudoisometry(x, y).has_value();
    agree += found == quotients_isometric(x.dist, y.dist);
  }
  o.require(agree == 200, std::to_string(200 - agree) + " disagreements");
}

void sequence_laws(Outcome& o) {
  using S = PointSequenceSpec;
  std::vector<ScalingSequence> scalings{ScalingSequence::geometric(2), ScalingSequence::geometric(3, frac(1, 2)),
                                        ScalingSequence::polynomial(1), ScalingSequence::polynomial(2, 3)};
  std::vector<S> zero{S::affine("z0", 0, 1, Sublinear::sqrt_r), S::affine("z1", 0, 5, Sublinear::log_r, true)};
  int families = 0;
  for (int seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<S> family;
    for (int k = 0; k < 4; ++k) {
      Rational a = frac(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
      Sublinear u = static_cast<Sublinear>(rng() % 3);
      family.push_back(S::affine("f" + std::to_string(k), a, static_cast<long>(rng() % 7) - 3, u, rng() % 3 == 0,
                                 rng() % 2 ? 1 : -1));
    }
    // a zero-distance twin of the first member
    family.push_back(S::affine("twin", family[0].a, 2, Sublinear::sqrt_r, family[0].alternating, family[0].sign));
    const auto& r = scalings[seed % scalings.size()];
    ++families;
    auto exact = [](const LimitEstimate& e) { return e.certificate == LimitEstimate::Certificate::exact; };
    for (const auto& x : family) {
      auto tx = tilde_d(x, r);
      o.require(exact(tx), "tilde_d not exact on an affine spec");
      for (const auto& z : zero) {
        auto dz = d_r(x, z, r);
        // (6) stable with a zero-set member iff x has a finite d~, (7) with the same value
        o.require((dz.status == LimitEstimate::Status::value) == (tx.status == LimitEstimate::Status::value),
                  "zero-set stability law fails");
        if (tx.status == LimitEstimate::Status::value) o.require(dz.is_value(tx.value), "d~ != d_r(x, z)");
      }
    }
    for (const auto& x : family)
      for (const auto& y : family)
        for (const auto& t : family) {
          auto dxt = d_r(x, t, r);
          if (!dxt.is_value(0)) continue;
          // Lemma: d(x,t) = 0 and (x,y) stable => (y,t) stable with the same value
          auto dxy = d_r(x, y, r);
          if (dxy.status == LimitEstimate::Status::value) o.require(d_r(y, t, r).is_value(dxy.value), "zero-twin law");
          if (tilde_d(x, r).status == LimitEstimate::Status::value)
            o.require(tilde_d(t, r).status == LimitEstimate::Status::value, "zero-twin loses finiteness");
        }
    // pseudometric laws of the upper distance
    std::size_t n = family.size();
    std::vector<std::vector<Rational>> up(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto e = d_up(family[i], family[j], r);
        o.require(e.status == LimitEstimate::Status::value && exact(e), "d_up not exact");
        up[i][j] = e.value;
      }
    for (std::size_t i = 0; i < n; ++i) {
      o.require(up[i][i] == 0, "d_up diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        o.require(up[i][j] == up[j][i], "d_up symmetry");
        for (std::size_t k = 0; k < n; ++k) o.require(up[i][k] <= up[i][j] + up[j][k], "d_up triangle");
      }
    }
  }
  o.require(families >= 50, "corpus too small");
}

void pretangent_sample(Outcome& o) {
  using S = PointSequenceSpec;
  auto r = ScalingSequence::geometric(2);
  std::vector<Rational> coeff{0, frac(1, 2), 1, 2};
  std::vector<S> clique;
  for (const auto& a : coeff) clique.push_back(S::affine(to_string(a), a));
  auto space = pretangent_space(clique, r);
  DistanceTable target(4, std::vector<Rational>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) target[i][j] = abs(coeff[i] - coeff[j]);
  o.require(space.quotient.size() == 4, "pretangent space does not have 4 points");
  o.require(quotients_isometric(space.quotient.dist, target), "not isometric to {0, 1/2, 1, 2}");
  for (const auto& map : {IndexMap::affine(2, 0), IndexMap::affine(3, 1), IndexMap::power(2)}) {
    auto push = subsequence_push(clique, r, map);
    o.require(push.distances_preserved && push.tilde_preserved, "push changed a value under " + map.describe());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        o.require(d_r(push.pushed[i], push.pushed[j], push.scaling).is_value(target[i][j]),
                  "pushed distance differs under " + map.describe());
  }
}

void classifier(Outcome& o) {
  auto ks = default_k_samples();
  o.require(classify_line_subspace(SetModel::ray_model(5, 1), ks).status ==
                LineClassification::Status::isometric_to_R_plus,
            "Ray[5,inf) misclassified");
  o.require(classify_line_subspace(SetModel::full(), ks).status == LineClassification::Status::isometric_to_R,
            "line misclassified");
  auto hole = SetModel::modification(SetModel::full(), {}, {Interval::open(0, 1)});
  auto c = classify_line_subspace(hole, ks);
  o.require(c.status == LineClassification::Status::fails_condition_with && c.k == Rational(2) &&
                c.length == frac(1, 2),
            "line minus (0,1) is not refuted with k = 2, length 1/2");
  if (c.length) {
    // R \ A has the single component (0, 1); R \ (A / 2) has (0, 1/2)
    std::vector<Rational> original{1}, scaled{frac(1, 2)};
    auto in = [&](const std::vector<Rational>& v) { return std::count(v.begin(), v.end(), *c.length) > 0; };
    o.require(in(original) != in(scaled), "witness length not in exactly one multiset");
    auto a = complement_components(hole, 64), b = complement_components(scale_model(hole, frac(1, 2)), 64);
    o.require(a.lengths == original && b.lengths == scaled, "component reports differ from the oracle");
  }
}

void cli_contract(Outcome& o) {
  fs::path root = fs::temp_directory_path() / ("asym_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  struct Job {
    std::string command, config;
  };
  std::vector<Job> jobs{
      {"porosity", R"({"model": {"kind": "geometric_points", "q": "2", "c": "1", "n0": 0}})"},
      {"epsilon", R"({"Y": {"kind": "full_line"}, "Z": {"kind": "lattice", "step": "1", "offset": "0"}})"},
      {"equiv", R"({"Y": {"kind": "planar_ray"}, "Z": {"kind": "strip", "c1": "-1", "c2": "2"}})"},
      {"spectrum", R"({"model": {"kind": "geometric_blocks", "q": "4", "a": "1", "b": "2"},
                      "scaling1": {"kind": "geometric", "q": "4", "c": "4"},
                      "scaling2": {"kind": "geometric", "q": "4", "c": "2"}, "expect": "different"})"},
      {"lab", R"({"scaling": {"kind": "geometric", "q": "2", "c": "1"},
                 "family": [{"kind": "affine", "name": "r", "a": "1"}, {"kind": "affine", "name": "h", "a": "1/2"}],
                 "maps": [{"kind": "affine", "alpha": 2, "beta": 0}]})"},
      {"classify-line", R"({"model": {"kind": "ray", "origin": "5", "direction": 1}})"},
      {"pseudo", R"({"space": {"labels": ["a", "b", "c"], "dist": [["0","0","1"],["0","0","1"],["1","1","0"]]}})"},
  };
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    fs::path cfg = root / ("job" + std::to_string(i) + ".json");
    std::ofstream(cfg) << jobs[i].config;
    std::vector<std::string> texts;
    for (int pass = 0; pass < 2; ++pass) {
      fs::path out = root / ("job" + std::to_string(i) + "_" + std::to_string(pass));
      fs::create_directories(out);
      RunOptions opt{jobs[i].command, cfg.string(), out.string(), true};
      RunResult res = run(opt);
      o.require(res.exit_code == exit_ok, jobs[i].command + " exited " + std::to_string(res.exit_code));
      std::string all;
      for (const auto& f : res.files) all += fs::path(f).filename().string() + "\n" + slurp(f);
      o.require(!res.files.empty(), jobs[i].command + " wrote nothing");
      texts.push_back(all);
    }
    o.require(texts[0] == texts[1], jobs[i].command + " output differs between runs");
  }
  fs::path neg = root / "neg.json";
  std::ofstream(neg) << R"({"Y": {"kind": "geometric_points", "q": "2", "c": "1", "n0": 0},
                           "Z": {"kind": "ray", "origin": "0", "direction": 1}})";
  o.require(run({"equiv", neg.string(), root.string(), true}).exit_code == exit_negative, "negative path not 1");
  fs::path bad = root / "bad.json";
  std::ofstream(bad) << R"({"Y": {"kind": "full_line"}})";
  o.require(run({"equiv", bad.string(), root.string(), true}).exit_code == exit_input, "input path not 2");
  fs::remove_all(root);
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  criterion(1, "porosity exactness and estimator bounds", 1, porosity_exactness);
  criterion(2, "strong equivalence: line vs lattice, points vs ray", 1, equivalence_cases);
  criterion(3, "planar ray vs strip bound", 0, strip_case);
  criterion(4, "spectra separate porous from nonporous sets", 5, spectra);
  criterion(5, "pseudoisometry vs quotient isometry on 200 random pairs", 10, pseudoisometry_suite);
  criterion(6, "sequence-lab laws on affine families", 5, sequence_laws);
  criterion(7, "pretangent sample and subsequence pushes", 0, pretangent_sample);
  criterion(8, "real-line classifier", 1, classifier);
  criterion(9, "CLI determinism and exit codes", 0, cli_contract);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s all criteria (%.3f s)\n", failures == 0 ? "PASS" : "FAIL", secs);
  return failures == 0 ? 0 : 1;
}
