#include "asym/real_line.hpp"

#include <algorithm>
#include <sstream>

namespace asym {

namespace {

LineSet line_of(const SetModel& model) {
  validate(model, false);
  if (dimension(model) != 1) throw InputError("real-line analysis needs a subset of the line");
  return compile_line(model);
}

bool near_accumulation(const std::vector<Rational>& acc, const Rational& a, const Rational& b, const Rational& r) {
  for (const auto& x : acc) {
    if (x >= a - r && x <= b + r) return true;
  }
  return false;
}

std::string multiset_text(const std::vector<Rational>& values) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << to_string(values[i]);
  out << "}";
  return out.str();
}

const Rational tiny(1, 1 << 20);

}  // namespace

Rational required_window(const SetModel& model) { return line_of(model).structural_extent(); }

ComponentReport complement_components(const SetModel& model, const Rational& H, const Rational& inner_radius) {
  LineSet line = line_of(model);
  if (line.is_empty()) throw InputError("the set is empty");
  if (inner_radius <= 0) throw InputError("inner radius must be positive");
  Rational need = line.structural_extent();
  if (H < need) throw InputError("window too small to classify the tails; need H >= " + to_string(need));

  ComponentReport out;
  out.window = H;
  out.inner_radius = inner_radius;
  std::vector<Rational> acc = line.accumulation_points();
  IntervalSet pieces = line.pieces_avoiding(-H, H, inner_radius);
  const auto& ps = pieces.pieces();

  // Sup / inf of a bounded side sit inside the window once H covers the structure.
  std::optional<Rational> sup, inf;
  if (!line.unbounded_above()) {
    sup = ps.empty() ? Rational(-H) : ps.back().hi;
    for (const auto& a : acc) sup = max(*sup, a);
    out.unbounded.push_back({*sup, 1, line.contains(*sup)});
  }
  if (!line.unbounded_below()) {
    inf = ps.empty() ? Rational(H) : ps.front().lo;
    for (const auto& a : acc) inf = min(*inf, a);
    out.unbounded.insert(out.unbounded.begin(), ComplementRay{*inf, -1, line.contains(*inf)});
  }

  auto consider = [&](const Rational& a, const Rational& b, bool a_edge, bool b_edge) {
    if (a >= b) return;
    if (sup && a >= *sup) return;
    if (inf && b <= *inf) return;
    if (near_accumulation(acc, a, b, inner_radius)) return;
    if ((a_edge && !line.contains(a)) || (b_edge && !line.contains(b))) {
      out.truncated.push_back(Interval::open(a, b));
      return;
    }
    out.bounded.push_back(Interval::open(a, b));
  };
  if (ps.empty()) return out;
  consider(-H, ps.front().lo, true, false);
  for (std::size_t i = 1; i < ps.size(); ++i) consider(ps[i - 1].hi, ps[i].lo, false, false);
  consider(ps.back().hi, H, false, true);
  for (const auto& c : out.bounded) out.lengths.push_back(c.hi - c.lo);
  std::sort(out.lengths.begin(), out.lengths.end());
  return out;
}

namespace {

std::vector<Rational> boundary_points(const LineSet& line, const Rational& W) {
  std::vector<Rational> out = line.accumulation_points();
  IntervalSet pieces = line.pieces_avoiding(-W, W, tiny);
  for (const auto& p : pieces.pieces()) {
    if (p.lo > -W) out.push_back(p.lo);
    if (p.hi < W) out.push_back(p.hi);
  }
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
    return abs(a) != abs(b) ? abs(a) < abs(b) : a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Window past which both sets repeat their tail laws at least once.
Rational verification_window(const LineSet& a, const LineSet& b, const Rational& W) {
  Rational period = 0;
  std::optional<Rational> ratio;
  for (const LineSet* s : {&a, &b}) {
    for (const auto& c : s->components()) {
      if (c.kind == LawKind::periodic) {
        period = period == 0 ? c.period
                             : Rational(mpz_class(lcm(period.get_num(), c.period.get_num())),
                                        mpz_class(gcd(period.get_den(), c.period.get_den())));
        period.canonicalize();
      }
      if (c.kind == LawKind::geometric) {
        if (!ratio) {
          ratio = c.base;
        } else if (auto q = common_power(*ratio, c.base)) {
          ratio = *q;
        } else {
          ratio = *ratio * c.base;
        }
      }
    }
  }
  Rational q = ratio ? *ratio : Rational(1);
  return (W + 1) * q * q + 2 * period;
}

bool same_on_window(const LineSet& a, const LineSet& b, const Rational& W) {
  if (a == b) return true;
  if (a.unbounded_above() != b.unbounded_above() || a.unbounded_below() != b.unbounded_below()) return false;
  if (a.accumulation_points() != b.accumulation_points()) return false;
  Rational W2 = verification_window(a, b, W);
  try {
    return a.pieces_avoiding(-W2, W2, tiny) == b.pieces_avoiding(-W2, W2, tiny);
  } catch (const UnsupportedGeometry&) {
    return false;
  }
}

}  // namespace

LineIsometry line_isometry_test(const SetModel& A, const SetModel& B, const Rational& H) {
  LineSet a = line_of(A);
  LineSet b = line_of(B);
  LineIsometry out;
  if (a == b) {
    out.isometric = true;
    return out;
  }
  Rational W = max(H, max(a.structural_extent(), b.structural_extent()) + 1);
  std::vector<Rational> anchors_a = boundary_points(a, W);
  if (!anchors_a.empty() && !a.is_empty()) {
    // Two points of the line fix an isometry up to reflection, so aligning one
    // boundary point of A with every boundary point of B exhausts the candidates.
    Rational a0 = anchors_a.front();
    std::vector<Rational> anchors_b = boundary_points(b, 2 * W + abs(a0));
    for (const auto& b0 : anchors_b) {
      for (int sign : {1, -1}) {
        Rational shift = b0 - sign * a0;
        LineSet image = a.affine(sign, shift);
        if (same_on_window(image, b, W + abs(shift))) {
          out.isometric = true;
          out.sign = sign;
          out.shift = shift;
          return out;
        }
      }
    }
  }
  // Explain the failure with the cheapest invariant that differs.
  LengthProfile pa = a.complement_lengths();
  LengthProfile pb = b.complement_lengths();
  if (pa.unbounded_components != pb.unbounded_components) {
    out.statistic = "unbounded complement components " + std::to_string(pa.unbounded_components) + " vs " +
                    std::to_string(pb.unbounded_components);
  } else if (pa.explicit_lengths != pb.explicit_lengths) {
    out.statistic = "gap multisets " + multiset_text(pa.explicit_lengths) + " vs " + multiset_text(pb.explicit_lengths);
  } else {
    out.statistic = "no translation or reflection aligns the boundary points";
  }
  return out;
}

namespace {

std::vector<Rational> candidate_lengths(const LengthProfile& p) {
  std::vector<Rational> out = p.explicit_lengths;
  out.insert(out.end(), p.periodic_lengths.begin(), p.periodic_lengths.end());
  for (const auto& f : p.families) {
    long lo = f.k_min ? *f.k_min : (f.k_max ? *f.k_max - 3 : -3);
    for (long k = lo; k <= lo + 6; ++k) {
      if (f.k_max && k > *f.k_max) break;
      out.push_back(f.generator * pow(f.ratio, k));
    }
  }
  return out;
}

}  // namespace

SelfSimilarity scaling_self_similarity(const SetModel& A, const Rational& k, const Rational& H) {
  if (k <= 0) throw InputError("k must be positive");
  LineSet a = line_of(A);
  Rational need = a.structural_extent();
  if (H < need) throw InputError("window too small to classify the tails; need H >= " + to_string(need));
  LengthProfile original = a.complement_lengths();
  LengthProfile scaled = a.scaled(1 / k).complement_lengths();
  SelfSimilarity out;
  for (const auto* first : {&scaled, &original}) {
    for (const auto& length : candidate_lengths(*first)) {
      bool in_original = original.multiplicity(length) != 0;
      bool in_scaled = scaled.multiplicity(length) != 0;
      if (in_original != in_scaled) {
        out.consistent = false;
        out.witness_length = length;
        out.witness_in_scaled = in_scaled;
        return out;
      }
    }
  }
  return out;
}

const char* to_string(LineClassification::Status s) {
  switch (s) {
    case LineClassification::Status::isometric_to_R:
      return "isometric_to_R";
    case LineClassification::Status::isometric_to_R_plus:
      return "isometric_to_R_plus";
    case LineClassification::Status::fails_condition_with:
      return "fails_condition_with";
    case LineClassification::Status::inconclusive:
      return "inconclusive";
  }
  return "";
}

std::vector<Rational> default_k_samples() {
  return {Rational(2), Rational(3), Rational(1, 2), Rational(5, 4), Rational(7, 3)};
}

LineClassification classify_line_subspace(const SetModel& Y, const std::vector<Rational>& k_samples,
                                          const Rational& H) {
  validate(Y);
  LineSet line = line_of(Y);
  LineClassification out;
  if (line == LineSet::full_line()) {
    out.status = LineClassification::Status::isometric_to_R;
    return out;
  }
  ComponentReport report = complement_components(Y, max(H, line.structural_extent()));
  if (report.unbounded.size() == 1 && report.unbounded.front().end_in_set) {
    const ComplementRay& ray = report.unbounded.front();
    // Complement (-inf, e) leaves [e, inf); complement (e, inf) leaves (-inf, e].
    int dir = -ray.direction;
    if (line == LineSet::ray(ray.end, dir)) {
      out.status = LineClassification::Status::isometric_to_R_plus;
      out.sign = dir;
      out.shift = dir > 0 ? Rational(-ray.end) : ray.end;
      return out;
    }
  }
  for (const auto& k : k_samples) {
    SelfSimilarity s = scaling_self_similarity(Y, k, max(H, line.structural_extent()));
    if (!s.consistent) {
      out.status = LineClassification::Status::fails_condition_with;
      out.k = k;
      out.length = s.witness_length;
      return out;
    }
  }
  out.status = LineClassification::Status::inconclusive;
  return out;
}

}  // namespace asym
