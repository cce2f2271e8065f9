#include "asym/json_io.hpp"

namespace asym {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const std::string& path, const char* name) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(path, std::string("missing field '") + name + "'");
  return *it;
}

const Json* optional_field(const Json& j, const char* name) {
  auto it = j.find(name);
  return it == j.end() ? nullptr : &*it;
}

std::string sub(const std::string& path, const std::string& name) { return path + "/" + name; }

Rational rational_field(const Json& j, const std::string& path, const char* name) {
  return rational_from_json(field(j, path, name), sub(path, name));
}

Rational rational_or(const Json& j, const std::string& path, const char* name, const Rational& fallback) {
  const Json* v = optional_field(j, name);
  return v ? rational_from_json(*v, sub(path, name)) : fallback;
}

long integer_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

long integer_or(const Json& j, const std::string& path, const char* name, long fallback) {
  const Json* v = optional_field(j, name);
  return v ? integer_from_json(*v, sub(path, name)) : fallback;
}

bool bool_or(const Json& j, const std::string& path, const char* name, bool fallback) {
  const Json* v = optional_field(j, name);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(sub(path, name), "expected true or false");
  return v->get<bool>();
}

std::string string_field(const Json& j, const std::string& path, const char* name) {
  const Json& v = field(j, path, name);
  if (!v.is_string()) fail(sub(path, name), "expected a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& j, const std::string& path, const char* name) {
  const Json& v = field(j, path, name);
  if (!v.is_array()) fail(sub(path, name), "expected an array");
  return v;
}

std::vector<Interval> intervals_field(const Json& j, const std::string& path, const char* name) {
  std::vector<Interval> out;
  const Json* v = optional_field(j, name);
  if (!v) return out;
  if (!v->is_array()) fail(sub(path, name), "expected an array");
  for (std::size_t i = 0; i < v->size(); ++i) {
    out.push_back(interval_from_json((*v)[i], sub(sub(path, name), std::to_string(i))));
  }
  return out;
}

std::vector<Rational> rationals_field(const Json& j, const std::string& path, const char* name) {
  const Json* v = optional_field(j, name);
  return v ? rationals_from_json(*v, sub(path, name)) : std::vector<Rational>{};
}

template <typename F>
auto wrap(const std::string& path, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "rationals are written as strings, e.g. \"3/10\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

std::vector<Rational> rationals_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], sub(path, std::to_string(i))));
  return out;
}

Interval interval_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) return Interval::point(rational_from_json(j, path));
  Interval iv{rational_field(j, path, "lo"), rational_field(j, path, "hi"), bool_or(j, path, "lo_closed", true),
              bool_or(j, path, "hi_closed", true)};
  if (iv.lo > iv.hi) fail(path, "lo exceeds hi");
  return iv;
}

SetModel model_from_json(const Json& j, const std::string& path) {
  std::string kind = string_field(j, path, "kind");
  return wrap(path, [&]() -> SetModel {
    if (kind == "lattice") {
      return SetModel::lattice_model(rational_field(j, path, "step"), rational_or(j, path, "offset", 0),
                                     bool_or(j, path, "nonnegative_only", false));
    }
    if (kind == "ray") {
      long dir = integer_or(j, path, "direction", 1);
      if (dir != 1 && dir != -1) fail(sub(path, "direction"), "direction must be 1 or -1");
      return SetModel::ray_model(rational_or(j, path, "origin", 0), static_cast<int>(dir));
    }
    if (kind == "full_line") return SetModel::full();
    if (kind == "geometric_points") {
      return SetModel::geometric_points_model(rational_field(j, path, "q"), rational_or(j, path, "c", 1),
                                              integer_or(j, path, "n0", 0));
    }
    if (kind == "geometric_blocks") {
      std::optional<long> n0;
      if (const Json* v = optional_field(j, "n0")) n0 = integer_from_json(*v, sub(path, "n0"));
      return SetModel::geometric_blocks_model(rational_field(j, path, "q"), rational_field(j, path, "a"),
                                              rational_field(j, path, "b"), n0);
    }
    if (kind == "periodic_blocks") {
      return SetModel::periodic_blocks_model(rational_field(j, path, "period"), intervals_field(j, path, "blocks"),
                                             rational_or(j, path, "start", 0));
    }
    if (kind == "points") {
      return SetModel::points_model(rationals_field(j, path, "points"), intervals_field(j, path, "intervals"));
    }
    if (kind == "union") {
      const Json& members = array_field(j, path, "members");
      std::vector<SetModel> out;
      for (std::size_t i = 0; i < members.size(); ++i) {
        out.push_back(model_from_json(members[i], sub(sub(path, "members"), std::to_string(i))));
      }
      return SetModel::union_model(std::move(out));
    }
    if (kind == "modification") {
      return SetModel::modification(model_from_json(field(j, path, "base"), sub(path, "base")),
                                    rationals_field(j, path, "added"), intervals_field(j, path, "removed"));
    }
    if (kind == "product") {
      return SetModel::product_model(model_from_json(field(j, path, "x"), sub(path, "x")),
                                     model_from_json(field(j, path, "y"), sub(path, "y")));
    }
    if (kind == "strip") return SetModel::strip(rational_field(j, path, "c1"), rational_field(j, path, "c2"));
    if (kind == "planar_ray") return SetModel::planar_ray();
    fail(sub(path, "kind"), "unknown model kind '" + kind + "'");
  });
}

AmbientPoint point_from_json(const Json& j, const std::string& path) { return rationals_from_json(j, path); }

IndexMap index_map_from_json(const Json& j, const std::string& path) {
  std::string kind = string_field(j, path, "kind");
  return wrap(path, [&]() -> IndexMap {
    if (kind == "affine") return IndexMap::affine(integer_or(j, path, "alpha", 1), integer_or(j, path, "beta", 0));
    if (kind == "power") return IndexMap::power(static_cast<int>(integer_or(j, path, "exponent", 2)));
    fail(sub(path, "kind"), "unknown index map kind '" + kind + "'");
  });
}

ScalingSequence scaling_from_json(const Json& j, const std::string& path) {
  std::string kind = string_field(j, path, "kind");
  ScalingSequence r = wrap(path, [&]() -> ScalingSequence {
    if (kind == "geometric") return ScalingSequence::geometric(rational_field(j, path, "q"), rational_or(j, path, "c", 1));
    if (kind == "polynomial") {
      return ScalingSequence::polynomial(static_cast<int>(integer_or(j, path, "degree", 1)), rational_or(j, path, "c", 1));
    }
    if (kind == "interleave") {
      return ScalingSequence::interleave(scaling_from_json(field(j, path, "odd"), sub(path, "odd")),
                                         scaling_from_json(field(j, path, "even"), sub(path, "even")));
    }
    if (kind == "subsequence") {
      return ScalingSequence::subsequence(scaling_from_json(field(j, path, "base"), sub(path, "base")),
                                          index_map_from_json(field(j, path, "map"), sub(path, "map")));
    }
    if (kind == "distance_of") {
      return ScalingSequence::distance_of(spec_from_json(field(j, path, "sequence"), sub(path, "sequence")),
                                          rational_or(j, path, "p", 0));
    }
    fail(sub(path, "kind"), "unknown scaling kind '" + kind + "'");
  });
  wrap(path, [&] {
    validate(r);
    return 0;
  });
  return r;
}

PointSequenceSpec spec_from_json(const Json& j, const std::string& path) {
  std::string kind = string_field(j, path, "kind");
  std::string name = string_field(j, path, "name");
  return wrap(path, [&]() -> PointSequenceSpec {
    if (kind == "affine") {
      Sublinear u = Sublinear::constant;
      if (const Json* v = optional_field(j, "u")) {
        std::string s = v->is_string() ? v->get<std::string>() : "";
        if (s == "constant") {
          u = Sublinear::constant;
        } else if (s == "sqrt_r") {
          u = Sublinear::sqrt_r;
        } else if (s == "log_r") {
          u = Sublinear::log_r;
        } else {
          fail(sub(path, "u"), "expected \"constant\", \"sqrt_r\" or \"log_r\"");
        }
      }
      long sign = integer_or(j, path, "sign", 1);
      if (sign != 1 && sign != -1) fail(sub(path, "sign"), "sign must be 1 or -1");
      return PointSequenceSpec::affine(name, rational_field(j, path, "a"), rational_or(j, path, "b", 0), u,
                                       bool_or(j, path, "alternating", false), static_cast<int>(sign));
    }
    if (kind == "in_set") {
      return PointSequenceSpec::in_set(name, model_from_json(field(j, path, "model"), sub(path, "model")),
                                       spec_from_json(field(j, path, "base"), sub(path, "base")));
    }
    if (kind == "closed_form") return PointSequenceSpec::closed_form(name, string_field(j, path, "expr"));
    fail(sub(path, "kind"), "unknown sequence kind '" + kind + "'");
  });
}

FinitePseudometricSpace space_from_json(const Json& j, const std::string& path) {
  const Json& labels = array_field(j, path, "labels");
  const Json& dist = array_field(j, path, "dist");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) fail(sub(sub(path, "labels"), std::to_string(i)), "expected a string");
    names.push_back(labels[i].get<std::string>());
  }
  DistanceTable table;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    table.push_back(rationals_from_json(dist[i], sub(sub(path, "dist"), std::to_string(i))));
  }
  FinitePseudometricSpace space;
  space.labels = std::move(names);
  space.dist = std::move(table);
  return space;
}

std::vector<Rational> grid_from_json(const Json& j, const std::string& path) {
  std::vector<Rational> out;
  if (j.is_array()) {
    out = rationals_from_json(j, path);
  } else {
    Rational start = rational_field(j, path, "start");
    long count = integer_from_json(field(j, path, "count"), sub(path, "count"));
    if (count < 1 || count > 100000) fail(sub(path, "count"), "count must be between 1 and 100000");
    const Json* growth = optional_field(j, "growth");
    const Json* step = optional_field(j, "step");
    if ((growth == nullptr) == (step == nullptr)) fail(path, "give exactly one of 'growth' and 'step'");
    Rational g = growth ? rational_from_json(*growth, sub(path, "growth")) : Rational(0);
    Rational s = step ? rational_from_json(*step, sub(path, "step")) : Rational(0);
    if (growth && g <= 1) fail(sub(path, "growth"), "growth must exceed 1");
    if (step && s <= 0) fail(sub(path, "step"), "step must be positive");
    Rational t = start;
    for (long i = 0; i < count; ++i) {
      out.push_back(t);
      t = growth ? Rational(t * g) : Rational(t + s);
    }
  }
  if (out.empty()) fail(path, "grid is empty");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) fail(path, "grid must be strictly increasing");
  }
  return out;
}

Json interval_to_json(const Interval& iv) {
  return Json{{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

Json space_to_json(const FinitePseudometricSpace& space) {
  Json dist = Json::array();
  for (const auto& row : space.dist) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    dist.push_back(r);
  }
  return Json{{"labels", space.labels}, {"dist", dist}};
}

Json number_json(const Rational& value) { return Json{{"exact", to_string(value)}, {"decimal", to_decimal(value)}}; }

Json number_json(const Distance& value) {
  return Json{{"exact", value.exact_text()}, {"decimal", value.decimal_text()}};
}

}  // namespace asym
