#include "asym/pseudometric.hpp"

#include <algorithm>
#include <numeric>

namespace asym {

FinitePseudometricSpace FinitePseudometricSpace::make(std::vector<std::string> labels, DistanceTable dist) {
  auto result = validate_pseudometric(labels, dist);
  if (!result.ok) throw InputError("invalid pseudometric: " + result.violations.front().message);
  return {std::move(labels), std::move(dist)};
}

ValidationResult validate_pseudometric(const std::vector<std::string>& labels, const DistanceTable& table) {
  ValidationResult out;
  auto fail = [&](Violation v) {
    out.ok = false;
    out.violations.push_back(std::move(v));
  };
  const std::size_t n = labels.size();
  if (table.size() != n) {
    fail({Violation::Kind::shape, 0, 0, 0,
          "table has " + std::to_string(table.size()) + " rows for " + std::to_string(n) + " labels"});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      fail({Violation::Kind::shape, i, 0, 0, "row " + std::to_string(i) + " has the wrong length"});
    }
  }
  if (!out.ok) return out;
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i][i] != 0) fail({Violation::Kind::diagonal, i, i, 0, "d(" + labels[i] + "," + labels[i] + ") != 0"});
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] < 0) {
        fail({Violation::Kind::negative, i, j, 0, "negative d(" + labels[i] + "," + labels[j] + ")"});
      }
      if (i < j && table[i][j] != table[j][i]) {
        fail({Violation::Kind::asymmetric, i, j, 0, "d(" + labels[i] + "," + labels[j] + ") is not symmetric"});
      }
    }
  }
  if (!out.ok) return out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i >= k) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (table[i][k] > table[i][j] + table[j][k]) {
          fail({Violation::Kind::triangle, i, j, k,
                "d(" + labels[i] + "," + labels[k] + ") = " + to_string(table[i][k]) + " > d(" + labels[i] + "," +
                    labels[j] + ") + d(" + labels[j] + "," + labels[k] + ") = " +
                    to_string(table[i][j] + table[j][k])});
        }
      }
    }
  }
  return out;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

ZeroClassPartition zero_classes(const FinitePseudometricSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (space.dist[i][j] == 0) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }
  ZeroClassPartition out;
  out.block_of.assign(n, 0);
  std::vector<std::optional<std::size_t>> block_of_root(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find_root(parent, i);
    if (!block_of_root[r]) {
      block_of_root[r] = out.blocks.size();
      out.blocks.emplace_back();
    }
    out.blocks[*block_of_root[r]].push_back(i);
    out.block_of[i] = *block_of_root[r];
  }
  // Transitivity check: members of one block must be pairwise at distance 0.
  for (const auto& block : out.blocks) {
    for (auto i : block) {
      for (auto j : block) {
        if (space.dist[i][j] != 0) {
          throw InvariantFailure("zero-distance relation is not transitive at (" + space.labels[i] + ", " +
                                 space.labels[j] + ")");
        }
      }
    }
  }
  return out;
}

QuotientMetricSpace metric_identify(const FinitePseudometricSpace& space) {
  ZeroClassPartition part = zero_classes(space);
  const std::size_t m = part.blocks.size();
  QuotientMetricSpace out;
  out.projection = part.block_of;
  out.quotient.dist.assign(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t a = 0; a < m; ++a) {
    std::string label = "[";
    for (std::size_t t = 0; t < part.blocks[a].size(); ++t) {
      label += (t ? "," : "") + space.labels[part.blocks[a][t]];
    }
    out.quotient.labels.push_back(label + "]");
    for (std::size_t b = 0; b < m; ++b) {
      const Rational& value = space.dist[part.blocks[a].front()][part.blocks[b].front()];
      for (auto i : part.blocks[a]) {
        for (auto j : part.blocks[b]) {
          if (space.dist[i][j] != value) {
            throw InvariantFailure("quotient distance depends on representatives (" + space.labels[i] + ", " +
                                   space.labels[j] + ")");
          }
        }
      }
      out.quotient.dist[a][b] = value;
      if (a != b && value == 0) throw InvariantFailure("distinct zero classes at distance 0");
    }
  }
  return out;
}

PseudoisometryCheck is_pseudoisometry(const std::vector<std::size_t>& map, const FinitePseudometricSpace& src,
                                      const FinitePseudometricSpace& dst) {
  if (map.size() != src.size()) throw InputError("map must be total on the source labels");
  for (auto target : map) {
    if (target >= dst.size()) throw InputError("map image outside the target label set");
  }
  PseudoisometryCheck out;
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = i + 1; j < src.size(); ++j) {
      if (src.dist[i][j] != dst.dist[map[i]][map[j]]) {
        out.ok = false;
        out.bad_pair = {i, j};
        return out;
      }
    }
  }
  for (std::size_t y = 0; y < dst.size(); ++y) {
    bool covered = std::any_of(map.begin(), map.end(), [&](std::size_t x) { return dst.dist[x][y] == 0; });
    if (!covered) {
      out.ok = false;
      out.uncovered = y;
      return out;
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> exists_pseudoisometry(const FinitePseudometricSpace& src,
                                                              const FinitePseudometricSpace& dst, std::size_t bound) {
  if (src.size() > bound || dst.size() > bound) {
    throw InputError("search bound exceeded: spaces of size " + std::to_string(src.size()) + " and " +
                     std::to_string(dst.size()) + " (bound " + std::to_string(bound) + ")");
  }
  if (src.size() == 0 || dst.size() == 0) {
    if (src.size() == dst.size()) return std::vector<std::size_t>{};
    return std::nullopt;
  }
  std::vector<std::size_t> map(src.size(), 0);
  std::optional<std::vector<std::size_t>> found;
  // Depth-first over maps, pruning as soon as a distance breaks.
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == src.size()) {
      if (is_pseudoisometry(map, src, dst).ok) {
        found = map;
        return true;
      }
      return false;
    }
    for (std::size_t y = 0; y < dst.size(); ++y) {
      bool fits = true;
      for (std::size_t k = 0; k < i && fits; ++k) fits = src.dist[k][i] == dst.dist[map[k]][y];
      if (!fits) continue;
      map[i] = y;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  search(search, 0);
  return found;
}

std::optional<std::vector<std::size_t>> find_isometry(const FinitePseudometricSpace& a,
                                                      const FinitePseudometricSpace& b) {
  if (a.size() != b.size()) return std::nullopt;
  auto multiset = [](const FinitePseudometricSpace& s) {
    std::vector<Rational> values;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) values.push_back(s.dist[i][j]);
    }
    std::sort(values.begin(), values.end());
    return values;
  };
  if (multiset(a) != multiset(b)) return std::nullopt;
  const std::size_t n = a.size();
  std::vector<std::size_t> map(n);
  std::vector<bool> used(n, false);
  std::optional<std::vector<std::size_t>> found;
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      found = map;
      return true;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool fits = true;
      for (std::size_t k = 0; k < i && fits; ++k) fits = a.dist[k][i] == b.dist[map[k]][y];
      if (!fits) continue;
      used[y] = true;
      map[i] = y;
      if (self(self, i + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  search(search, 0);
  return found;
}

std::vector<std::size_t> closure_of_subset(const FinitePseudometricSpace& space, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw InputError("closure of an empty subset");
  for (auto i : subset) {
    if (i >= space.size()) throw InputError("subset index out of range");
  }
  ZeroClassPartition part = zero_classes(space);
  std::vector<bool> in(space.size(), false);
  for (auto i : subset) {
    for (auto j : part.blocks[part.block_of[i]]) in[j] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (in[i]) out.push_back(i);
  }
  return out;
}

FinitePseudometricSpace random_pseudometric(std::mt19937_64& rng, std::size_t points) {
  std::uniform_int_distribution<int> coord(0, 2);
  std::vector<std::pair<int, int>> pts;
  for (std::size_t i = 0; i < points; ++i) pts.emplace_back(coord(rng), coord(rng));
  FinitePseudometricSpace s;
  s.dist.assign(points, std::vector<Rational>(points, Rational(0)));
  for (std::size_t i = 0; i < points; ++i) {
    s.labels.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < points; ++j) {
      s.dist[i][j] = std::abs(pts[i].first - pts[j].first) + std::abs(pts[i].second - pts[j].second);
    }
  }
  return s;
}

}  // namespace asym
