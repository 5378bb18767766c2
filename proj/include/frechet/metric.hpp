#pragma once

#include "frechet/enclosure.hpp"
#include "frechet/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace frechet {

struct MaxNorm {
  std::size_t dim = 2;
};
struct Euclidean {
  std::size_t dim = 2;
};
/// A finite metric space given by its distance matrix. Points of a table space
/// are represented as one-element vectors holding the point index.
struct TableMetric {
  std::size_t n = 0;
  std::vector<Rat> dist;  // row-major n x n
  const Rat& at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
};

class dimension_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class MetricSpace {
public:
  using Kind = std::variant<MaxNorm, Euclidean, TableMetric>;

  static MetricSpace max_norm(std::size_t d) {
    if (d == 0) throw std::invalid_argument("dimension must be positive");
    return MetricSpace(MaxNorm{d});
  }
  static MetricSpace euclidean(std::size_t d) {
    if (d == 0) throw std::invalid_argument("dimension must be positive");
    return MetricSpace(Euclidean{d});
  }
  /// Validates symmetry, zero diagonal, positivity off the diagonal and the
  /// triangle inequality.
  static MetricSpace table(std::size_t n, std::vector<Rat> dist) {
    if (n == 0) throw std::invalid_argument("table metric needs at least one point");
    if (dist.size() != n * n) throw std::invalid_argument("table metric matrix has wrong size");
    TableMetric t{n, std::move(dist)};
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(t.at(i, i)) != 0) throw std::invalid_argument("table metric: nonzero diagonal at " + std::to_string(i));
      for (std::size_t j = 0; j < n; ++j) {
        if (t.at(i, j) != t.at(j, i))
          throw std::invalid_argument("table metric: asymmetric entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
        if (i != j && sgn(t.at(i, j)) <= 0)
          throw std::invalid_argument("table metric: non-positive distance between distinct points " +
                                      std::to_string(i) + " and " + std::to_string(j));
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (t.at(i, k) > t.at(i, j) + t.at(j, k))
            throw std::invalid_argument("table metric: triangle inequality fails at (" + std::to_string(i) + "," +
                                        std::to_string(j) + "," + std::to_string(k) + ")");
    return MetricSpace(std::move(t));
  }

  const Kind& kind() const { return kind_; }
  bool is_max_norm() const { return std::holds_alternative<MaxNorm>(kind_); }
  bool is_euclidean() const { return std::holds_alternative<Euclidean>(kind_); }
  bool is_table() const { return std::holds_alternative<TableMetric>(kind_); }
  const TableMetric& table_data() const { return std::get<TableMetric>(kind_); }

  /// Coordinate dimension of a point (1 for table spaces).
  std::size_t point_dim() const {
    if (auto m = std::get_if<MaxNorm>(&kind_)) return m->dim;
    if (auto e = std::get_if<Euclidean>(&kind_)) return e->dim;
    return 1;
  }

  std::string name() const {
    if (auto m = std::get_if<MaxNorm>(&kind_)) return "maxnorm " + std::to_string(m->dim);
    if (auto e = std::get_if<Euclidean>(&kind_)) return "euclid " + std::to_string(e->dim);
    return "table " + std::to_string(table_data().n);
  }

  /// Same kind and dimension (tables must match entry for entry).
  bool same_as(const MetricSpace& o) const {
    if (kind_.index() != o.kind_.index()) return false;
    if (is_table()) return table_data().n == o.table_data().n && table_data().dist == o.table_data().dist;
    return point_dim() == o.point_dim();
  }

  /// Index of a table point; throws if the point is not a valid index.
  std::size_t table_index(const Vec& p) const {
    const auto& t = table_data();
    if (p.size() != 1) throw dimension_error("table point must have exactly one coordinate");
    if (p[0].get_den() != 1 || sgn(p[0]) < 0 || p[0] >= Rat(static_cast<unsigned long>(t.n)))
      throw std::out_of_range("table index " + to_string(p[0]) + " out of range [0," + std::to_string(t.n) + ")");
    return p[0].get_num().get_ui();
  }

  void check_point(const Vec& p) const {
    if (is_table()) {
      (void)table_index(p);
      return;
    }
    if (p.size() != point_dim())
      throw dimension_error("point has dimension " + std::to_string(p.size()) + ", space expects " +
                            std::to_string(point_dim()));
  }

private:
  explicit MetricSpace(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

inline Rat max_norm_diff(const Vec& p, const Vec& q) {
  Rat best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat d = rat_abs(Rat(p[i] - q[i]));
    if (best < d) best = d;
  }
  return best;
}

inline Rat squared_diff(const Vec& p, const Vec& q) {
  Rat s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

/// Enclosure of a rational square root with width <= precision.
inline Enclosure sqrt_to_precision(const Rat& sq, const Rat& precision) {
  if (sgn(sq) == 0) return Enclosure::exact(Rat(0));
  unsigned bits = bits_for(precision) + 1;
  auto [lo, hi] = sqrt_enclosure(sq, bits);
  if (lo * lo == sq) return Enclosure::exact(lo);
  return Enclosure(lo, hi);
}

/// Distance between two points. Max-norm and table distances are exact
/// (width 0); Euclidean distances are outward-rounded to width <= precision.
inline Enclosure distance(const MetricSpace& space, const Vec& p, const Vec& q, const Rat& precision) {
  if (sgn(precision) <= 0) throw std::invalid_argument("precision must be positive");
  space.check_point(p);
  space.check_point(q);
  if (space.is_max_norm()) return Enclosure::exact(max_norm_diff(p, q));
  if (space.is_euclidean()) return sqrt_to_precision(squared_diff(p, q), precision);
  const auto& t = space.table_data();
  return Enclosure::exact(t.at(space.table_index(p), space.table_index(q)));
}

}  // namespace frechet
