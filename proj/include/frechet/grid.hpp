#pragma once

// Piecewise-linear grid surfaces and self-maps of the unit square.
//
// A resolution-k grid has (k+1)^2 vertices (i/k, j/k), stored row-major with x
// varying fastest. Every cell is split by its lower-left to upper-right
// diagonal into a lower triangle (i,j),(i+1,j),(i+1,j+1) and an upper
// triangle (i,j),(i+1,j+1),(i,j+1); both are listed counter-clockwise.

#include "frechet/geometry.hpp"
#include "frechet/metric.hpp"
#include "frechet/rational.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frechet {

inline Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Vec vec_scale(const Rat& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

class GridTopology {
public:
  explicit GridTopology(std::size_t k) : k_(k) {
    if (k == 0) throw std::invalid_argument("grid resolution must be at least 1");
  }
  std::size_t k() const { return k_; }
  std::size_t vertex_count() const { return (k_ + 1) * (k_ + 1); }
  std::size_t triangle_count() const { return 2 * k_ * k_; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * (k_ + 1) + i; }
  Point2 point(std::size_t i, std::size_t j) const {
    Rat kk(static_cast<unsigned long>(k_));
    return {Rat(Rat(static_cast<unsigned long>(i)) / kk), Rat(Rat(static_cast<unsigned long>(j)) / kk)};
  }
  Point2 point(std::size_t v) const { return point(v % (k_ + 1), v / (k_ + 1)); }

  /// Vertex indices of triangle t, counter-clockwise.
  std::array<std::size_t, 3> triangle(std::size_t t) const {
    std::size_t cell = t / 2, i = cell % k_, j = cell / k_;
    if (t % 2 == 0) return {index(i, j), index(i + 1, j), index(i + 1, j + 1)};
    return {index(i, j), index(i + 1, j + 1), index(i, j + 1)};
  }
  Polygon triangle_polygon(std::size_t t) const {
    auto v = triangle(t);
    return {point(v[0]), point(v[1]), point(v[2])};
  }

  struct Location {
    std::size_t i, j;
    bool upper;
    Rat u, w;  // local coordinates in the cell, in [0,1]
  };

  /// Containing cell/triangle of a point of the unit square. Points on shared
  /// edges get a deterministic choice; evaluation is continuous so any choice
  /// gives the same value.
  Location locate(const Point2& x) const {
    if (!in_unit_square(x))
      throw std::domain_error("point (" + to_string(x.x) + "," + to_string(x.y) + ") outside the unit square");
    Rat kk(static_cast<unsigned long>(k_));
    Rat sx = x.x * kk, sy = x.y * kk;
    BigInt fi = floor_rat(sx), fj = floor_rat(sy);
    std::size_t i = fi.get_ui(), j = fj.get_ui();
    if (i >= k_) i = k_ - 1;
    if (j >= k_) j = k_ - 1;
    Rat u = sx - Rat(static_cast<unsigned long>(i));
    Rat w = sy - Rat(static_cast<unsigned long>(j));
    return {i, j, u < w, u, w};
  }
  std::size_t triangle_of(const Location& l) const { return 2 * (l.j * k_ + l.i) + (l.upper ? 1 : 0); }

  /// The lines x = i/k, y = j/k and x - y = l/k carrying all interior edges.
  std::vector<Line> lines() const {
    std::vector<Line> out;
    Rat kk(static_cast<unsigned long>(k_));
    for (std::size_t i = 1; i < k_; ++i) {
      Rat c = Rat(static_cast<unsigned long>(i)) / kk;
      out.push_back({Rat(1), Rat(0), c});
      out.push_back({Rat(0), Rat(1), c});
    }
    for (long l = -static_cast<long>(k_) + 1; l <= static_cast<long>(k_) - 1; ++l)
      out.push_back({Rat(1), Rat(-1), Rat(Rat(l) / kk)});
    return out;
  }

  /// Boundary vertex indices counter-clockwise starting at (0,0); 4k entries.
  std::vector<std::size_t> boundary_cycle() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < k_; ++i) out.push_back(index(i, 0));
    for (std::size_t j = 0; j < k_; ++j) out.push_back(index(k_, j));
    for (std::size_t i = k_; i > 0; --i) out.push_back(index(i, k_));
    for (std::size_t j = k_; j > 0; --j) out.push_back(index(0, j));
    return out;
  }

  bool is_boundary_vertex(std::size_t v) const {
    std::size_t i = v % (k_ + 1), j = v / (k_ + 1);
    return i == 0 || j == 0 || i == k_ || j == k_;
  }

private:
  std::size_t k_;
};

/// Barycentric combination on the located triangle.
template <class V, class Add, class Sub, class Scale>
V grid_interpolate(const GridTopology& g, const std::vector<V>& vals, const Point2& x, Add add, Sub sub,
                   Scale scale) {
  auto l = g.locate(x);
  const V& v00 = vals[g.index(l.i, l.j)];
  const V& v11 = vals[g.index(l.i + 1, l.j + 1)];
  if (!l.upper) {
    const V& v10 = vals[g.index(l.i + 1, l.j)];
    return add(add(v00, scale(l.u, sub(v10, v00))), scale(l.w, sub(v11, v10)));
  }
  const V& v01 = vals[g.index(l.i, l.j + 1)];
  return add(add(v00, scale(l.w, sub(v01, v00))), scale(l.u, sub(v11, v01)));
}

/// Linear part of a grid-PL function on triangle t: partial derivatives in x
/// and y (per unit of domain length).
template <class V, class Sub, class Scale>
std::pair<V, V> grid_gradient(const GridTopology& g, const std::vector<V>& vals, std::size_t t, Sub sub,
                              Scale scale) {
  std::size_t cell = t / 2, i = cell % g.k(), j = cell / g.k();
  Rat kk(static_cast<unsigned long>(g.k()));
  const V& v00 = vals[g.index(i, j)];
  const V& v11 = vals[g.index(i + 1, j + 1)];
  if (t % 2 == 0) {
    const V& v10 = vals[g.index(i + 1, j)];
    return {scale(kk, sub(v10, v00)), scale(kk, sub(v11, v10))};
  }
  const V& v01 = vals[g.index(i, j + 1)];
  return {scale(kk, sub(v11, v01)), scale(kk, sub(v01, v00))};
}

/// A piecewise-linear map D^2 -> X sampled on a uniform vertex grid.
class GridSurface {
public:
  GridSurface(MetricSpace space, std::size_t m, std::vector<Vec> samples)
      : space_(std::move(space)), topo_(m), samples_(std::move(samples)) {
    if (samples_.size() != topo_.vertex_count())
      throw std::invalid_argument("surface needs " + std::to_string(topo_.vertex_count()) + " samples, got " +
                                  std::to_string(samples_.size()));
    for (const auto& s : samples_) space_.check_point(s);
  }

  static GridSurface from_function(MetricSpace space, std::size_t m, const std::function<Vec(const Point2&)>& f) {
    GridTopology g(m);
    std::vector<Vec> s;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) s.push_back(f(g.point(v)));
    return GridSurface(std::move(space), m, std::move(s));
  }

  const MetricSpace& space() const { return space_; }
  std::size_t m() const { return topo_.k(); }
  const GridTopology& topology() const { return topo_; }
  const std::vector<Vec>& samples() const { return samples_; }
  const Vec& sample(std::size_t i, std::size_t j) const { return samples_[topo_.index(i, j)]; }

  /// Exact barycentric evaluation. Table surfaces evaluate only at vertices.
  Vec eval(const Point2& x) const {
    if (space_.is_table()) {
      Rat kk(static_cast<unsigned long>(m()));
      Rat sx = x.x * kk, sy = x.y * kk;
      if (!in_unit_square(x) || sx.get_den() != 1 || sy.get_den() != 1)
        throw std::domain_error("table-space surface evaluated off the vertex grid at (" + to_string(x.x) + "," +
                                to_string(x.y) + ")");
      return sample(sx.get_num().get_ui(), sy.get_num().get_ui());
    }
    return grid_interpolate(topo_, samples_, x, vec_add, vec_sub, vec_scale);
  }

  std::pair<Vec, Vec> gradient(std::size_t t) const { return grid_gradient(topo_, samples_, t, vec_sub, vec_scale); }

private:
  MetricSpace space_;
  GridTopology topo_;
  std::vector<Vec> samples_;
};

inline Point2 p2_add(const Point2& a, const Point2& b) { return a + b; }
inline Point2 p2_sub(const Point2& a, const Point2& b) { return a - b; }
inline Point2 p2_scale(const Rat& s, const Point2& a) { return s * a; }

/// A convex domain piece carrying an affine map.
struct PLPiece {
  Polygon domain;
  Affine2 map;
};

/// A piecewise-affine planar map given by convex pieces with disjoint
/// interiors. Unlike GridMap its images are unconstrained.
class PLMap {
public:
  PLMap() = default;
  explicit PLMap(std::vector<PLPiece> pieces) : pieces_(std::move(pieces)) {}

  const std::vector<PLPiece>& pieces() const { return pieces_; }

  Point2 eval(const Point2& x) const {
    for (const auto& p : pieces_)
      if (in_convex(p.domain, x)) return p.map(x);
    throw std::domain_error("point outside the domain of the PL map");
  }

  /// Max over pieces of the max-norm operator norm.
  Rat lipschitz() const {
    Rat best = 0;
    for (const auto& p : pieces_) best = rat_max(best, p.map.op_norm_inf());
    return best;
  }

  PLMap translated(const Point2& shift) const {
    PLMap r = *this;
    for (auto& p : r.pieces_) {
      p.map.b1 += shift.x;
      p.map.b2 += shift.y;
    }
    return r;
  }

private:
  std::vector<PLPiece> pieces_;
};

/// A piecewise-linear self-map of the unit square on a resolution-k grid.
class GridMap {
public:
  GridMap(std::size_t k, std::vector<Point2> images) : topo_(k), images_(std::move(images)) {
    if (images_.size() != topo_.vertex_count())
      throw std::invalid_argument("map needs " + std::to_string(topo_.vertex_count()) + " vertex images, got " +
                                  std::to_string(images_.size()));
    for (const auto& p : images_)
      if (!in_unit_square(p))
        throw std::invalid_argument("vertex image (" + to_string(p.x) + "," + to_string(p.y) +
                                    ") outside the unit square");
  }

  static GridMap from_function(std::size_t k, const std::function<Point2(const Point2&)>& f) {
    GridTopology g(k);
    std::vector<Point2> im;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) im.push_back(f(g.point(v)));
    return GridMap(k, std::move(im));
  }
  static GridMap identity(std::size_t k) {
    return from_function(k, [](const Point2& p) { return p; });
  }
  /// Counter-clockwise rotation by quarter_turns * 90 degrees about the centre.
  static GridMap rotation(std::size_t k, int quarter_turns = 1) {
    int q = ((quarter_turns % 4) + 4) % 4;
    return from_function(k, [q](const Point2& p) {
      Point2 r = p;
      for (int i = 0; i < q; ++i) r = Point2{Rat(1 - r.y), r.x};
      return r;
    });
  }
  static GridMap swap(std::size_t k) {
    return from_function(k, [](const Point2& p) { return Point2{p.y, p.x}; });
  }

  std::size_t k() const { return topo_.k(); }
  const GridTopology& topology() const { return topo_; }
  const std::vector<Point2>& images() const { return images_; }
  const Point2& image(std::size_t v) const { return images_[v]; }

  Point2 eval(const Point2& x) const { return grid_interpolate(topo_, images_, x, p2_add, p2_sub, p2_scale); }

  Affine2 triangle_affine(std::size_t t) const {
    auto v = topo_.triangle(t);
    return Affine2::from_triangles({topo_.point(v[0]), topo_.point(v[1]), topo_.point(v[2])},
                                   {images_[v[0]], images_[v[1]], images_[v[2]]});
  }

  /// Twice the signed area of the image of triangle t.
  Rat triangle_det(std::size_t t) const {
    auto v = topo_.triangle(t);
    return orient_value(images_[v[0]], images_[v[1]], images_[v[2]]);
  }

  PLMap as_pl_map() const {
    std::vector<PLPiece> pieces;
    for (std::size_t t = 0; t < topo_.triangle_count(); ++t)
      pieces.push_back({topo_.triangle_polygon(t), triangle_affine(t)});
    return PLMap(std::move(pieces));
  }

  /// The same PL map on a grid of resolution factor * k.
  GridMap refined(std::size_t factor) const {
    return from_function(k() * factor, [this](const Point2& p) { return eval(p); });
  }

  friend bool operator==(const GridMap& a, const GridMap& b) { return a.k() == b.k() && a.images_ == b.images_; }
  friend bool operator<(const GridMap& a, const GridMap& b) {
    if (a.k() != b.k()) return a.k() < b.k();
    return a.images_ < b.images_;
  }

private:
  GridTopology topo_;
  std::vector<Point2> images_;
};

/// Exact Lipschitz constant of a grid map under the max norm: the largest
/// operator norm of the linear parts. Attained on the domain.
inline Rat lipschitz_constant(const GridMap& f) {
  Rat best = 0;
  for (std::size_t t = 0; t < f.topology().triangle_count(); ++t) {
    auto [dx, dy] = grid_gradient(f.topology(), f.images(), t, p2_sub, p2_scale);
    best = rat_max(best, Rat(rat_abs(dx.x) + rat_abs(dy.x)));
    best = rat_max(best, Rat(rat_abs(dx.y) + rat_abs(dy.y)));
  }
  return best;
}

/// Lipschitz constant of a surface with max-norm domain. Exact for max-norm
/// codomains; for Euclidean codomains a rational upper bound within 2^-40 of
/// the exact operator norm.
inline Rat lipschitz_constant(const GridSurface& s) {
  if (s.space().is_table()) throw std::invalid_argument("lipschitz_constant: table-space surface has no PL structure");
  Rat best = 0;
  for (std::size_t t = 0; t < s.topology().triangle_count(); ++t) {
    auto [dx, dy] = s.gradient(t);
    if (s.space().is_max_norm()) {
      for (std::size_t i = 0; i < dx.size(); ++i) best = rat_max(best, Rat(rat_abs(dx[i]) + rat_abs(dy[i])));
    } else {
      // Extreme points of the max-norm unit ball are (+-1, +-1).
      Rat a = 0, b = 0;
      for (std::size_t i = 0; i < dx.size(); ++i) {
        Rat p = dx[i] + dy[i], q = dx[i] - dy[i];
        a += p * p;
        b += q * q;
      }
      best = rat_max(best, sqrt_enclosure(rat_max(a, b), 40).second);
    }
  }
  return best;
}

/// Lipschitz modulus assumed for a table-space surface: the largest ratio of
/// sample distance to domain distance over the triangulation edges.
inline Rat table_edge_lipschitz(const GridSurface& s) {
  const auto& g = s.topology();
  const auto& t = s.space().table_data();
  Rat kk(static_cast<unsigned long>(g.k()));
  Rat best = 0;
  for (std::size_t tri = 0; tri < g.triangle_count(); ++tri) {
    auto v = g.triangle(tri);
    for (int e = 0; e < 3; ++e) {
      std::size_t a = v[e], b = v[(e + 1) % 3];
      Rat d = t.at(s.space().table_index(s.samples()[a]), s.space().table_index(s.samples()[b]));
      best = rat_max(best, Rat(d * kk));
    }
  }
  return best;
}

/// Modulus of continuity n -> n + ceil(log2(max(L, 1))) of an L-Lipschitz map.
struct Modulus {
  Rat lipschitz;
  unsigned shift = 0;
  unsigned rule(unsigned n) const { return n + shift; }
};

inline Modulus modulus_from_lipschitz(const Rat& L) { return Modulus{L, ceil_log2(L)}; }
inline Modulus modulus_of(const GridMap& f) { return modulus_from_lipschitz(lipschitz_constant(f)); }
inline Modulus modulus_of(const GridSurface& s) {
  return modulus_from_lipschitz(s.space().is_table() ? table_edge_lipschitz(s) : lipschitz_constant(s));
}

/// Vertices of the common refinement of two grid triangulations.
inline std::vector<Point2> overlay_vertices(std::size_t k1, std::size_t k2) {
  std::vector<Line> lines = GridTopology(k1).lines();
  if (k2 != k1) {
    auto more = GridTopology(k2).lines();
    lines.insert(lines.end(), more.begin(), more.end());
  }
  std::vector<Point2> pts;
  for (const auto& cell : refine(unit_square(), lines))
    for (const auto& p : cell) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Exact sup-norm distance between two grid maps; attained at a vertex of
/// the overlay of their triangulations.
inline Rat sup_distance(const GridMap& a, const GridMap& b) {
  Rat best = 0;
  for (const auto& p : overlay_vertices(a.k(), b.k())) best = rat_max(best, dist_inf(a.eval(p), b.eval(p)));
  return best;
}

}  // namespace frechet
