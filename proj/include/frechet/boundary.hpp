#pragma once

// The boundary of the unit square, PL maps defined on it, and their radial
// extension about the centre.
//
// Boundary points are addressed by a perimeter parameter t in [0,4):
// bottom (t,0), right (1,t-1), top (3-t,1), left (0,4-t).

#include "frechet/geometry.hpp"
#include "frechet/grid.hpp"
#include "frechet/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace frechet {

enum SquareSide : unsigned { kBottom = 1, kRight = 2, kTop = 4, kLeft = 8 };

inline unsigned sides_of(const Point2& p) {
  if (!in_unit_square(p)) return 0;
  unsigned s = 0;
  if (sgn(p.y) == 0) s |= kBottom;
  if (p.x == 1) s |= kRight;
  if (p.y == 1) s |= kTop;
  if (sgn(p.x) == 0) s |= kLeft;
  return s;
}

inline Rat perimeter_param(const Point2& p) {
  unsigned s = sides_of(p);
  if (s == 0) throw std::domain_error("point is not on the boundary of the unit square");
  if ((s & kBottom) && p.x < 1) return p.x;
  if ((s & kRight) && p.y < 1) return Rat(1 + p.y);
  if ((s & kTop) && sgn(p.x) > 0) return Rat(3 - p.x);
  return Rat(4 - p.y);
}

inline Point2 perimeter_point(const Rat& t_in) {
  Rat t = t_in - Rat(floor_rat(Rat(t_in / 4)) * 4);
  if (t < 1) return {t, Rat(0)};
  if (t < 2) return {Rat(1), Rat(t - 1)};
  if (t < 3) return {Rat(3 - t), Rat(1)};
  return {Rat(0), Rat(4 - t)};
}

/// Signed perimeter advance from a to b along a side containing both, or
/// nullopt when no side contains both points.
inline std::optional<Rat> side_advance(const Point2& a, const Point2& b) {
  unsigned common = sides_of(a) & sides_of(b);
  if (common == 0) return std::nullopt;
  if (common & kBottom) return Rat(b.x - a.x);
  if (common & kRight) return Rat(b.y - a.y);
  if (common & kTop) return Rat(a.x - b.x);
  return Rat(a.y - b.y);
}

/// A closed polyline (first point repeated at the end) with distinct
/// consecutive points.
class BoundaryLoop {
public:
  explicit BoundaryLoop(std::vector<Point2> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2 || pts_.front() != pts_.back()) throw std::invalid_argument("boundary loop must be closed");
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
      if (pts_[i] == pts_[i + 1]) throw std::invalid_argument("boundary loop has repeated consecutive points");
  }
  /// Builds the loop from an open point list, closing it and merging repeats.
  static BoundaryLoop closing(std::vector<Point2> pts) {
    std::vector<Point2> out;
    for (auto& p : pts)
      if (out.empty() || out.back() != p) out.push_back(p);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    if (out.empty()) throw std::invalid_argument("empty loop");
    out.push_back(out.front());
    if (out.size() < 2 || (out.size() == 2)) throw std::invalid_argument("loop degenerates to a point");
    return BoundaryLoop(std::move(out));
  }
  static BoundaryLoop unit_square_ccw() { return closing(unit_square()); }

  const std::vector<Point2>& points() const { return pts_; }
  std::size_t segment_count() const { return pts_.size() - 1; }
  /// Sign of the enclosed signed area: +1 counter-clockwise, -1 clockwise.
  int orientation() const {
    Polygon ring(pts_.begin(), pts_.end() - 1);
    return sgn(signed_area2(ring));
  }

private:
  std::vector<Point2> pts_;
};

/// A PL map from the boundary of the unit square to the plane, given by its
/// values at strictly increasing perimeter parameters and interpolated
/// linearly in the parameter (cyclically).
class BoundaryMap {
public:
  BoundaryMap(std::vector<Rat> params, std::vector<Point2> values)
      : params_(std::move(params)), values_(std::move(values)) {
    if (params_.empty() || params_.size() != values_.size())
      throw std::invalid_argument("boundary map needs matching nonempty parameter and value lists");
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (sgn(params_[i]) < 0 || params_[i] >= 4) throw std::invalid_argument("perimeter parameter out of [0,4)");
      if (i > 0 && !(params_[i - 1] < params_[i]))
        throw std::invalid_argument("perimeter parameters must be strictly increasing");
    }
    insert_corners();
  }

  static BoundaryMap of(const GridMap& f) {
    std::vector<Rat> ts;
    std::vector<Point2> vs;
    for (auto v : f.topology().boundary_cycle()) {
      ts.push_back(perimeter_param(f.topology().point(v)));
      vs.push_back(f.image(v));
    }
    return BoundaryMap(std::move(ts), std::move(vs));
  }

  const std::vector<Rat>& params() const { return params_; }
  const std::vector<Point2>& values() const { return values_; }
  std::size_t size() const { return params_.size(); }

  Point2 eval_param(const Rat& t_in) const {
    Rat t = t_in - Rat(floor_rat(Rat(t_in / 4)) * 4);
    std::size_t n = params_.size();
    std::size_t i = n - 1;
    for (std::size_t j = 0; j < n; ++j)
      if (params_[j] <= t) i = j;
    std::size_t nx = (i + 1) % n;
    Rat t0 = params_[i], t1 = params_[nx];
    if (t < t0) t += 4;
    if (!(t0 < t1)) t1 += 4;
    if (t == t0) return values_[i];
    Rat s = (t - t0) / (t1 - t0);
    return values_[i] + s * (values_[nx] - values_[i]);
  }
  Point2 eval(const Point2& p) const { return eval_param(perimeter_param(p)); }

  /// Largest max-norm distance of a value from c.
  Rat sup_deviation(const Point2& c) const {
    Rat best = 0;
    for (const auto& v : values_) best = rat_max(best, dist_inf(v, c));
    return best;
  }

  /// Exact Lipschitz constant with respect to the ambient max norm.
  Rat lipschitz() const {
    std::size_t n = params_.size();
    Rat best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Point2 a0 = perimeter_point(params_[i]), a1 = perimeter_point(params_[(i + 1) % n]);
      const Point2 &fa0 = values_[i], &fa1 = values_[(i + 1) % n];
      best = rat_max(best, Rat(dist_inf(fa0, fa1) / dist_inf(a0, a1)));
      for (std::size_t j = i + 1; j < n; ++j) {
        Point2 b0 = perimeter_point(params_[j]), b1 = perimeter_point(params_[(j + 1) % n]);
        best = rat_max(best, pair_lipschitz(a0, a1, fa0, fa1, b0, b1, values_[j], values_[(j + 1) % n]));
      }
    }
    return best;
  }

private:
  // Each interval between consecutive parameters lies on one side.
  void insert_corners() {
    std::vector<Rat> ts;
    std::vector<Point2> vs;
    for (int c = 0; c < 4; ++c) {
      Rat t(c);
      if (std::find(params_.begin(), params_.end(), t) == params_.end()) {
        ts.push_back(t);
        vs.push_back(eval_param(t));
      }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      auto it = std::lower_bound(params_.begin(), params_.end(), ts[i]);
      auto pos = it - params_.begin();
      params_.insert(it, ts[i]);
      values_.insert(values_.begin() + pos, vs[i]);
    }
  }

  // sup |f(p)-f(q)| / |p-q| over p in [a0,a1], q in [b0,b1], both segments
  // on sides of the square. With p = a0 + u(a1-a0), q = b0 + v(b1-b0) the
  // ratio is linear-fractional on each region where one coordinate term
  // realises |p-q|, so its supremum is attained at a vertex of those regions.
  static Rat pair_lipschitz(const Point2& a0, const Point2& a1, const Point2& fa0, const Point2& fa1,
                            const Point2& b0, const Point2& b1, const Point2& fb0, const Point2& fb1) {
    Point2 da = a1 - a0, db = b1 - b0;
    // coordinate c of p - q = w + u*da - v*db, as linear forms in (u,v)
    struct Lin {
      Rat cu, cv, c0;
      Rat at(const Point2& uv) const { return cu * uv.x + cv * uv.y + c0; }
    };
    Point2 w = a0 - b0;
    std::vector<Lin> m{{da.x, Rat(-db.x), w.x}, {Rat(-da.x), db.x, Rat(-w.x)},
                       {da.y, Rat(-db.y), w.y}, {Rat(-da.y), db.y, Rat(-w.y)}};
    Rat best = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      Polygon reg = unit_square();
      for (std::size_t k = 0; k < m.size() && !reg.empty(); ++k) {
        if (k == j) continue;
        // m_k - m_j <= 0
        reg = clip(reg, HalfPlane{Rat(m[k].cu - m[j].cu), Rat(m[k].cv - m[j].cv), Rat(m[j].c0 - m[k].c0)});
      }
      for (const auto& uv : reg) {
        Rat den = m[j].at(uv);
        if (sgn(den) <= 0) continue;
        Point2 fp = fa0 + uv.x * (fa1 - fa0), fq = fb0 + uv.y * (fb1 - fb0);
        best = rat_max(best, Rat(dist_inf(fp, fq) / den));
      }
    }
    return best;
  }

  std::vector<Rat> params_;
  std::vector<Point2> values_;
};

inline Point2 square_centre() { return {Rat(1, 2), Rat(1, 2)}; }

/// Radial extension about the centre: on the cone over each boundary
/// interval [b_i, b_{i+1}] the map is the affine map of the triangle
/// (c, b_i, b_{i+1}) onto (c, f(b_i), f(b_{i+1})), which agrees with
/// c + r (f(b) - c) at x = c + r (b - c).
inline PLMap radial_extension(const BoundaryMap& f) {
  Point2 c = square_centre();
  std::vector<PLPiece> pieces;
  std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 b0 = perimeter_point(f.params()[i]), b1 = perimeter_point(f.params()[(i + 1) % n]);
    pieces.push_back({{c, b0, b1}, Affine2::from_triangles({c, b0, b1}, {c, f.values()[i], f.values()[(i + 1) % n]})});
  }
  return PLMap(std::move(pieces));
}

/// Lipschitz bound L + |f| for the radial extension, with |f| the sup norm
/// about the centre in the frame where the square is [-1,1]^2, i.e.
/// 2 sup |f - c|.
inline Rat radial_bound(const BoundaryMap& f) {
  return f.lipschitz() + 2 * f.sup_deviation(square_centre());
}

/// 2L + |f| in the same frame: the bound that holds for the max norm,
/// where radial scaling is not the nearest-point projection onto spheres.
inline Rat radial_bound_max_norm(const BoundaryMap& f) {
  return 2 * f.lipschitz() + 2 * f.sup_deviation(square_centre());
}

}  // namespace frechet
