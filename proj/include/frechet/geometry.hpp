#pragma once

// Exact planar predicates and convex-polygon clipping over rationals.

#include "frechet/rational.hpp"

#include <array>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace frechet {

struct Point2 {
  Rat x, y;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
  friend bool operator<(const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
  friend Point2 operator+(const Point2& a, const Point2& b) { return {Rat(a.x + b.x), Rat(a.y + b.y)}; }
  friend Point2 operator-(const Point2& a, const Point2& b) { return {Rat(a.x - b.x), Rat(a.y - b.y)}; }
  friend Point2 operator*(const Rat& s, const Point2& a) { return {Rat(s * a.x), Rat(s * a.y)}; }
  friend std::ostream& operator<<(std::ostream& os, const Point2& p) { return os << "(" << p.x << "," << p.y << ")"; }
};

inline Rat cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline Rat orient_value(const Point2& a, const Point2& b, const Point2& c) { return cross(b - a, c - a); }
inline int orient(const Point2& a, const Point2& b, const Point2& c) { return sgn(orient_value(a, b, c)); }

/// Orientation of (a, b, y + (eps, eps^2)) for a formal infinitesimal eps.
/// Zero only when a == b.
inline int orient_perturbed(const Point2& a, const Point2& b, const Point2& y) {
  int s = orient(a, b, y);
  if (s != 0) return s;
  int dy = sgn(Rat(b.y - a.y));
  if (dy != 0) return -dy;
  return sgn(Rat(b.x - a.x));
}

inline Rat norm_inf(const Point2& p) { return rat_max(rat_abs(p.x), rat_abs(p.y)); }
inline Rat dist_inf(const Point2& a, const Point2& b) { return norm_inf(a - b); }

/// Closed-segment membership.
inline bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  if (orient(a, b, p) != 0) return false;
  return rat_min(a.x, b.x) <= p.x && p.x <= rat_max(a.x, b.x) && rat_min(a.y, b.y) <= p.y &&
         p.y <= rat_max(a.y, b.y);
}

/// x -> M x + t.
struct Affine2 {
  Rat a11 = 1, a12 = 0, a21 = 0, a22 = 1, b1 = 0, b2 = 0;

  Point2 operator()(const Point2& p) const {
    return {Rat(a11 * p.x + a12 * p.y + b1), Rat(a21 * p.x + a22 * p.y + b2)};
  }
  Rat det() const { return a11 * a22 - a12 * a21; }
  /// Max-norm operator norm of the linear part (largest absolute row sum).
  Rat op_norm_inf() const { return rat_max(Rat(rat_abs(a11) + rat_abs(a12)), Rat(rat_abs(a21) + rat_abs(a22))); }

  /// Inverse map; requires det != 0.
  Affine2 inverse() const {
    Rat d = det();
    Affine2 r;
    r.a11 = a22 / d;
    r.a12 = -a12 / d;
    r.a21 = -a21 / d;
    r.a22 = a11 / d;
    r.b1 = -(r.a11 * b1 + r.a12 * b2);
    r.b2 = -(r.a21 * b1 + r.a22 * b2);
    return r;
  }

  /// Unique affine map sending p_i to q_i; the p_i must not be collinear.
  static Affine2 from_triangles(const std::array<Point2, 3>& p, const std::array<Point2, 3>& q) {
    Point2 u = p[1] - p[0], v = p[2] - p[0];
    Point2 qu = q[1] - q[0], qv = q[2] - q[0];
    Rat d = cross(u, v);
    // Solve M [u v] = [qu qv].
    Affine2 m;
    m.a11 = (qu.x * v.y - qv.x * u.y) / d;
    m.a12 = (qv.x * u.x - qu.x * v.x) / d;
    m.a21 = (qu.y * v.y - qv.y * u.y) / d;
    m.a22 = (qv.y * u.x - qu.y * v.x) / d;
    m.b1 = q[0].x - (m.a11 * p[0].x + m.a12 * p[0].y);
    m.b2 = q[0].y - (m.a21 * p[0].x + m.a22 * p[0].y);
    return m;
  }
};

/// The closed half-plane a*x + b*y <= c.
struct HalfPlane {
  Rat a, b, c;
  Rat eval(const Point2& p) const { return a * p.x + b * p.y - c; }
};

/// A convex polygon listed counter-clockwise without repeated vertices.
/// May degenerate to a segment or point after clipping.
using Polygon = std::vector<Point2>;

inline void dedupe_ring(Polygon& poly) {
  Polygon out;
  for (const auto& p : poly)
    if (out.empty() || out.back() != p) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  poly = std::move(out);
}

/// Sutherland-Hodgman clip of a convex polygon to a closed half-plane.
inline Polygon clip(const Polygon& poly, const HalfPlane& h) {
  Polygon out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  if (n == 1) {
    if (sgn(h.eval(poly[0])) <= 0) out.push_back(poly[0]);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& cur = poly[i];
    const Point2& nxt = poly[(i + 1) % n];
    Rat fc = h.eval(cur), fn = h.eval(nxt);
    bool cin = sgn(fc) <= 0, nin = sgn(fn) <= 0;
    if (cin) out.push_back(cur);
    if ((sgn(fc) < 0 && sgn(fn) > 0) || (sgn(fc) > 0 && sgn(fn) < 0)) {
      Rat t = fc / (fc - fn);
      out.push_back(cur + t * (nxt - cur));
    }
    (void)nin;
  }
  dedupe_ring(out);
  return out;
}

inline Polygon clip(const Polygon& poly, const Polygon& convex) {
  Polygon out = poly;
  const std::size_t n = convex.size();
  for (std::size_t i = 0; i < n && !out.empty(); ++i) {
    const Point2& a = convex[i];
    const Point2& b = convex[(i + 1) % n];
    // inside = left of a->b : orient(a,b,p) >= 0  <=>  -(cross(b-a, p-a)) <= 0
    Point2 d = b - a;
    HalfPlane h{Rat(d.y), Rat(-d.x), Rat(d.y * a.x - d.x * a.y)};
    out = clip(out, h);
  }
  return out;
}

inline Rat signed_area2(const Polygon& poly) {
  Rat s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return s;
}

inline bool has_area(const Polygon& poly) { return poly.size() >= 3 && sgn(signed_area2(poly)) != 0; }

/// Closed membership in a convex polygon (any orientation, possibly degenerate).
inline bool in_convex(const Polygon& poly, const Point2& p) {
  const std::size_t n = poly.size();
  if (n == 0) return false;
  if (n == 1) return poly[0] == p;
  if (n == 2 || sgn(signed_area2(poly)) == 0) {
    for (std::size_t i = 0; i < n; ++i)
      if (on_segment(poly[i], poly[(i + 1) % n], p)) return true;
    return false;
  }
  int dir = sgn(signed_area2(poly));
  for (std::size_t i = 0; i < n; ++i)
    if (orient(poly[i], poly[(i + 1) % n], p) * dir < 0) return false;
  return true;
}

/// Whether y + (eps, eps^2) lies strictly inside the convex polygon whose
/// orientation sign is `dir` (nonzero).
inline bool contains_perturbed(const Polygon& poly, int dir, const Point2& y) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if (a == b) continue;
    if (orient_perturbed(a, b, y) != dir) return false;
  }
  return true;
}

/// Max-norm distance from p to the closed segment [a, b].
inline Rat dist_inf_segment(const Point2& p, const Point2& a, const Point2& b) {
  Point2 d = b - a;
  Point2 w = a - p;
  // g(s) = max(|w.x + s d.x|, |w.y + s d.y|) is convex piecewise linear; its
  // minimum over [0,1] is at an endpoint or a breakpoint.
  std::vector<Rat> cand{Rat(0), Rat(1)};
  if (sgn(d.x) != 0) cand.push_back(Rat(-w.x / d.x));
  if (sgn(d.y) != 0) cand.push_back(Rat(-w.y / d.y));
  if (d.x != d.y) cand.push_back(Rat((w.y - w.x) / (d.x - d.y)));
  if (d.x != -d.y) cand.push_back(Rat(-(w.x + w.y) / (d.x + d.y)));
  Rat best = -1;
  for (auto& s : cand) {
    if (sgn(s) < 0 || s > 1) continue;
    Rat v = rat_max(rat_abs(Rat(w.x + s * d.x)), rat_abs(Rat(w.y + s * d.y)));
    if (sgn(best) < 0 || v < best) best = v;
  }
  return best;
}

/// Max-norm distance from p to a closed convex polygon.
inline Rat dist_inf_convex(const Polygon& poly, const Point2& p) {
  if (in_convex(poly, p)) return 0;
  if (poly.size() == 1) return dist_inf(poly[0], p);
  Rat best = -1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Rat d = dist_inf_segment(p, poly[i], poly[(i + 1) % poly.size()]);
    if (sgn(best) < 0 || d < best) best = d;
  }
  return best;
}

struct BBox {
  Rat xmin, ymin, xmax, ymax;
  bool overlaps(const BBox& o) const { return !(xmax < o.xmin || o.xmax < xmin || ymax < o.ymin || o.ymax < ymin); }
};

inline BBox bbox_of(const Polygon& poly) {
  BBox b{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
  for (const auto& p : poly) {
    if (p.x < b.xmin) b.xmin = p.x;
    if (p.y < b.ymin) b.ymin = p.y;
    if (b.xmax < p.x) b.xmax = p.x;
    if (b.ymax < p.y) b.ymax = p.y;
  }
  return b;
}

inline Polygon unit_square() { return {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}}; }

inline bool in_unit_square(const Point2& p) {
  return sgn(p.x) >= 0 && p.x <= 1 && sgn(p.y) >= 0 && p.y <= 1;
}
inline bool on_unit_boundary(const Point2& p) {
  return in_unit_square(p) && (sgn(p.x) == 0 || p.x == 1 || sgn(p.y) == 0 || p.y == 1);
}

/// Splits a convex polygon by the line a*x + b*y = c into its closed
/// sub-polygons with positive area; pieces of zero area are dropped.
inline std::vector<Polygon> split_by_line(const Polygon& poly, const Rat& a, const Rat& b, const Rat& c) {
  std::vector<Polygon> out;
  Polygon lo = clip(poly, HalfPlane{a, b, c});
  Polygon hi = clip(poly, HalfPlane{Rat(-a), Rat(-b), Rat(-c)});
  if (has_area(lo)) out.push_back(std::move(lo));
  if (has_area(hi)) out.push_back(std::move(hi));
  return out;
}

/// A line a*x + b*y = c.
struct Line {
  Rat a, b, c;
};

/// Whether the line passes strictly through the interior of the polygon.
inline bool cuts(const Polygon& poly, const Line& l) {
  bool neg = false, pos = false;
  for (const auto& p : poly) {
    int s = sgn(Rat(l.a * p.x + l.b * p.y - l.c));
    if (s < 0) neg = true;
    if (s > 0) pos = true;
  }
  return neg && pos;
}

/// Refines a convex polygon into the cells of the arrangement of `lines`.
inline std::vector<Polygon> refine(const Polygon& poly, const std::vector<Line>& lines) {
  std::vector<Polygon> cells{poly};
  for (const auto& l : lines) {
    if (sgn(l.a) == 0 && sgn(l.b) == 0) continue;
    std::vector<Polygon> next;
    next.reserve(cells.size() + 2);
    for (auto& c : cells) {
      if (!cuts(c, l)) {
        next.push_back(std::move(c));
        continue;
      }
      for (auto& piece : split_by_line(c, l.a, l.b, l.c)) next.push_back(std::move(piece));
    }
    cells = std::move(next);
  }
  return cells;
}

inline Point2 centroid(const Polygon& poly) {
  Rat sx = 0, sy = 0;
  for (const auto& p : poly) {
    sx += p.x;
    sy += p.y;
  }
  Rat n(static_cast<unsigned long>(poly.size()));
  return {Rat(sx / n), Rat(sy / n)};
}

}  // namespace frechet
