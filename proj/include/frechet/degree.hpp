#pragma once

// Brouwer degree of PL planar maps over polygonal regions, computed twice:
// as a signed count of pieces covering a symbolically perturbed target, and
// as the winding number of the image of the region boundary.

#include "frechet/boundary.hpp"
#include "frechet/geometry.hpp"
#include "frechet/grid.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frechet {

class degree_undefined : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct Segment {
  Point2 a, b;
};

inline bool segments_properly_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

inline bool segments_touch(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  return segments_properly_cross(a, b, c, d) || on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
         on_segment(c, d, b);
}

/// Triangulates a simple counter-clockwise polygon by ear clipping.
inline std::vector<Polygon> ear_clip(Polygon poly) {
  std::vector<Polygon> out;
  // drop collinear vertices first; they would create zero-area ears
  bool changed = true;
  while (changed && poly.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& p = poly[(i + poly.size() - 1) % poly.size()];
      const auto& n = poly[(i + 1) % poly.size()];
      if (orient(p, poly[i], n) == 0) {
        poly.erase(poly.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  while (poly.size() > 3) {
    bool clipped = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& a = poly[(i + n - 1) % n];
      const Point2& b = poly[i];
      const Point2& c = poly[(i + 1) % n];
      if (orient(a, b, c) <= 0) continue;
      bool empty = true;
      for (std::size_t j = 0; j < n && empty; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        if (in_convex({a, b, c}, poly[j])) empty = false;
      }
      if (!empty) continue;
      out.push_back({a, b, c});
      poly.erase(poly.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw std::invalid_argument("polygon could not be triangulated (not simple?)");
  }
  if (has_area(poly)) out.push_back(poly);
  return out;
}

/// A bounded open region: a union of grid cells at some resolution, or the
/// interior of a simple rational polygon.
class Region {
public:
  using Cell = std::pair<std::size_t, std::size_t>;

  static Region cells(std::size_t res, std::vector<Cell> cs) {
    if (res == 0) throw std::invalid_argument("cell resolution must be positive");
    std::set<Cell> uniq;
    for (auto& c : cs) {
      if (c.first >= res || c.second >= res)
        throw std::invalid_argument("cell (" + std::to_string(c.first) + "," + std::to_string(c.second) +
                                    ") outside resolution " + std::to_string(res));
      uniq.insert(c);
    }
    if (uniq.empty()) throw std::invalid_argument("empty cell region");
    Region r;
    r.res_ = res;
    r.cells_.assign(uniq.begin(), uniq.end());
    GridTopology g(res);
    Rat kk(static_cast<unsigned long>(res));
    std::map<std::pair<std::size_t, std::size_t>, int> edges;  // directed vertex-index pairs
    for (auto [i, j] : r.cells_) {
      Polygon sq{g.point(i, j), g.point(i + 1, j), g.point(i + 1, j + 1), g.point(i, j + 1)};
      r.pieces_.push_back(sq);
      std::size_t v[4] = {g.index(i, j), g.index(i + 1, j), g.index(i + 1, j + 1), g.index(i, j + 1)};
      for (int e = 0; e < 4; ++e) {
        auto fwd = std::make_pair(v[e], v[(e + 1) % 4]);
        auto rev = std::make_pair(fwd.second, fwd.first);
        if (auto it = edges.find(rev); it != edges.end())
          edges.erase(it);
        else
          edges[fwd] = 1;
      }
    }
    for (auto& [e, _] : edges) r.boundary_.push_back({g.point(e.first), g.point(e.second)});
    return r;
  }

  static Region square() { return cells(1, {{0, 0}}); }

  static Region polygon(Polygon poly) {
    dedupe_ring(poly);
    if (poly.size() < 3) throw std::invalid_argument("polygon region needs at least 3 vertices");
    Rat area = signed_area2(poly);
    if (sgn(area) == 0) throw std::invalid_argument("polygon region has zero area");
    if (sgn(area) < 0) std::reverse(poly.begin(), poly.end());
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
        const Point2 &a = poly[i], &b = poly[(i + 1) % n], &c = poly[j], &d = poly[(j + 1) % n];
        if (adjacent) {
          // adjacent edges may only share their common vertex
          const Point2& shared = (j == i + 1) ? b : a;
          const Point2& far1 = (j == i + 1) ? a : b;
          const Point2& far2 = (j == i + 1) ? d : c;
          if (orient(far1, shared, far2) == 0 && sgn(Rat((far1 - shared).x * (far2 - shared).x +
                                                         (far1 - shared).y * (far2 - shared).y)) > 0)
            throw std::invalid_argument("polygon region is not simple");
          continue;
        }
        if (segments_touch(a, b, c, d)) throw std::invalid_argument("polygon region is not simple");
      }
    Region r;
    r.poly_ = poly;
    r.pieces_ = ear_clip(poly);
    for (std::size_t i = 0; i < n; ++i) r.boundary_.push_back({poly[i], poly[(i + 1) % n]});
    return r;
  }

  bool is_cells() const { return res_ != 0; }
  std::size_t resolution() const { return res_; }
  const std::vector<Cell>& cell_list() const { return cells_; }
  const Polygon& outline() const { return poly_; }

  /// Convex counter-clockwise pieces with disjoint interiors covering the closure.
  const std::vector<Polygon>& pieces() const { return pieces_; }
  /// Oriented boundary segments, region on the left.
  const std::vector<Segment>& boundary() const { return boundary_; }

  bool on_boundary(const Point2& p) const {
    for (const auto& s : boundary_)
      if (on_segment(s.a, s.b, p)) return true;
    return false;
  }
  bool contains_closed(const Point2& p) const {
    for (const auto& c : pieces_)
      if (in_convex(c, p)) return true;
    return false;
  }
  bool contains(const Point2& p) const { return contains_closed(p) && !on_boundary(p); }

  /// Two-sided max-norm distance: negative inside, positive outside, zero on
  /// the boundary.
  Rat signed_distance(const Point2& p) const {
    Rat d = -1;
    for (const auto& s : boundary_) {
      Rat e = dist_inf_segment(p, s.a, s.b);
      if (sgn(d) < 0 || e < d) d = e;
    }
    if (sgn(d) == 0) return d;
    return contains_closed(p) ? Rat(-d) : d;
  }

  BBox bbox() const {
    BBox b = bbox_of(pieces_.front());
    for (const auto& c : pieces_) {
      BBox o = bbox_of(c);
      b.xmin = rat_min(b.xmin, o.xmin);
      b.ymin = rat_min(b.ymin, o.ymin);
      b.xmax = rat_max(b.xmax, o.xmax);
      b.ymax = rat_max(b.ymax, o.ymax);
    }
    return b;
  }

private:
  Region() = default;
  std::size_t res_ = 0;
  std::vector<Cell> cells_;
  Polygon poly_;
  std::vector<Polygon> pieces_;
  std::vector<Segment> boundary_;
};

/// The PL map x -> c + r (f(b) - c) beyond the boundary, for x = c + r (b - c)
/// with r >= 1 and b on the boundary; truncated to [-margin, 1 + margin]^2.
inline std::vector<PLPiece> outer_cones(const BoundaryMap& f, const Rat& margin) {
  Point2 c = square_centre();
  Polygon box{{Rat(-margin), Rat(-margin)},
              {Rat(1 + margin), Rat(-margin)},
              {Rat(1 + margin), Rat(1 + margin)},
              {Rat(-margin), Rat(1 + margin)}};
  std::vector<PLPiece> out;
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 b0 = perimeter_point(f.params()[i]), b1 = perimeter_point(f.params()[(i + 1) % n]);
    Polygon cone = box;
    // left of c->b0, right of c->b1, right of b0->b1
    auto left_of = [](const Point2& a, const Point2& b) {
      Point2 d = b - a;
      return HalfPlane{Rat(d.y), Rat(-d.x), Rat(d.y * a.x - d.x * a.y)};
    };
    auto right_of = [&](const Point2& a, const Point2& b) { return left_of(b, a); };
    cone = clip(cone, left_of(c, b0));
    cone = clip(cone, right_of(c, b1));
    cone = clip(cone, right_of(b0, b1));
    if (!has_area(cone)) continue;
    out.push_back({cone, Affine2::from_triangles({c, b0, b1}, {c, f.values()[i], f.values()[(i + 1) % n]})});
  }
  return out;
}

/// A grid map as a PL map of the plane: its triangles inside the square and
/// the radial extension outside (down to a box of the given margin).
inline PLMap extended_map(const GridMap& f, const Rat& margin) {
  auto pieces = f.as_pl_map().pieces();
  if (sgn(margin) > 0) {
    auto outer = outer_cones(BoundaryMap::of(f), margin);
    pieces.insert(pieces.end(), outer.begin(), outer.end());
  }
  return PLMap(std::move(pieces));
}

/// A PL map on a resolution-k grid with arbitrary (unclamped) vertex images.
inline PLMap grid_pl_map(std::size_t k, const std::vector<Point2>& images) {
  GridTopology g(k);
  if (images.size() != g.vertex_count()) throw std::invalid_argument("wrong number of vertex images");
  std::vector<PLPiece> pieces;
  for (std::size_t t = 0; t < g.triangle_count(); ++t) {
    auto v = g.triangle(t);
    pieces.push_back({g.triangle_polygon(t), Affine2::from_triangles({g.point(v[0]), g.point(v[1]), g.point(v[2])},
                                                                      {images[v[0]], images[v[1]], images[v[2]]})});
  }
  return PLMap(std::move(pieces));
}

struct DegreeQuery {
  PLMap map;
  Region region;
  Point2 target;
};

/// Margin needed so the extended grid map covers the region.
inline Rat margin_for(const Region& r) {
  BBox b = r.bbox();
  Rat m = 0;
  m = rat_max(m, Rat(-b.xmin));
  m = rat_max(m, Rat(-b.ymin));
  m = rat_max(m, Rat(b.xmax - 1));
  m = rat_max(m, Rat(b.ymax - 1));
  return sgn(m) > 0 ? Rat(m + 1) : Rat(0);
}

inline DegreeQuery make_query(const GridMap& f, Region region, Point2 target) {
  Rat margin = margin_for(region);
  return {extended_map(f, margin), std::move(region), std::move(target)};
}

struct ImageSegment {
  Point2 a, b;    // domain subsegment
  Point2 fa, fb;  // its image
};

/// Parameter interval of the segment a->b inside a closed convex polygon.
inline std::optional<std::pair<Rat, Rat>> clip_segment(const Point2& a, const Point2& b, const Polygon& convex) {
  Rat lo = 0, hi = 1;
  const std::size_t n = convex.size();
  int dir = sgn(signed_area2(convex));
  if (dir == 0) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = convex[i];
    const Point2& q = convex[(i + 1) % n];
    // inside: dir * orient(p, q, x) >= 0, linear in the parameter
    Rat f0 = orient_value(p, q, a) * dir;
    Rat f1 = orient_value(p, q, b) * dir;
    Rat slope = f1 - f0;
    if (sgn(slope) == 0) {
      if (sgn(f0) < 0) return std::nullopt;
      continue;
    }
    Rat t = -f0 / slope;
    if (sgn(slope) > 0)
      lo = rat_max(lo, t);
    else
      hi = rat_min(hi, t);
    if (hi < lo) return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

/// Image of the region boundary, split where the boundary crosses pieces.
inline std::vector<ImageSegment> boundary_image(const PLMap& f, const Region& region) {
  std::vector<ImageSegment> out;
  for (const auto& s : region.boundary()) {
    std::vector<Rat> cuts{Rat(0), Rat(1)};
    for (const auto& p : f.pieces())
      if (auto iv = clip_segment(s.a, s.b, p.domain)) {
        cuts.push_back(iv->first);
        cuts.push_back(iv->second);
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      Point2 x0 = s.a + cuts[i] * (s.b - s.a), x1 = s.a + cuts[i + 1] * (s.b - s.a);
      Point2 mid = s.a + Rat((cuts[i] + cuts[i + 1]) / 2) * (s.b - s.a);
      const PLPiece* piece = nullptr;
      for (const auto& p : f.pieces())
        if (in_convex(p.domain, mid)) {
          piece = &p;
          break;
        }
      if (!piece) throw std::domain_error("region boundary leaves the domain of the PL map");
      out.push_back({x0, x1, piece->map(x0), piece->map(x1)});
    }
  }
  return out;
}

inline bool on_image_segment(const ImageSegment& s, const Point2& y) {
  if (s.fa == s.fb) return s.fa == y;
  return on_segment(s.fa, s.fb, y);
}

inline bool well_posed(const DegreeQuery& q) {
  for (const auto& s : boundary_image(q.map, q.region))
    if (on_image_segment(s, q.target)) return false;
  return true;
}

/// Crossing-number winding of a family of closed directed polylines
/// (given as segments) around y. y must not lie on any segment.
inline long winding_number_segments(const std::vector<std::pair<Point2, Point2>>& segs, const Point2& y) {
  long w = 0;
  for (const auto& [p, q] : segs) {
    if (p == q) {
      if (p == y) throw degree_undefined("point lies on the loop");
      continue;
    }
    if (on_segment(p, q, y)) throw degree_undefined("point lies on the loop");
    if (p.y <= y.y && y.y < q.y && orient(p, q, y) > 0) ++w;
    if (q.y <= y.y && y.y < p.y && orient(p, q, y) < 0) --w;
  }
  return w;
}

inline long winding_number(const BoundaryLoop& loop, const Point2& y) {
  std::vector<std::pair<Point2, Point2>> segs;
  const auto& pts = loop.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) segs.push_back({pts[i], pts[i + 1]});
  return winding_number_segments(segs, y);
}

struct DegreeWitness {
  Polygon domain;   // convex domain piece whose image contains the target
  Affine2 map;
  Point2 preimage;  // exact solution of f(x) = y inside the piece
};

struct DegreeResult {
  long value = 0;
  std::optional<DegreeWitness> witness;
};

/// Signed count of nondegenerate pieces (clipped to the region) whose image
/// contains the perturbed target y + (eps, eps^2).
inline long degree_triangle_sum(const DegreeQuery& q, std::optional<DegreeWitness>* witness = nullptr) {
  if (!well_posed(q)) throw degree_undefined("degree undefined: target on boundary image");
  long sum = 0;
  for (const auto& piece : q.map.pieces()) {
    int s = sgn(piece.map.det());
    if (s == 0) continue;
    BBox pb = bbox_of(piece.domain);
    for (const auto& r : q.region.pieces()) {
      if (!pb.overlaps(bbox_of(r))) continue;
      Polygon c = clip(piece.domain, r);
      if (!has_area(c)) continue;
      Polygon img;
      for (const auto& v : c) img.push_back(piece.map(v));
      if (!contains_perturbed(img, s, q.target)) continue;
      sum += s;
      if (witness && !*witness) {
        Point2 x = piece.map.inverse()(q.target);
        *witness = DegreeWitness{c, piece.map, x};
      }
    }
  }
  return sum;
}

/// Winding number of the image of the region boundary around the target.
inline long degree_winding(const DegreeQuery& q) {
  std::vector<std::pair<Point2, Point2>> segs;
  for (const auto& s : boundary_image(q.map, q.region)) segs.push_back({s.fa, s.fb});
  return winding_number_segments(segs, q.target);
}

/// Both algorithms, asserted equal. A nonzero result comes with a witness
/// piece and an exact preimage of the target.
inline DegreeResult degree(const DegreeQuery& q) {
  std::optional<DegreeWitness> w;
  long a = degree_triangle_sum(q, &w);
  long b = degree_winding(q);
  if (a != b)
    throw std::logic_error("degree mismatch: triangle sum " + std::to_string(a) + " vs winding " + std::to_string(b));
  DegreeResult r{a, std::nullopt};
  if (a != 0) r.witness = w;
  return r;
}

inline bool in_hull(const std::vector<Point2>& pts, const Point2& y) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j)
      for (std::size_t k = j; k < pts.size(); ++k)
        if (in_convex({pts[i], pts[j], pts[k]}, y)) return true;
  return false;
}

/// Whether y provably avoids h_t(boundary) for the straight-line homotopy
/// h_t = (1-t) f + t g between two PL maps on the same pieces. Each boundary
/// subsegment sweeps a bilinear patch, which lies in the convex hull of the
/// corners of any parameter sub-rectangle; rectangles whose hull contains y
/// are subdivided up to the given depth.
inline bool homotopy_avoids(const PLMap& f, const PLMap& g, const Region& region, const Point2& y, int depth = 8) {
  auto fi = boundary_image(f, region);
  auto gi = boundary_image(g, region);
  if (fi.size() != gi.size()) throw std::invalid_argument("homotopy endpoints must share their pieces");
  struct Rect {
    Rat s0, s1, t0, t1;
    int d;
  };
  for (std::size_t i = 0; i < fi.size(); ++i) {
    auto h = [&](const Rat& s, const Rat& t) {
      Point2 fs = fi[i].fa + s * (fi[i].fb - fi[i].fa);
      Point2 gs = gi[i].fa + s * (gi[i].fb - gi[i].fa);
      return fs + t * (gs - fs);
    };
    std::vector<Rect> stack{{Rat(0), Rat(1), Rat(0), Rat(1), 0}};
    while (!stack.empty()) {
      Rect r = stack.back();
      stack.pop_back();
      std::vector<Point2> corners{h(r.s0, r.t0), h(r.s1, r.t0), h(r.s0, r.t1), h(r.s1, r.t1)};
      if (!in_hull(corners, y)) continue;
      if (r.d >= depth) return false;
      Rat sm = (r.s0 + r.s1) / 2, tm = (r.t0 + r.t1) / 2;
      stack.push_back({r.s0, sm, r.t0, tm, r.d + 1});
      stack.push_back({sm, r.s1, r.t0, tm, r.d + 1});
      stack.push_back({r.s0, sm, tm, r.t1, r.d + 1});
      stack.push_back({sm, r.s1, tm, r.t1, r.d + 1});
    }
  }
  return true;
}

/// The PL map (1-t) f + t g on the common pieces of f and g.
inline PLMap blend(const PLMap& f, const PLMap& g, const Rat& t) {
  std::vector<PLPiece> out;
  Rat u = 1 - t;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const Affine2 &a = f.pieces()[i].map, &b = g.pieces()[i].map;
    Affine2 m;
    m.a11 = u * a.a11 + t * b.a11;
    m.a12 = u * a.a12 + t * b.a12;
    m.a21 = u * a.a21 + t * b.a21;
    m.a22 = u * a.a22 + t * b.a22;
    m.b1 = u * a.b1 + t * b.b1;
    m.b2 = u * a.b2 + t * b.b2;
    out.push_back({f.pieces()[i].domain, m});
  }
  return PLMap(std::move(out));
}

}  // namespace frechet
