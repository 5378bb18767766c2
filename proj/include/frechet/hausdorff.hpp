#pragma once

#include "frechet/enclosure.hpp"
#include "frechet/grid.hpp"
#include "frechet/metric.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace frechet {

/// Affine triangle a + s*u + t*v (s, t >= 0, s + t <= 1) in R^D, kept both
/// exactly and in doubles.
struct AffineTriangle {
  Vec a, u, v;
  std::vector<double> ad, ud, vd;
};

inline std::vector<AffineTriangle> image_triangles(const GridSurface& s) {
  std::vector<AffineTriangle> out;
  const auto& g = s.topology();
  for (std::size_t t = 0; t < g.triangle_count(); ++t) {
    auto idx = g.triangle(t);
    const Vec& p0 = s.samples()[idx[0]];
    AffineTriangle tri{p0, vec_sub(s.samples()[idx[1]], p0), vec_sub(s.samples()[idx[2]], p0), {}, {}, {}};
    for (std::size_t i = 0; i < p0.size(); ++i) {
      tri.ad.push_back(tri.a[i].get_d());
      tri.ud.push_back(tri.u[i].get_d());
      tri.vd.push_back(tri.v[i].get_d());
    }
    out.push_back(std::move(tri));
  }
  return out;
}

namespace detail {

// Candidate minimisers of max_i |r_i(s,t)| over the reference triangle, where
// r_i = c_i - s*u_i - t*v_i: vertices of the arrangement of the lines
// r_i = 0 and r_i = +-r_j inside the triangle.
template <class T, class Emit>
void max_norm_candidates(const std::vector<T>& c, const std::vector<T>& u, const std::vector<T>& v, Emit&& emit) {
  // each line: alpha*s + beta*t = gamma
  struct L {
    T alpha, beta, gamma;
  };
  std::vector<L> lines;
  std::size_t d = c.size();
  for (std::size_t i = 0; i < d; ++i) {
    lines.push_back({u[i], v[i], c[i]});
    for (std::size_t j = i + 1; j < d; ++j) {
      lines.push_back({T(u[i] - u[j]), T(v[i] - v[j]), T(c[i] - c[j])});
      lines.push_back({T(u[i] + u[j]), T(v[i] + v[j]), T(c[i] + c[j])});
    }
  }
  // triangle edges: s = 0, t = 0, s + t = 1
  std::array<L, 3> edges{L{T(1), T(0), T(0)}, L{T(0), T(1), T(0)}, L{T(1), T(1), T(1)}};
  auto inside = [](const T& s, const T& t) { return s >= 0 && t >= 0 && s + t <= 1; };
  auto meet = [&](const L& p, const L& q) {
    T det = p.alpha * q.beta - p.beta * q.alpha;
    if (det == 0) return;
    T s = (p.gamma * q.beta - p.beta * q.gamma) / det;
    T t = (p.alpha * q.gamma - p.gamma * q.alpha) / det;
    if (inside(s, t)) emit(s, t);
  };
  emit(T(0), T(0));
  emit(T(1), T(0));
  emit(T(0), T(1));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (const auto& e : edges) meet(lines[i], e);
    for (std::size_t j = i + 1; j < lines.size(); ++j) meet(lines[i], lines[j]);
  }
}

template <class T>
T residual_max(const std::vector<T>& c, const std::vector<T>& u, const std::vector<T>& v, const T& s, const T& t) {
  T best = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    T r = c[i] - s * u[i] - t * v[i];
    if (r < 0) r = -r;
    if (best < r) best = r;
  }
  return best;
}

template <class T>
T residual_sq(const std::vector<T>& c, const std::vector<T>& u, const std::vector<T>& v, const T& s, const T& t) {
  T sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    T r = c[i] - s * u[i] - t * v[i];
    sum += r * r;
  }
  return sum;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Minimiser of |c - s*u - t*v|^2 over the reference triangle.
template <class T>
std::pair<T, T> euclid_argmin(const std::vector<T>& c, const std::vector<T>& u, const std::vector<T>& v) {
  T uu = dot(u, u), uv = dot(u, v), vv = dot(v, v), cu = dot(c, u), cv = dot(c, v);
  T det = uu * vv - uv * uv;
  if (det > 0) {
    T s = (cu * vv - cv * uv) / det, t = (uu * cv - uv * cu) / det;
    if (s >= 0 && t >= 0 && s + t <= 1) return {s, t};
  }
  auto clamp01 = [](T x) { return x < 0 ? T(0) : (x > 1 ? T(1) : x); };
  std::vector<std::pair<T, T>> cand;
  cand.push_back({uu > 0 ? clamp01(T(cu / uu)) : T(0), T(0)});
  cand.push_back({T(0), vv > 0 ? clamp01(T(cv / vv)) : T(0)});
  // edge s + t = 1: point u + w (v - u)
  std::vector<T> w(c.size()), cw(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    w[i] = v[i] - u[i];
    cw[i] = c[i] - u[i];
  }
  T ww = dot(w, w);
  T lam = ww > 0 ? clamp01(T(dot(cw, w) / ww)) : T(0);
  cand.push_back({T(1 - lam), lam});
  auto best = cand[0];
  T bv = residual_sq(c, u, v, best.first, best.second);
  for (std::size_t i = 1; i < cand.size(); ++i) {
    T val = residual_sq(c, u, v, cand[i].first, cand[i].second);
    if (val < bv) {
      bv = val;
      best = cand[i];
    }
  }
  return best;
}

inline Vec diff(const Vec& q, const Vec& a) { return vec_sub(q, a); }

}  // namespace detail

/// Exact max-norm distance from q to an affine triangle.
inline Rat triangle_distance_max(const Vec& q, const AffineTriangle& tri) {
  Vec c = detail::diff(q, tri.a);
  Rat best = -1;
  detail::max_norm_candidates<Rat>(c, tri.u, tri.v, [&](const Rat& s, const Rat& t) {
    Rat r = detail::residual_max(c, tri.u, tri.v, s, t);
    if (sgn(best) < 0 || r < best) best = r;
  });
  return best;
}

/// Exact squared Euclidean distance from q to an affine triangle.
inline Rat triangle_distance_sq(const Vec& q, const AffineTriangle& tri) {
  Vec c = detail::diff(q, tri.a);
  auto [s, t] = detail::euclid_argmin<Rat>(c, tri.u, tri.v);
  return detail::residual_sq(c, tri.u, tri.v, s, t);
}

/// Distance from a point to a union of triangles, as an exact value for max
/// norms and as a squared value for Euclidean spaces.
inline Rat complex_distance(const Vec& q, const std::vector<AffineTriangle>& tris, bool euclid) {
  Rat best = -1;
  for (const auto& tri : tris) {
    Rat d = euclid ? triangle_distance_sq(q, tri) : triangle_distance_max(q, tri);
    if (sgn(best) < 0 || d < best) best = d;
  }
  return best;
}

namespace detail {

// Rational point of the triangle near its double-precision nearest point to
// q; its exact distance is an upper bound for the distance from q to the
// triangle.
inline Rat triangle_upper(const Vec& q, const std::vector<double>& qd, const AffineTriangle& tri, bool euclid,
                          double* estimate) {
  std::vector<double> c(qd.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = qd[i] - tri.ad[i];
  double local = std::numeric_limits<double>::infinity(), bs = 0, bt = 0;
  if (euclid) {
    auto [s, t] = euclid_argmin<double>(c, tri.ud, tri.vd);
    local = residual_sq(c, tri.ud, tri.vd, s, t);
    bs = s;
    bt = t;
  } else {
    max_norm_candidates<double>(c, tri.ud, tri.vd, [&](double s, double t) {
      double r = residual_max(c, tri.ud, tri.vd, s, t);
      if (r < local) {
        local = r;
        bs = s;
        bt = t;
      }
    });
  }
  if (estimate) *estimate = local;
  Rat s = from_double(std::max(bs, 0.0)), t = from_double(std::max(bt, 0.0));
  if (s + t > 1) {
    Rat sum = s + t;
    s /= sum;
    t /= sum;
  }
  Vec cq = diff(q, tri.a);
  return euclid ? residual_sq(cq, tri.u, tri.v, s, t) : residual_max(cq, tri.u, tri.v, s, t);
}

inline std::vector<double> to_doubles(const Vec& q) {
  std::vector<double> qd;
  for (const auto& x : q) qd.push_back(x.get_d());
  return qd;
}

// Index of the triangle nearest to q in double precision.
inline std::size_t nearest_triangle(const std::vector<double>& qd, const std::vector<AffineTriangle>& tris,
                                    bool euclid, double* estimate) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t k = 0; k < tris.size(); ++k) {
    const auto& tri = tris[k];
    std::vector<double> c(qd.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = qd[i] - tri.ad[i];
    double local = std::numeric_limits<double>::infinity();
    if (euclid) {
      auto [s, t] = euclid_argmin<double>(c, tri.ud, tri.vd);
      local = residual_sq(c, tri.ud, tri.vd, s, t);
    } else {
      max_norm_candidates<double>(c, tri.ud, tri.vd, [&](double s, double t) {
        local = std::min(local, residual_max(c, tri.ud, tri.vd, s, t));
      });
    }
    if (local < best) {
      best = local;
      arg = k;
    }
  }
  if (estimate) *estimate = euclid ? std::sqrt(std::max(best, 0.0)) : best;
  return arg;
}

}  // namespace detail

struct DirectedResult {
  Enclosure value;
  Point2 witness;  // domain point of the source attaining the lower bound
  std::size_t cells = 0;
  bool converged = true;
};

/// Enclosure of sup over x in D^2 of dist(src(x), Im dst) by quadtree branch
/// and bound on the domain of src.
inline DirectedResult directed_hausdorff(const GridSurface& src, const GridSurface& dst, const Rat& tol,
                                         std::size_t max_cells = 400000) {
  if (src.space().is_table() || dst.space().is_table())
    throw std::invalid_argument("hausdorff distance needs a max-norm or Euclidean codomain");
  if (!src.space().same_as(dst.space())) throw std::invalid_argument("surfaces live in different spaces");
  if (sgn(tol) <= 0) throw std::invalid_argument("tolerance must be positive");
  bool euclid = src.space().is_euclidean();
  auto tris = image_triangles(dst);
  Rat L = lipschitz_constant(src);

  struct Cell {
    Rat key;  // upper bound of the distance over the cell
    Point2 centre;
    Rat half;
    double estimate;
  };
  auto cmp = [](const Cell& a, const Cell& b) { return a.key < b.key; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);

  Rat eps_sqrt = tol / 8;
  auto root = [&](const Rat& d) { return euclid ? sqrt_to_precision(d, eps_sqrt).upper() : d; };
  auto point_exact_lower = [&](const Point2& p) {
    Rat d = complex_distance(src.eval(p), tris, euclid);
    return euclid ? sqrt_to_precision(d, eps_sqrt).lower() : d;
  };
  auto src_lines = src.topology().lines();

  // Two upper bounds over a cell: the centre value plus L*h, and the largest
  // distance from the cell's pieces (where src is affine) to the triangle
  // nearest the centre, which is convex on each piece.
  auto push = [&](const Point2& c, const Rat& h) {
    double est = 0;
    Vec qc = src.eval(c);
    auto qcd = detail::to_doubles(qc);
    std::size_t near = detail::nearest_triangle(qcd, tris, euclid, &est);
    Rat key = root(detail::triangle_upper(qc, qcd, tris[near], euclid, nullptr)) + L * h;
    Polygon cell{{Rat(c.x - h), Rat(c.y - h)}, {Rat(c.x + h), Rat(c.y - h)}, {Rat(c.x + h), Rat(c.y + h)},
                 {Rat(c.x - h), Rat(c.y + h)}};
    std::vector<Line> cutting;
    for (const auto& l : src_lines)
      if (cuts(cell, l)) cutting.push_back(l);
    std::vector<Point2> verts;
    for (const auto& piece : refine(cell, cutting)) verts.insert(verts.end(), piece.begin(), piece.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    Rat hull = 0;
    for (const auto& v : verts) {
      Vec q = src.eval(v);
      hull = rat_max(hull, detail::triangle_upper(q, detail::to_doubles(q), tris[near], euclid, nullptr));
      if (key <= root(hull)) break;
    }
    key = rat_min(key, root(hull));
    queue.push(Cell{key, c, h, est});
  };
  push({Rat(1, 2), Rat(1, 2)}, Rat(1, 2));

  DirectedResult res;
  Rat lower = 0;
  Point2 best_pt{Rat(1, 2), Rat(1, 2)};
  double best_est = -1;
  Point2 pending = best_pt;
  bool pending_dirty = true;
  std::size_t cells = 1;
  // The corners are cheap and often extremal.
  for (const auto& c : {Point2{Rat(0), Rat(0)}, Point2{Rat(1), Rat(0)}, Point2{Rat(0), Rat(1)}, Point2{Rat(1), Rat(1)}}) {
    Rat v = point_exact_lower(c);
    if (lower < v) {
      lower = v;
      best_pt = c;
    }
  }
  while (true) {
    const Cell& top = queue.top();
    if (top.estimate > best_est) {
      best_est = top.estimate;
      pending = top.centre;
      pending_dirty = true;
    }
    Rat gap = top.key - lower;
    if (gap <= tol || cells >= max_cells) {
      if (pending_dirty) {
        Rat v = point_exact_lower(pending);
        pending_dirty = false;
        if (lower < v) {
          lower = v;
          best_pt = pending;
          continue;
        }
      }
      res.converged = gap <= tol;
      res.value = Enclosure(lower, rat_max(lower, top.key));
      res.witness = best_pt;
      res.cells = cells;
      return res;
    }
    if (double(top.key.get_d()) - best_est <= tol.get_d() / 2 && pending_dirty) {
      Rat v = point_exact_lower(pending);
      pending_dirty = false;
      if (lower < v) {
        lower = v;
        best_pt = pending;
      }
      continue;
    }
    Cell c = top;
    queue.pop();
    Rat h = c.half / 2;
    for (int dx = -1; dx <= 1; dx += 2)
      for (int dy = -1; dy <= 1; dy += 2) push({Rat(c.centre.x + dx * h), Rat(c.centre.y + dy * h)}, h);
    cells += 4;
  }
}

/// Enclosure of the Hausdorff distance between the image complexes of two
/// surfaces.
inline Enclosure hausdorff_images(const GridSurface& a, const GridSurface& b, const Rat& tol) {
  auto ab = directed_hausdorff(a, b, tol);
  auto ba = directed_hausdorff(b, a, tol);
  return Enclosure(rat_max(ab.value.lower(), ba.value.lower()), rat_max(ab.value.upper(), ba.value.upper()));
}

/// The graph x -> (x, f(x)) of a grid map as a surface in max-norm R^4.
inline GridSurface graph_surface(const GridMap& f) {
  std::vector<Vec> s;
  for (std::size_t v = 0; v < f.topology().vertex_count(); ++v) {
    Point2 x = f.topology().point(v);
    const Point2& y = f.image(v);
    s.push_back({x.x, x.y, y.x, y.y});
  }
  return GridSurface(MetricSpace::max_norm(4), f.k(), std::move(s));
}

/// Enclosure of the Hausdorff distance between the graphs of two maps under
/// the product max metric; the upper side never exceeds the sup distance.
inline Enclosure graph_distance(const GridMap& f, const GridMap& g, const Rat& precision) {
  if (sgn(precision) <= 0) throw std::invalid_argument("precision must be positive");
  Rat sup = sup_distance(f, g);
  if (sup <= precision) return Enclosure(Rat(0), sup);
  auto e = hausdorff_images(graph_surface(f), graph_surface(g), precision);
  return Enclosure(e.lower(), rat_min(e.upper(), sup));
}

}  // namespace frechet
