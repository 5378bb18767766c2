#pragma once

// Brute-force reference computations used only by the tests. They avoid the
// library's overlay, LP and free-space machinery on purpose.

#include "frechet/grid.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>

namespace oracle {

using frechet::GridMap;
using frechet::Point2;
using frechet::Rat;

inline Rat random_rat(std::mt19937_64& rng, long den) {
  std::uniform_int_distribution<long> d(0, den);
  return frechet::make_rat(d(rng), den);
}
inline Rat random_sign_rat(std::mt19937_64& rng, long den = 64) {
  std::uniform_int_distribution<long> d(-den, den);
  return frechet::make_rat(d(rng), den);
}
inline Point2 random_point(std::mt19937_64& rng, long den) { return {random_rat(rng, den), random_rat(rng, den)}; }

inline GridMap random_grid_map(std::mt19937_64& rng, std::size_t k, long den) {
  std::vector<Point2> im;
  for (std::size_t v = 0; v < (k + 1) * (k + 1); ++v) im.push_back(random_point(rng, den));
  return GridMap(k, std::move(im));
}

/// Largest difference quotient over neighbouring points of the n-grid in
/// the directions (1,0), (0,1), (1,1), (1,-1).
template <class F>
Rat sampled_lipschitz_fn(const F& f, long n) {
  Rat best = 0;
  const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= n; ++j)
      for (auto& d : dirs) {
        long i2 = i + d[0], j2 = j + d[1];
        if (i2 < 0 || i2 > n || j2 < 0 || j2 > n) continue;
        Point2 x{frechet::make_rat(i, n), frechet::make_rat(j, n)};
        Point2 y{frechet::make_rat(i2, n), frechet::make_rat(j2, n)};
        best = frechet::rat_max(best, Rat(frechet::dist_inf(f(x), f(y)) / frechet::dist_inf(x, y)));
      }
  return best;
}

inline Rat sampled_lipschitz(const GridMap& f, long n) {
  return sampled_lipschitz_fn([&](const Point2& p) { return f.eval(p); }, n);
}

inline Rat sampled_sup_distance(const GridMap& a, const GridMap& b, long n) {
  Rat best = 0;
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= n; ++j) {
      Point2 x{frechet::make_rat(i, n), frechet::make_rat(j, n)};
      best = frechet::rat_max(best, frechet::dist_inf(a.eval(x), b.eval(x)));
    }
  return best;
}

}  // namespace oracle

namespace oracle {

/// Winding number by summing signed quarter turns between quadrants of
/// consecutive points relative to y; y must not lie on the loop.
inline long quadrant_winding(const std::vector<Point2>& loop, const Point2& y) {
  auto quad = [&](const Point2& p) {
    Rat dx = p.x - y.x, dy = p.y - y.y;
    if (sgn(dx) > 0 && sgn(dy) >= 0) return 0;
    if (sgn(dx) <= 0 && sgn(dy) > 0) return 1;
    if (sgn(dx) < 0 && sgn(dy) <= 0) return 2;
    return 3;
  };
  long quarters = 0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    int a = quad(loop[i]), b = quad(loop[i + 1]);
    int d = ((b - a) % 4 + 4) % 4;
    if (d == 1) quarters += 1;
    if (d == 3) quarters -= 1;
    if (d == 2) {
      // opposite quadrants: the side of y decides the direction
      int o = frechet::orient(loop[i], loop[i + 1], y);
      quarters += o > 0 ? 2 : -2;
    }
  }
  return quarters / 4;
}

/// Closed image polyline of the boundary of a cell region, sampled at the
/// given mesh, evaluated through f.
template <class F>
std::vector<std::vector<Point2>> cell_boundary_images(std::size_t res, const std::vector<std::pair<std::size_t, std::size_t>>& cells,
                                                      long mesh, const F& f) {
  // directed boundary edges of the union, then each edge is sampled on its own
  std::vector<std::vector<Point2>> out;
  auto has = [&](long i, long j) {
    for (auto& c : cells)
      if (static_cast<long>(c.first) == i && static_cast<long>(c.second) == j) return true;
    return false;
  };
  long r = static_cast<long>(res);
  auto pt = [&](long i, long j) { return Point2{frechet::make_rat(i, r), frechet::make_rat(j, r)}; };
  for (auto& c : cells) {
    long i = static_cast<long>(c.first), j = static_cast<long>(c.second);
    std::vector<std::pair<Point2, Point2>> edges;
    if (!has(i, j - 1)) edges.push_back({pt(i, j), pt(i + 1, j)});
    if (!has(i + 1, j)) edges.push_back({pt(i + 1, j), pt(i + 1, j + 1)});
    if (!has(i, j + 1)) edges.push_back({pt(i + 1, j + 1), pt(i, j + 1)});
    if (!has(i - 1, j)) edges.push_back({pt(i, j + 1), pt(i, j)});
    for (auto& [a, b] : edges) {
      std::vector<Point2> poly;
      for (long s = 0; s <= mesh; ++s) poly.push_back(f(a + frechet::make_rat(s, mesh) * (b - a)));
      out.push_back(poly);
    }
  }
  return out;
}

/// Winding of a family of open polylines that together form closed loops:
/// the sum of signed angle quarters is a multiple of 4 only for the union,
/// so the pieces are chained through y-relative quadrant counting.
inline long family_winding(const std::vector<std::vector<Point2>>& pieces, const Point2& y) {
  auto quad = [&](const Point2& p) {
    Rat dx = p.x - y.x, dy = p.y - y.y;
    if (sgn(dx) > 0 && sgn(dy) >= 0) return 0;
    if (sgn(dx) <= 0 && sgn(dy) > 0) return 1;
    if (sgn(dx) < 0 && sgn(dy) <= 0) return 2;
    return 3;
  };
  long quarters = 0;
  for (auto& poly : pieces)
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      int a = quad(poly[i]), b = quad(poly[i + 1]);
      int d = ((b - a) % 4 + 4) % 4;
      if (d == 1) quarters += 1;
      if (d == 3) quarters -= 1;
      if (d == 2) quarters += frechet::orient(poly[i], poly[i + 1], y) > 0 ? 2 : -2;
    }
  return quarters / 4;
}

}  // namespace oracle

namespace oracle {

/// Exhaustive product over all lattice images with spacing 1/inv, filtered
/// by the net conditions written out independently of the enumerator.
inline std::set<GridMap> brute_force_net(std::size_t k, long inv) {
  std::vector<Point2> lattice;
  for (long i = 0; i <= inv; ++i)
    for (long j = 0; j <= inv; ++j) lattice.push_back({frechet::make_rat(i, inv), frechet::make_rat(j, inv)});
  auto on_bd = [](const Point2& p) { return sgn(p.x) == 0 || sgn(p.y) == 0 || p.x == 1 || p.y == 1; };
  auto param = [](const Point2& p) -> Rat {
    if (sgn(p.y) == 0) return p.x;
    if (p.x == 1) return 1 + p.y;
    if (p.y == 1) return 3 - p.x;
    return 4 - p.y;
  };
  auto common = [](const Point2& p, const Point2& q) {
    return (sgn(p.x) == 0 && sgn(q.x) == 0) || (p.x == 1 && q.x == 1) || (sgn(p.y) == 0 && sgn(q.y) == 0) ||
           (p.y == 1 && q.y == 1);
  };
  std::size_t n = (k + 1) * (k + 1);
  std::vector<std::size_t> cyc;
  for (std::size_t i = 0; i < k; ++i) cyc.push_back(i);
  for (std::size_t j = 0; j < k; ++j) cyc.push_back(j * (k + 1) + k);
  for (std::size_t i = k; i > 0; --i) cyc.push_back(k * (k + 1) + i);
  for (std::size_t j = k; j > 0; --j) cyc.push_back(j * (k + 1));
  std::set<GridMap> out;
  std::vector<Point2> im(n);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) {
      Rat total = 0;
      for (std::size_t c = 0; c < cyc.size(); ++c) {
        const Point2& p = im[cyc[c]];
        const Point2& q = im[cyc[(c + 1) % cyc.size()]];
        if (!on_bd(p)) return;
        if (p == q) continue;
        if (!common(p, q)) return;
        Rat a = param(q) - param(p);
        if (sgn(a) < 0) a += 4;
        if (a > 1) return;
        total += a;
      }
      if (total != 4) return;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
          std::size_t a = j * (k + 1) + i, b = a + 1, c = a + k + 2, d = a + k + 1;
          auto det = [&](std::size_t x, std::size_t y, std::size_t z) {
            return Rat((im[y].x - im[x].x) * (im[z].y - im[x].y) - (im[y].y - im[x].y) * (im[z].x - im[x].x));
          };
          if (sgn(det(a, b, c)) < 0 || sgn(det(a, c, d)) < 0) return;
        }
      out.insert(GridMap(k, im));
      return;
    }
    for (auto& p : lattice) {
      im[v] = p;
      rec(v + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace oracle

namespace oracle {

/// Barycentric evaluation of grid samples, written out directly: lower
/// triangles (i,j),(i+1,j),(i+1,j+1), upper triangles (i,j),(i+1,j+1),(i,j+1).
template <class V, class Add, class Scale>
V barycentric(const std::vector<V>& vals, std::size_t m, const Point2& p, Add add, Scale scale) {
  Rat s = p.x * Rat(static_cast<unsigned long>(m)), t = p.y * Rat(static_cast<unsigned long>(m));
  long i = std::min<long>(frechet::floor_rat(s).get_si(), static_cast<long>(m) - 1);
  long j = std::min<long>(frechet::floor_rat(t).get_si(), static_cast<long>(m) - 1);
  Rat u = s - i, w = t - j;
  auto at = [&](long a, long b) { return vals[static_cast<std::size_t>(b) * (m + 1) + static_cast<std::size_t>(a)]; };
  V v00 = at(i, j), v10 = at(i + 1, j), v11 = at(i + 1, j + 1), v01 = at(i, j + 1);
  auto minus = [&](const V& a, const V& b) { return add(a, scale(Rat(-1), b)); };
  if (u >= w) return add(v00, add(scale(u, minus(v10, v00)), scale(w, minus(v11, v10))));
  return add(v00, add(scale(w, minus(v01, v00)), scale(u, minus(v11, v01))));
}

inline frechet::Vec eval_surface(const frechet::GridSurface& s, const Point2& p) {
  auto add = [](const frechet::Vec& a, const frechet::Vec& b) {
    frechet::Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  };
  auto scale = [](const Rat& c, const frechet::Vec& a) {
    frechet::Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
  };
  return barycentric(s.samples(), s.m(), p, add, scale);
}

inline Point2 eval_map(const GridMap& f, const Point2& p) {
  auto add = [](const Point2& a, const Point2& b) { return Point2{Rat(a.x + b.x), Rat(a.y + b.y)}; };
  auto scale = [](const Rat& c, const Point2& a) { return Point2{Rat(c * a.x), Rat(c * a.y)}; };
  return barycentric(f.images(), f.k(), p, add, scale);
}

inline Rat max_norm(const frechet::Vec& a, const frechet::Vec& b) {
  Rat m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rat d = a[i] - b[i];
    if (sgn(d) < 0) d = -d;
    if (m < d) m = d;
  }
  return m;
}

/// Minimum over all pairs from the given maps of the max-norm objective,
/// evaluated at the 2-grid vertices and cell centres. Valid when the maps are
/// grid isometries and both surfaces live on grids of size at most 2.
inline Rat isometry_pair_minimum(const frechet::GridSurface& A, const frechet::GridSurface& B,
                                 const std::vector<GridMap>& maps) {
  std::optional<Rat> best;
  for (const auto& phi : maps)
    for (const auto& psi : maps) {
      Rat worst = 0;
      for (long i = 0; i <= 4; ++i)
        for (long j = 0; j <= 4; ++j) {
          if (i % 2 != j % 2) continue;
          Point2 x{frechet::make_rat(i, 4), frechet::make_rat(j, 4)};
          Rat d = max_norm(eval_surface(A, eval_map(phi, x)), eval_surface(B, eval_map(psi, x)));
          if (worst < d) worst = d;
        }
      if (!best || worst < *best) best = worst;
    }
  return *best;
}

}  // namespace oracle
