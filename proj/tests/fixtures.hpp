#pragma once

#include "frechet/autocert.hpp"
#include "frechet/grid.hpp"

#include <random>
#include <vector>

namespace fixtures {

using frechet::GridMap;
using frechet::make_rat;
using frechet::Point2;
using frechet::Rat;

inline GridMap fold(std::size_t k) {
  return GridMap::from_function(k, [](const Point2& p) {
    return Point2{Rat(1 - frechet::rat_abs(Rat(2 * p.x - 1))), p.y};
  });
}

inline GridMap half_fold(std::size_t k) {
  return GridMap::from_function(k, [](const Point2& p) { return Point2{frechet::rat_min(p.x, Rat(1 - p.x)), p.y}; });
}

inline GridMap mirror(std::size_t k) {
  return GridMap::from_function(k, [](const Point2& p) { return Point2{Rat(1 - p.x), p.y}; });
}

inline GridMap constant(std::size_t k, const Point2& c) {
  return GridMap::from_function(k, [c](const Point2&) { return c; });
}

/// Boundary-fixing shear: interior vertices slide horizontally by
/// x(1-x)y(1-y)/2.
inline GridMap shear(std::size_t k) {
  return GridMap::from_function(k, [](const Point2& p) {
    return Point2{Rat(p.x + p.x * (1 - p.x) * p.y * (1 - p.y) / 2), p.y};
  });
}

/// Boundary traversed twice (k = 2): cycle vertex i goes to corner i mod 4.
inline GridMap double_winding() {
  frechet::GridTopology g(2);
  std::vector<Point2> im(g.vertex_count(), Point2{Rat(1, 2), Rat(1, 2)});
  auto cyc = g.boundary_cycle();
  for (std::size_t i = 0; i < cyc.size(); ++i) im[cyc[i]] = frechet::perimeter_point(Rat(static_cast<long>(i % 4)));
  return GridMap(2, im);
}

/// Identity on the boundary; interior rows of the 8-grid fold in x through
/// 0, 1/4, 1/2, 7/8, 1/2, 1/8, 3/8, 3/4, 1.
inline GridMap interior_fold() {
  return GridMap::from_function(8, [](const Point2& p) {
    if (sgn(p.y) == 0 || p.y == 1) return p;
    static const long g[9] = {0, 2, 4, 7, 4, 1, 3, 6, 8};
    long i = Rat(p.x * 8).get_num().get_si();
    return Point2{make_rat(g[i], 8), p.y};
  });
}

/// Small random perturbation of the identity that stays certified.
inline GridMap random_certified(std::mt19937_64& rng, std::size_t k) {
  frechet::GridTopology g(k);
  long den = static_cast<long>(16 * k);
  std::uniform_int_distribution<long> off(-3, 3);
  while (true) {
    std::vector<Point2> im;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      Point2 p = g.point(v);
      std::size_t i = v % (k + 1), j = v / (k + 1);
      bool corner = (i == 0 || i == k) && (j == 0 || j == k);
      if (corner) {
        im.push_back(p);
        continue;
      }
      Rat dx = make_rat(off(rng), den), dy = make_rat(off(rng), den);
      if (i == 0 || i == k) dx = 0;
      if (j == 0 || j == k) dy = 0;
      im.push_back({Rat(p.x + dx), Rat(p.y + dy)});
    }
    GridMap f(k, im);
    if (frechet::is_certified(f)) return f;
  }
}

inline std::vector<GridMap> certified_corpus() {
  std::vector<GridMap> out;
  for (std::size_t k = 1; k <= 3; ++k)
    for (int q = 0; q < 4; ++q) out.push_back(GridMap::rotation(k, q));
  out.push_back(shear(2));
  out.push_back(shear(4));
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 6; ++i) out.push_back(random_certified(rng, 2 + i % 3));
  return out;
}

inline frechet::GridSurface plane_at(const Rat& h, std::size_t m = 2) {
  return frechet::GridSurface::from_function(frechet::MetricSpace::max_norm(3), m,
                                             [&](const Point2& p) { return frechet::Vec{p.x, p.y, h}; });
}

inline frechet::GridSurface constant_surface(const frechet::MetricSpace& sp, std::size_t m, const frechet::Vec& c) {
  return frechet::GridSurface::from_function(sp, m, [&](const Point2&) { return c; });
}

inline frechet::GridSurface random_surface(std::mt19937_64& rng, const frechet::MetricSpace& sp, std::size_t m,
                                           long den = 8) {
  std::uniform_int_distribution<long> d(-den, den);
  return frechet::GridSurface::from_function(sp, m, [&](const Point2&) {
    frechet::Vec v;
    for (std::size_t i = 0; i < sp.point_dim(); ++i) v.push_back(make_rat(d(rng), den));
    return v;
  });
}

/// Samples f(i) + g(j): affine on every grid cell, so composing with a
/// quarter-turn gives a grid surface again.
inline frechet::GridSurface random_cellwise_affine(std::mt19937_64& rng, const frechet::MetricSpace& sp,
                                                   std::size_t m, long den = 8) {
  std::uniform_int_distribution<long> d(-den, den);
  std::vector<frechet::Vec> f(m + 1), g(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t c = 0; c < sp.point_dim(); ++c) {
      f[i].push_back(make_rat(d(rng), 2 * den));
      g[i].push_back(make_rat(d(rng), 2 * den));
    }
  std::vector<frechet::Vec> samples;
  for (std::size_t j = 0; j <= m; ++j)
    for (std::size_t i = 0; i <= m; ++i) samples.push_back(frechet::vec_add(f[i], g[j]));
  return frechet::GridSurface(sp, m, std::move(samples));
}

/// B(x) = A(rho(x)) for the quarter-turn rho. Exact only when A is affine on
/// each cell; otherwise the creases of A come out along the wrong diagonal.
inline frechet::GridSurface rotated_copy(const frechet::GridSurface& a) {
  auto rho = GridMap::rotation(a.m());
  return frechet::GridSurface::from_function(a.space(), a.m(), [&](const Point2& p) { return a.eval(rho.eval(p)); });
}

}  // namespace fixtures
