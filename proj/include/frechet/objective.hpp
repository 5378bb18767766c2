#pragma once

#include "frechet/enclosure.hpp"
#include "frechet/grid.hpp"
#include "frechet/metric.hpp"

#include <set>
#include <stdexcept>

namespace frechet {

/// Two surfaces and a reparametrisation of each; the objective is
/// max over x of d(A(phi(x)), B(psi(x))).
struct ObjectivePair {
  const GridSurface& A;
  const GridSurface& B;
  const GridMap& phi;
  const GridMap& psi;

  void check() const {
    if (!A.space().same_as(B.space())) throw std::invalid_argument("surfaces live in different spaces");
  }
};

namespace detail {

inline Affine2 affine_at(const GridMap& f, const Point2& x) {
  return f.triangle_affine(f.topology().triangle_of(f.topology().locate(x)));
}

// Lines of the grid of a surface pulled back through an affine map.
inline void pulled_back(const std::vector<Line>& lines, const Affine2& m, std::vector<Line>& out) {
  for (const auto& l : lines) {
    Line p{Rat(l.a * m.a11 + l.b * m.a21), Rat(l.a * m.a12 + l.b * m.a22), Rat(l.c - l.a * m.b1 - l.b * m.b2)};
    if (sgn(p.a) != 0 || sgn(p.b) != 0) out.push_back(p);
  }
}

}  // namespace detail

/// Points of D^2 containing a maximiser of any convex function of
/// (A(phi(x)), B(psi(x))): the vertices of the common refinement on which
/// both compositions are affine.
inline std::vector<Point2> objective_vertices(const ObjectivePair& p) {
  std::vector<Line> lines = p.phi.topology().lines();
  if (p.psi.k() != p.phi.k()) {
    auto more = p.psi.topology().lines();
    lines.insert(lines.end(), more.begin(), more.end());
  }
  auto a_lines = p.A.topology().lines(), b_lines = p.B.topology().lines();
  std::set<Point2> pts;
  for (const auto& cell : refine(unit_square(), lines)) {
    Point2 c = centroid(cell);
    std::vector<Line> cuts_here;
    detail::pulled_back(a_lines, detail::affine_at(p.phi, c), cuts_here);
    detail::pulled_back(b_lines, detail::affine_at(p.psi, c), cuts_here);
    std::vector<Line> active;
    for (const auto& l : cuts_here)
      if (cuts(cell, l)) active.push_back(l);
    for (const auto& piece : refine(cell, active)) pts.insert(piece.begin(), piece.end());
  }
  return {pts.begin(), pts.end()};
}

/// Pointwise objective value at x; exact for max-norm and table spaces,
/// squared for Euclidean spaces.
inline Rat objective_at(const ObjectivePair& p, const Point2& x) {
  Vec a = p.A.eval(p.phi.eval(x)), b = p.B.eval(p.psi.eval(x));
  const auto& sp = p.A.space();
  if (sp.is_max_norm()) return max_norm_diff(a, b);
  if (sp.is_euclidean()) return squared_diff(a, b);
  return sp.table_data().at(sp.table_index(a), sp.table_index(b));
}

/// Sampled enclosure: the maximum over an N x N sample grid
/// below, plus (L_A L_phi + L_B L_psi) / (2N) above.
inline Enclosure objective_sampled(const ObjectivePair& p, std::size_t N, const Rat& precision = Rat(1, 1 << 20)) {
  p.check();
  if (p.A.space().is_table()) throw std::invalid_argument("objective_sampled: table spaces are not interpolable");
  bool euclid = p.A.space().is_euclidean();
  Rat best = 0;
  GridTopology g(N);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) best = rat_max(best, objective_at(p, g.point(v)));
  Rat lo = best, hi = best;
  if (euclid) {
    auto e = sqrt_to_precision(best, precision);
    lo = e.lower();
    hi = e.upper();
  }
  Rat slack = (lipschitz_constant(p.A) * lipschitz_constant(p.phi) + lipschitz_constant(p.B) * lipschitz_constant(p.psi)) /
              (2 * Rat(static_cast<unsigned long>(N)));
  return Enclosure(lo, Rat(hi + slack));
}

namespace detail {

// Table surfaces have no values between vertices: phi(x) is snapped to the
// nearest vertex of A's grid, which moves the value by at most L_A / (2 m_A)
// with L_A the edge Lipschitz modulus.
inline Enclosure objective_table(const ObjectivePair& p, std::size_t N) {
  const auto& sp = p.A.space();
  auto snap = [](const GridSurface& s, const Point2& y) {
    Rat m(static_cast<unsigned long>(s.m()));
    auto r = [&](const Rat& c) {
      BigInt k = floor_rat(Rat(c * m + Rat(1, 2)));
      return Rat(Rat(k) / m);
    };
    return s.eval(Point2{r(y.x), r(y.y)});
  };
  GridTopology g(N);
  Rat best = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Point2 x = g.point(v);
    Vec a = snap(p.A, p.phi.eval(x)), b = snap(p.B, p.psi.eval(x));
    best = rat_max(best, sp.table_data().at(sp.table_index(a), sp.table_index(b)));
  }
  Rat la = table_edge_lipschitz(p.A), lb = table_edge_lipschitz(p.B);
  Rat snap_err = la / (2 * Rat(static_cast<unsigned long>(p.A.m()))) + lb / (2 * Rat(static_cast<unsigned long>(p.B.m())));
  Rat sample_err = (la * lipschitz_constant(p.phi) + lb * lipschitz_constant(p.psi)) / (2 * Rat(static_cast<unsigned long>(N)));
  return Enclosure(rat_max(Rat(0), Rat(best - snap_err)), Rat(best + snap_err + sample_err));
}

}  // namespace detail

/// Enclosure of the objective. Max-norm values are exact; Euclidean values
/// have width <= tol; table spaces get a sampled enclosure whose width does
/// not shrink below the vertex-snapping error.
inline Enclosure objective(const ObjectivePair& p, const Rat& tol) {
  p.check();
  if (sgn(tol) <= 0) throw std::invalid_argument("tolerance must be positive");
  const auto& sp = p.A.space();
  if (sp.is_table()) return detail::objective_table(p, 4 * std::max(p.A.m(), p.B.m()) * std::max(p.phi.k(), p.psi.k()));
  Rat best = 0;
  for (const auto& x : objective_vertices(p)) best = rat_max(best, objective_at(p, x));
  if (sp.is_max_norm()) return Enclosure::exact(best);
  return sqrt_to_precision(best, tol);
}

}  // namespace frechet
