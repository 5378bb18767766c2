#pragma once

#include "frechet/enclosure.hpp"
#include "frechet/grid.hpp"
#include "frechet/metric.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace frechet {

/// Closed polyline v0, v1, ..., v_{n-1}, v0 in a max-norm or Euclidean space.
class ClosedCurve {
public:
  ClosedCurve(MetricSpace space, std::vector<Vec> vertices) : ClosedCurve(std::move(space), std::move(vertices), true) {}

  /// The boundary of a surface, counter-clockwise from the image of (0,0).
  /// Degenerate boundaries (e.g. of constant surfaces) are allowed here.
  static ClosedCurve boundary_of(const GridSurface& s) {
    std::vector<Vec> v;
    for (auto idx : s.topology().boundary_cycle()) v.push_back(s.samples()[idx]);
    return ClosedCurve(s.space(), std::move(v), false);
  }

  const MetricSpace& space() const { return space_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  const std::vector<Vec>& vertices() const { return vertices_; }

  /// Point at parameter u in [0, n], segment i covering [i, i+1].
  Vec at(const Rat& u) const {
    BigInt f = floor_rat(u);
    std::size_t i = static_cast<std::size_t>(f.get_ui()) % size();
    Rat lam = u - Rat(f);
    return vec_add(vertex(i), vec_scale(lam, vec_sub(vertex(i + 1), vertex(i))));
  }

private:
  ClosedCurve(MetricSpace space, std::vector<Vec> vertices, bool strict) : space_(std::move(space)), vertices_(std::move(vertices)) {
    if (space_.is_table()) throw std::invalid_argument("closed curves need a max-norm or Euclidean space");
    if (vertices_.empty()) throw std::invalid_argument("closed curve needs vertices");
    for (const auto& v : vertices_) space_.check_point(v);
    if (vertices_.size() > 1 && vertices_.front() == vertices_.back()) vertices_.pop_back();
    if (strict) {
      std::set<Vec> distinct(vertices_.begin(), vertices_.end());
      if (distinct.size() < 3) throw std::invalid_argument("closed curve needs at least 3 distinct vertices");
    }
  }

  MetricSpace space_;
  std::vector<Vec> vertices_;
};

struct Interval {
  Rat lo, hi;
};
using MaybeInterval = std::optional<Interval>;

namespace detail {

inline MaybeInterval intersect(const MaybeInterval& a, const Rat& lo) {
  if (!a) return std::nullopt;
  Rat l = rat_max(a->lo, lo);
  if (a->hi < l) return std::nullopt;
  return Interval{l, a->hi};
}

// {lam in [0,1] : |c + lam d|_inf <= eps}, exact.
inline MaybeInterval free_interval_max(const Vec& c, const Vec& d, const Rat& eps) {
  Rat lo = 0, hi = 1;
  for (std::size_t k = 0; k < c.size(); ++k) {
    // -eps <= c + lam d <= eps
    if (sgn(d[k]) == 0) {
      if (rat_abs(c[k]) > eps) return std::nullopt;
      continue;
    }
    Rat a = (-eps - c[k]) / d[k], b = (eps - c[k]) / d[k];
    if (b < a) std::swap(a, b);
    lo = rat_max(lo, a);
    hi = rat_min(hi, b);
    if (hi < lo) return std::nullopt;
  }
  return Interval{lo, hi};
}

// Inner (subset) or outer (superset) rational approximation of
// {lam in [0,1] : |c + lam d|_2 <= eps}. Emptiness is decided exactly at the
// rational minimiser; endpoints are refined by bisection.
inline MaybeInterval free_interval_euclid(const Vec& c, const Vec& d, const Rat& eps, bool inner, unsigned bits) {
  Rat a = 0, b = 0, cc = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    a += d[k] * d[k];
    b += 2 * c[k] * d[k];
    cc += c[k] * c[k];
  }
  Rat e2 = eps * eps;
  auto g = [&](const Rat& lam) { return Rat(a * lam * lam + b * lam + cc - e2); };
  if (sgn(a) == 0) {
    if (cc <= e2) return Interval{Rat(0), Rat(1)};
    return std::nullopt;
  }
  // minimiser of the quadratic, clamped to [0,1]
  Rat m = -b / (2 * a);
  if (sgn(m) < 0) m = 0;
  if (m > 1) m = 1;
  if (sgn(g(m)) > 0) return std::nullopt;
  Rat step = pow2(-static_cast<long>(bits));
  // left endpoint: g decreasing on [0, m]
  auto left = [&]() -> Rat {
    if (sgn(g(Rat(0))) <= 0) return Rat(0);
    Rat lo = 0, hi = m;  // g(lo) > 0 >= g(hi)
    while (hi - lo > step) {
      Rat mid = (lo + hi) / 2;
      if (sgn(g(mid)) > 0) lo = mid;
      else hi = mid;
    }
    return inner ? hi : lo;
  };
  auto right = [&]() -> Rat {
    if (sgn(g(Rat(1))) <= 0) return Rat(1);
    Rat lo = m, hi = 1;  // g(lo) <= 0 < g(hi)
    while (hi - lo > step) {
      Rat mid = (lo + hi) / 2;
      if (sgn(g(mid)) > 0) hi = mid;
      else lo = mid;
    }
    return inner ? lo : hi;
  };
  return Interval{left(), right()};
}

}  // namespace detail

/// Free-space decision for closed curves with a free base point.
class FreeSpaceDecider {
public:
  enum class Mode { Inner, Outer };

  FreeSpaceDecider(const ClosedCurve& P, const ClosedCurve& Q, unsigned bits = 40) : P_(P), Q_(Q), bits_(bits) {
    if (!P.space().same_as(Q.space())) throw std::invalid_argument("curves live in different spaces");
  }

  /// Whether a matching of cost <= eps exists in the (inner or outer)
  /// approximation of the free space. Inner-true implies distance <= eps;
  /// outer-false implies distance > eps. Max-norm spaces are exact.
  bool decide(const Rat& eps, Mode mode = Mode::Inner) const {
    const std::size_t p = P_.size(), q = Q_.size();
    // horizontal free intervals: segment i of P against vertex j of Q
    std::vector<std::vector<MaybeInterval>> hf(p, std::vector<MaybeInterval>(q + 1));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j <= q; ++j) hf[i][j] = interval(P_.vertex(i), P_.vertex(i + 1), Q_.vertex(j), eps, mode);
    // vertical free intervals: vertex i of P against segment j of Q
    std::vector<std::vector<MaybeInterval>> vf(p, std::vector<MaybeInterval>(q));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) vf[i][j] = interval(Q_.vertex(j), Q_.vertex(j + 1), P_.vertex(i), eps, mode);

    // Feasible starts form closed intervals whose left ends are among the
    // endpoints of horizontal free intervals and the integer parameters.
    std::set<Rat> cands;
    for (std::size_t i = 0; i < p; ++i) {
      cands.insert(Rat(static_cast<unsigned long>(i)));
      for (std::size_t j = 0; j <= q; ++j)
        if (hf[i][j]) {
          for (const Rat& e : {hf[i][j]->lo, hf[i][j]->hi}) {
            Rat u = Rat(static_cast<unsigned long>(i)) + e;
            if (u >= Rat(static_cast<unsigned long>(p))) u -= Rat(static_cast<unsigned long>(p));
            cands.insert(u);
          }
        }
    }
    for (const auto& s : cands) {
      BigInt f = floor_rat(s);
      std::size_t is = f.get_ui();
      Rat lam = s - Rat(f);
      const auto& bottom = hf[is][0];
      if (!bottom || lam < bottom->lo || bottom->hi < lam) continue;
      if (reach(hf, vf, is, lam)) return true;
    }
    return false;
  }

private:
  MaybeInterval interval(const Vec& a, const Vec& b, const Vec& pt, const Rat& eps, Mode mode) const {
    Vec c = vec_sub(a, pt), d = vec_sub(b, a);
    if (P_.space().is_max_norm()) return detail::free_interval_max(c, d, eps);
    return detail::free_interval_euclid(c, d, eps, mode == Mode::Inner, bits_);
  }

  bool reach(const std::vector<std::vector<MaybeInterval>>& hf, const std::vector<std::vector<MaybeInterval>>& vf,
             std::size_t is, const Rat& lam) const {
    const std::size_t p = P_.size(), q = Q_.size();
    // columns 0..p cover global columns is .. is + p
    std::vector<std::vector<MaybeInterval>> rb(p + 1, std::vector<MaybeInterval>(q + 1));
    std::vector<std::vector<MaybeInterval>> rl(p + 2, std::vector<MaybeInterval>(q));
    rb[0][0] = detail::intersect(hf[is][0], lam);
    for (std::size_t col = 0; col <= p; ++col) {
      std::size_t seg = (is + col) % p;
      std::size_t next = (is + col + 1) % p;
      for (std::size_t j = 0; j < q; ++j) {
        const auto& b = rb[col][j];
        const auto& l = rl[col][j];
        if (b) rl[col + 1][j] = vf[next][j];
        else if (l) rl[col + 1][j] = detail::intersect(vf[next][j], l->lo);
        if (l) rb[col][j + 1] = hf[seg][j + 1];
        else if (b) rb[col][j + 1] = detail::intersect(hf[seg][j + 1], b->lo);
      }
    }
    const auto& top = rb[p][q];
    return top && top->lo <= lam && lam <= top->hi;
  }

  const ClosedCurve& P_;
  const ClosedCurve& Q_;
  unsigned bits_;
};

/// Enclosure of the Fréchet distance between closed curves under
/// orientation-preserving reparametrisations with a free base point.
inline Enclosure closed_curve_frechet(const ClosedCurve& P, const ClosedCurve& Q, const Rat& tol) {
  if (sgn(tol) <= 0) throw std::invalid_argument("tolerance must be positive");
  if (!P.space().same_as(Q.space())) throw std::invalid_argument("curves live in different spaces");
  bool euclid = P.space().is_euclidean();
  Rat hi = 0;
  for (const auto& a : P.vertices())
    for (const auto& b : Q.vertices()) hi = rat_max(hi, euclid ? squared_diff(a, b) : max_norm_diff(a, b));
  if (euclid) hi = sqrt_to_precision(hi, tol / 4).upper();
  Rat lo = 0;
  unsigned bits = bits_for(tol) + 16;
  FreeSpaceDecider dec(P, Q, bits);
  if (dec.decide(Rat(0))) return Enclosure::exact(Rat(0));
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / 2;
    if (dec.decide(mid, FreeSpaceDecider::Mode::Inner)) {
      hi = mid;
      continue;
    }
    if (!euclid || !dec.decide(mid, FreeSpaceDecider::Mode::Outer)) {
      lo = mid;
      continue;
    }
    // Euclidean and undecided at this resolution: step to either side.
    Rat eta = (hi - lo) / 8;
    if (dec.decide(Rat(mid + eta), FreeSpaceDecider::Mode::Inner)) hi = mid + eta;
    else if (!dec.decide(Rat(mid - eta), FreeSpaceDecider::Mode::Outer)) lo = mid - eta;
    else break;
  }
  return Enclosure(lo, hi);
}

/// Lower bound for the surface distance from the Fréchet distance of the
/// boundary curves; reparametrisations restrict to monotone boundary maps.
inline Enclosure boundary_lower_bound(const GridSurface& A, const GridSurface& B, const Rat& tol) {
  return closed_curve_frechet(ClosedCurve::boundary_of(A), ClosedCurve::boundary_of(B), tol);
}

}  // namespace frechet
