#pragma once

// Certification of PL orientation-preserving homeomorphisms, falsification
// of membership in the closure of such maps, Lipschitz snapping, the search
// schedule constant and enumeration of candidate nets.

#include "frechet/boundary.hpp"
#include "frechet/degree.hpp"
#include "frechet/grid.hpp"

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace frechet {

struct OrientationCert {
  std::vector<Rat> determinants;   // twice the image area of each triangle, all > 0
  std::vector<Point2> itinerary;   // boundary vertex images, counter-clockwise from (0,0)
  std::vector<Rat> advances;       // perimeter advance of each boundary step, all > 0
};

struct CertResult {
  std::optional<OrientationCert> cert;
  std::vector<std::string> failures;
  explicit operator bool() const { return cert.has_value(); }
};

inline CertResult certify_homeomorphism(const GridMap& f) {
  CertResult r;
  OrientationCert c;
  const auto& g = f.topology();
  for (std::size_t t = 0; t < g.triangle_count(); ++t) {
    Rat d = f.triangle_det(t);
    c.determinants.push_back(d);
    if (sgn(d) <= 0)
      r.failures.push_back("triangle " + std::to_string(t) + (sgn(d) == 0 ? " is degenerate" : " reverses orientation"));
  }
  auto cyc = g.boundary_cycle();
  Rat total = 0;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const Point2& a = f.image(cyc[i]);
    const Point2& b = f.image(cyc[(i + 1) % cyc.size()]);
    c.itinerary.push_back(a);
    if (!on_unit_boundary(a)) {
      r.failures.push_back("boundary vertex " + std::to_string(cyc[i]) + " maps into the interior");
      continue;
    }
    auto adv = side_advance(a, b);
    if (!adv) {
      r.failures.push_back("boundary edge from vertex " + std::to_string(cyc[i]) + " leaves the boundary");
      continue;
    }
    c.advances.push_back(*adv);
    if (sgn(*adv) <= 0) r.failures.push_back("boundary step from vertex " + std::to_string(cyc[i]) + " is not forward");
    total += *adv;
  }
  if (r.failures.empty() && total != 4)
    r.failures.push_back("boundary winds " + to_string(Rat(total / 4)) + " times instead of once");
  if (r.failures.empty()) r.cert = std::move(c);
  return r;
}

inline bool is_certified(const GridMap& f) { return certify_homeomorphism(f).cert.has_value(); }

enum class ViolationKind { NotBoundaryPreserving, BoundaryNotMonotone, NotSurjective, DegreeSum };

inline const char* kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::NotBoundaryPreserving: return "NotBoundaryPreserving";
    case ViolationKind::BoundaryNotMonotone: return "BoundaryNotMonotone";
    case ViolationKind::NotSurjective: return "NotSurjective";
    case ViolationKind::DegreeSum: return "DegreeSum";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  // NotBoundaryPreserving: a boundary point whose image is interior.
  Point2 point, image;
  // BoundaryNotMonotone: consecutive boundary points stepping backwards, or
  // (when `points` is nonempty) the whole itinerary and its total advance.
  Point2 from, to;
  std::vector<Point2> points;
  Rat advance;
  // NotSurjective: ball centre and radius missed by the image.
  Point2 centre;
  Rat radius;
  // DegreeSum: disjoint cell unions, the target and their degrees.
  std::size_t resolution = 0;
  std::vector<std::vector<Region::Cell>> family;
  Point2 target;
  std::vector<long> degrees;
  std::string detail;
};

struct NoViolation {
  std::size_t resolution;
};

using FalsifyResult = std::variant<Violation, NoViolation>;

namespace detail {

inline std::vector<Violation> boundary_violations(const GridMap& f, bool first_only) {
  std::vector<Violation> out;
  const auto& g = f.topology();
  auto cyc = g.boundary_cycle();
  for (auto v : cyc)
    if (!on_unit_boundary(f.image(v))) {
      Violation w{ViolationKind::NotBoundaryPreserving};
      w.point = g.point(v);
      w.image = f.image(v);
      w.detail = "boundary vertex maps into the interior";
      out.push_back(w);
      if (first_only) return out;
    }
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    auto a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    if (!side_advance(f.image(a), f.image(b))) {
      // the chord between boundary points on different sides is interior
      // except at its ends
      Violation w{ViolationKind::NotBoundaryPreserving};
      w.point = Rat(1, 2) * (g.point(a) + g.point(b));
      w.image = f.eval(w.point);
      w.detail = "boundary edge image crosses the interior";
      out.push_back(w);
      if (first_only) return out;
    }
  }
  if (!out.empty()) return out;
  Rat total = 0;
  std::vector<Point2> itin;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    auto a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    Rat adv = *side_advance(f.image(a), f.image(b));
    itin.push_back(g.point(a));
    total += adv;
    if (sgn(adv) < 0) {
      Violation w{ViolationKind::BoundaryNotMonotone};
      w.from = g.point(a);
      w.to = g.point(b);
      w.advance = adv;
      w.detail = "boundary step runs backwards";
      out.push_back(w);
      if (first_only) return out;
    }
  }
  if (out.empty() && total != 4) {
    Violation w{ViolationKind::BoundaryNotMonotone};
    w.points = itin;
    w.advance = total;
    w.detail = "boundary restriction does not wind exactly once";
    out.push_back(w);
  }
  return out;
}

inline std::vector<Polygon> image_triangles(const GridMap& f) {
  std::vector<Polygon> out;
  for (std::size_t t = 0; t < f.topology().triangle_count(); ++t) {
    auto v = f.topology().triangle(t);
    out.push_back({f.image(v[0]), f.image(v[1]), f.image(v[2])});
  }
  return out;
}

inline Rat distance_to_image(const std::vector<Polygon>& tris, const Point2& y) {
  Rat best = -1;
  for (const auto& t : tris) {
    Rat d = dist_inf_convex(t, y);
    if (sgn(best) < 0 || d < best) best = d;
  }
  return best;
}

inline std::vector<Point2> cell_centres(std::size_t res) {
  std::vector<Point2> out;
  Rat kk(static_cast<unsigned long>(2 * res));
  for (std::size_t j = 0; j < res; ++j)
    for (std::size_t i = 0; i < res; ++i)
      out.push_back({Rat(Rat(static_cast<unsigned long>(2 * i + 1)) / kk), Rat(Rat(static_cast<unsigned long>(2 * j + 1)) / kk)});
  return out;
}

inline std::vector<Violation> surjectivity_violations(const GridMap& f, std::size_t res, bool first_only) {
  std::vector<Violation> out;
  auto tris = image_triangles(f);
  for (const auto& y : cell_centres(res)) {
    Rat d = distance_to_image(tris, y);
    if (sgn(d) > 0) {
      Violation w{ViolationKind::NotSurjective};
      w.centre = y;
      w.radius = d / 2;
      w.detail = "image misses a ball";
      out.push_back(w);
      if (first_only) return out;
    }
  }
  return out;
}

/// Edge-connected components of a set of cells.
inline std::vector<std::vector<Region::Cell>> components(const std::set<Region::Cell>& cells) {
  std::vector<std::vector<Region::Cell>> out;
  std::set<Region::Cell> seen;
  for (const auto& c : cells) {
    if (seen.count(c)) continue;
    std::vector<Region::Cell> comp;
    std::vector<Region::Cell> stack{c};
    seen.insert(c);
    while (!stack.empty()) {
      auto [i, j] = stack.back();
      stack.pop_back();
      comp.push_back({i, j});
      const long di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int e = 0; e < 4; ++e) {
        long ni = static_cast<long>(i) + di[e], nj = static_cast<long>(j) + dj[e];
        if (ni < 0 || nj < 0) continue;
        Region::Cell n{static_cast<std::size_t>(ni), static_cast<std::size_t>(nj)};
        if (cells.count(n) && !seen.count(n)) {
          seen.insert(n);
          stack.push_back(n);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

/// Domain cells at the given resolution whose closed image contains y.
inline std::set<Region::Cell> preimage_support(const GridMap& f, std::size_t res, const Point2& y) {
  std::set<Region::Cell> out;
  GridTopology cg(res);
  auto pl = f.as_pl_map();
  for (std::size_t j = 0; j < res; ++j)
    for (std::size_t i = 0; i < res; ++i) {
      Polygon cell{cg.point(i, j), cg.point(i + 1, j), cg.point(i + 1, j + 1), cg.point(i, j + 1)};
      BBox cb = bbox_of(cell);
      for (const auto& piece : pl.pieces()) {
        if (!cb.overlaps(bbox_of(piece.domain))) continue;
        Polygon c = clip(piece.domain, cell);
        if (c.empty()) continue;
        Polygon img;
        for (const auto& v : c) img.push_back(piece.map(v));
        if (in_convex(img, y)) {
          out.insert({i, j});
          break;
        }
      }
    }
  return out;
}

inline std::optional<long> degree_if_defined(const GridMap& f, const Region& r, const Point2& y) {
  auto q = make_query(f, r, y);
  if (!well_posed(q)) return std::nullopt;
  return degree(q).value;
}

inline std::vector<Violation> degree_violations(const GridMap& f, std::size_t res, bool first_only) {
  std::vector<Violation> out;
  for (const auto& y : cell_centres(res)) {
    auto support = preimage_support(f, res, y);
    if (support.empty()) continue;
    auto comps = components(support);
    std::vector<std::vector<std::vector<Region::Cell>>> families;
    families.push_back({{{0, 0}}});  // the whole square at resolution 1
    for (const auto& c : comps) families.push_back({c});
    if (comps.size() > 1) families.push_back(comps);
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
      const auto& fam = families[fi];
      std::size_t r = fi == 0 ? 1 : res;
      std::vector<long> degs;
      bool defined = true;
      long sum = 0;
      for (const auto& cells : fam) {
        auto d = degree_if_defined(f, Region::cells(r, cells), y);
        if (!d) {
          defined = false;
          break;
        }
        degs.push_back(*d);
        sum += *d;
      }
      if (!defined || sum == 1) continue;
      Violation w{ViolationKind::DegreeSum};
      w.resolution = r;
      w.family = fam;
      w.target = y;
      w.degrees = degs;
      w.detail = "degrees over the preimage family sum to " + std::to_string(sum);
      out.push_back(w);
      if (first_only) return out;
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Checks the pseudo-automorphism conditions in order (boundary
/// preservation, monotone boundary, surjectivity at resolution k', degree
/// sums at resolution k') and reports the first violation.
inline FalsifyResult falsify_pseudoautomorphism(const GridMap& f, std::size_t resolution) {
  if (resolution == 0) throw std::invalid_argument("resolution must be at least 1");
  auto b = detail::boundary_violations(f, true);
  if (!b.empty()) return b.front();
  auto s = detail::surjectivity_violations(f, resolution, true);
  if (!s.empty()) return s.front();
  auto d = detail::degree_violations(f, resolution, true);
  if (!d.empty()) return d.front();
  return NoViolation{resolution};
}

/// Every violated condition, one witness per condition kind encountered.
inline std::vector<Violation> falsify_all(const GridMap& f, std::size_t resolution) {
  std::vector<Violation> out;
  auto b = detail::boundary_violations(f, false);
  out.insert(out.end(), b.begin(), b.end());
  auto s = detail::surjectivity_violations(f, resolution, true);
  out.insert(out.end(), s.begin(), s.end());
  bool boundary_ok = b.empty();
  if (boundary_ok) {
    auto d = detail::degree_violations(f, resolution, true);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

/// Re-verifies a violation from its witness data and the map alone.
inline bool recheck(const GridMap& f, const Violation& v) {
  switch (v.kind) {
    case ViolationKind::NotBoundaryPreserving:
      return on_unit_boundary(v.point) && f.eval(v.point) == v.image && !on_unit_boundary(v.image);
    case ViolationKind::BoundaryNotMonotone: {
      if (v.points.empty()) {
        if (!on_unit_boundary(v.from) || !on_unit_boundary(v.to)) return false;
        // the two points must be consecutive boundary grid vertices
        if (dist_inf(v.from, v.to) != Rat(1, static_cast<long>(f.k()))) return false;
        Rat step = perimeter_param(v.to) - perimeter_param(v.from);
        if (step != Rat(1, static_cast<long>(f.k())) && step != Rat(1, static_cast<long>(f.k())) - 4) return false;
        auto adv = side_advance(f.eval(v.from), f.eval(v.to));
        return adv && *adv == v.advance && sgn(*adv) < 0;
      }
      const auto& g = f.topology();
      auto cyc = g.boundary_cycle();
      if (v.points.size() != cyc.size()) return false;
      Rat total = 0;
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (v.points[i] != g.point(cyc[i])) return false;
        auto adv = side_advance(f.eval(v.points[i]), f.eval(v.points[(i + 1) % cyc.size()]));
        if (!adv || sgn(*adv) < 0) return false;
        total += *adv;
      }
      return total == v.advance && total != 4;
    }
    case ViolationKind::NotSurjective: {
      if (sgn(v.radius) <= 0) return false;
      for (const auto& t : detail::image_triangles(f))
        if (!(v.radius < dist_inf_convex(t, v.centre))) return false;
      return true;
    }
    case ViolationKind::DegreeSum: {
      // members must have disjoint interiors
      std::set<Region::Cell> all;
      std::size_t count = 0;
      for (const auto& m : v.family) {
        count += m.size();
        all.insert(m.begin(), m.end());
      }
      if (all.size() != count) return false;
      long sum = 0;
      for (std::size_t i = 0; i < v.family.size(); ++i) {
        auto d = detail::degree_if_defined(f, Region::cells(v.resolution, v.family[i]), v.target);
        if (!d || i >= v.degrees.size() || *d != v.degrees[i]) return false;
        sum += *d;
      }
      // the target must lie in the image of the closure of the union
      Region u = Region::cells(v.resolution, std::vector<Region::Cell>(all.begin(), all.end()));
      bool hit = false;
      auto pl = f.as_pl_map();
      for (const auto& cell : u.pieces())
        for (const auto& piece : pl.pieces()) {
          Polygon c = clip(piece.domain, cell);
          if (c.empty()) continue;
          Polygon img;
          for (const auto& p : c) img.push_back(piece.map(p));
          if (in_convex(img, v.target)) hit = true;
        }
      return hit && sum != 1;
    }
  }
  return false;
}

/// The constant 4^a * 4^(4^a) * (3 * 4^a + 3) + 1, kept in factored form.
struct LemmaBound {
  unsigned alpha;

  /// Exact value; only materialised for small exponents.
  BigInt value() const {
    if (alpha > 12) throw std::overflow_error("Lipschitz ceiling too large to materialise (alpha > 12)");
    BigInt four_a, big, r;
    mpz_ui_pow_ui(four_a.get_mpz_t(), 4, alpha);
    mpz_ui_pow_ui(big.get_mpz_t(), 4, four_a.get_ui());
    r = four_a * big * (3 * four_a + 3) + 1;
    return r;
  }
  /// Lower bound on the bit length: the value exceeds 2^(2*4^a + 2a).
  unsigned long min_bits() const {
    unsigned long fa = 1;
    for (unsigned i = 0; i < alpha; ++i) fa *= 4;
    return 2 * fa + 2 * alpha;
  }
  /// Whether x <= value, decided without materialising large values.
  bool bounds(const Rat& x) const {
    if (sgn(x) <= 0) return true;
    if (alpha <= 12) return x <= Rat(value());
    return bit_length(ceil_rat(x)) <= min_bits();
  }
};

class schedule_refused : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct SearchSchedule {
  unsigned n;
  Modulus mu_a, mu_b;

  unsigned alpha() const { return mu_a.rule(n + 1) + mu_b.rule(n + 1); }
  LemmaBound L() const {
    unsigned a = alpha();
    if (a > 24) throw schedule_refused("alpha(n) = " + std::to_string(a) + " > 24: Lipschitz ceiling refused");
    return LemmaBound{a};
  }
};

inline LemmaBound schedule_L(unsigned n, const Modulus& mu_a, const Modulus& mu_b) {
  return SearchSchedule{n, mu_a, mu_b}.L();
}

struct RefinementRequest {
  unsigned next_n;
  std::string reason;
};

/// Quantises a certified map's vertex images to the 2^-n grid. Images are
/// rounded to the nearest grid point; vertices of triangles that lose strict
/// orientation try the floor/ceil alternatives per coordinate in a fixed
/// order. Displacement per coordinate is below 2^-n, hence so is the sup
/// distance and the graph distance.
inline std::variant<GridMap, RefinementRequest> lipschitz_snap(const GridMap& f, unsigned n) {
  if (!is_certified(f)) throw std::invalid_argument("lipschitz_snap requires a certified homeomorphism");
  Rat q = pow2(-static_cast<long>(n));
  const auto& g = f.topology();
  auto snap = [&](const Rat& v) { return round_to_multiple(v, q); };
  std::vector<Point2> im;
  for (const auto& p : f.images()) im.push_back({snap(p.x), snap(p.y)});

  auto triangles_of = [&](std::size_t v) {
    std::vector<std::size_t> ts;
    for (std::size_t t = 0; t < g.triangle_count(); ++t) {
      auto tv = g.triangle(t);
      if (tv[0] == v || tv[1] == v || tv[2] == v) ts.push_back(t);
    }
    return ts;
  };
  auto positive = [&](std::size_t t) {
    auto tv = g.triangle(t);
    return sgn(orient_value(im[tv[0]], im[tv[1]], im[tv[2]])) > 0;
  };
  for (int pass = 0; pass < 4; ++pass) {
    bool all_ok = true;
    for (std::size_t t = 0; t < g.triangle_count(); ++t)
      if (!positive(t)) all_ok = false;
    if (all_ok) break;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      auto ts = triangles_of(v);
      bool bad = false;
      for (auto t : ts) bad = bad || !positive(t);
      if (!bad) continue;
      const Point2& orig = f.image(v);
      std::vector<Rat> xs{Rat(floor_rat(Rat(orig.x / q)) * q), Rat(ceil_rat(Rat(orig.x / q)) * q)};
      std::vector<Rat> ys{Rat(floor_rat(Rat(orig.y / q)) * q), Rat(ceil_rat(Rat(orig.y / q)) * q)};
      if (g.is_boundary_vertex(v)) {
        // stay on the boundary side(s) of the original image
        if (sgn(orig.x) == 0 || orig.x == 1) xs = {orig.x};
        if (sgn(orig.y) == 0 || orig.y == 1) ys = {orig.y};
      }
      Point2 keep = im[v];
      bool fixed = false;
      for (const auto& x : xs) {
        for (const auto& y : ys) {
          im[v] = {x, y};
          bool ok = true;
          for (auto t : ts) ok = ok && positive(t);
          if (ok) {
            fixed = true;
            break;
          }
        }
        if (fixed) break;
      }
      if (!fixed) im[v] = keep;
    }
  }
  GridMap out(f.k(), im);
  auto cert = certify_homeomorphism(out);
  if (!cert) return RefinementRequest{n + 1, cert.failures.front()};
  if (!LemmaBound{n}.bounds(lipschitz_constant(out)))
    throw std::logic_error("snapped map exceeds the Lipschitz ceiling");
  return out;
}

/// Deterministic depth-first enumeration of the k-grid maps with images in
/// the delta-lattice of the square that pass the necessary conditions for the
/// closure of orientation-preserving automorphisms. Maps come out in
/// lexicographic order of their vertex-image lists.
class NetEnumerator {
public:
  NetEnumerator(std::size_t k, Rat delta, std::optional<LemmaBound> ceiling = std::nullopt)
      : topo_(k), delta_(std::move(delta)), ceiling_(ceiling) {
    if (sgn(delta_) <= 0 || Rat(1 / delta_).get_den() != 1) throw std::invalid_argument("1/delta must be a positive integer");
    long steps = Rat(1 / delta_).get_num().get_si();
    for (long i = 0; i <= steps; ++i)
      for (long j = 0; j <= steps; ++j) {
        Point2 p{Rat(make_rat(i, steps)), Rat(make_rat(j, steps))};
        all_.push_back(p);
        if (on_unit_boundary(p)) boundary_.push_back(p);
      }
    std::sort(all_.begin(), all_.end());
    std::sort(boundary_.begin(), boundary_.end());
    auto cyc = topo_.boundary_cycle();
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      std::size_t a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      steps_by_vertex_[std::max(a, b)].push_back({a, b});
    }
    for (std::size_t t = 0; t < topo_.triangle_count(); ++t) {
      auto v = topo_.triangle(t);
      tris_by_vertex_[std::max({v[0], v[1], v[2]})].push_back(t);
    }
    images_.resize(topo_.vertex_count());
    choice_.assign(topo_.vertex_count(), 0);
    advance_.assign(topo_.vertex_count() + 1, Rat(0));
  }

  std::optional<GridMap> next() {
    const std::size_t nv = topo_.vertex_count();
    if (done_) return std::nullopt;
    std::size_t v;
    if (!started_) {
      started_ = true;
      v = 0;
      choice_[0] = 0;
    } else {
      // resume after the last emitted map
      v = nv - 1;
      ++choice_[v];
    }
    while (true) {
      const auto& cands = candidates(v);
      if (choice_[v] >= cands.size()) {
        if (v == 0) {
          done_ = true;
          return std::nullopt;
        }
        --v;
        ++choice_[v];
        continue;
      }
      images_[v] = cands[choice_[v]];
      if (!consistent(v)) {
        ++choice_[v];
        continue;
      }
      if (v + 1 == nv) {
        if (advance_[nv] == 4) return GridMap(topo_.k(), images_);
        ++choice_[v];
        continue;
      }
      ++v;
      choice_[v] = 0;
    }
  }

  std::vector<GridMap> all() {
    std::vector<GridMap> out;
    while (auto m = next()) out.push_back(*m);
    return out;
  }

private:
  const std::vector<Point2>& candidates(std::size_t v) const {
    return topo_.is_boundary_vertex(v) ? boundary_ : all_;
  }

  bool consistent(std::size_t v) {
    Rat adv = advance_[v];
    if (auto it = steps_by_vertex_.find(v); it != steps_by_vertex_.end())
      for (auto [a, b] : it->second) {
        auto s = side_advance(images_[a], images_[b]);
        if (!s || sgn(*s) < 0) return false;
        adv += *s;
      }
    if (adv > 4) return false;
    if (auto it = tris_by_vertex_.find(v); it != tris_by_vertex_.end())
      for (auto t : it->second) {
        auto tv = topo_.triangle(t);
        if (sgn(orient_value(images_[tv[0]], images_[tv[1]], images_[tv[2]])) < 0) return false;
        if (ceiling_) {
          auto [dx, dy] = grid_gradient(topo_, images_, t, p2_sub, p2_scale);
          Rat l = rat_max(Rat(rat_abs(dx.x) + rat_abs(dy.x)), Rat(rat_abs(dx.y) + rat_abs(dy.y)));
          if (!ceiling_->bounds(l)) return false;
        }
      }
    advance_[v + 1] = adv;
    return true;
  }

  GridTopology topo_;
  Rat delta_;
  std::optional<LemmaBound> ceiling_;
  std::vector<Point2> all_, boundary_;
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> steps_by_vertex_;
  std::map<std::size_t, std::vector<std::size_t>> tris_by_vertex_;
  std::vector<Point2> images_;
  std::vector<std::size_t> choice_;
  std::vector<Rat> advance_;
  bool started_ = false;
  bool done_ = false;
};

inline NetEnumerator enumerate_net(std::size_t k, const Rat& delta, const SearchSchedule& schedule) {
  return NetEnumerator(k, delta, schedule.L());
}

}  // namespace frechet
