#pragma once

#include "frechet/autocert.hpp"
#include "frechet/boundary.hpp"
#include "frechet/objective.hpp"
#include "frechet/parallel.hpp"
#include "frechet/report.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace frechet {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

inline bool past(const Deadline& d) { return d && std::chrono::steady_clock::now() >= *d; }

struct SearchParams {
  std::size_t k = 2;
  std::size_t restarts = 2;
  std::uint64_t budget = 2000;  // objective evaluations
  std::uint64_t seed = 1;
  Rat tol = Rat(1, 100);
  std::optional<Rat> stop_at;  // stop once the best upper bound reaches this
  Deadline deadline;
  std::vector<std::pair<GridMap, GridMap>> extra_starts;
};

struct SearchResult {
  BoundReport report;
  std::optional<std::pair<GridMap, GridMap>> best;
  std::uint64_t evaluations = 0;
  bool timed_out = false;
};

namespace detail {

/// Seeded random certified perturbation of the identity on the k-grid:
/// interior vertices move freely, boundary vertices slide along their side.
inline GridMap random_start(std::mt19937_64& rng, std::size_t k) {
  GridTopology g(k);
  long den = static_cast<long>(16 * k);
  std::uniform_int_distribution<long> off(-3, 3);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Point2> im;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      Point2 p = g.point(v);
      std::size_t i = v % (k + 1), j = v / (k + 1);
      Rat dx = make_rat(off(rng), den), dy = make_rat(off(rng), den);
      if (i == 0 || i == k) dx = 0;
      if (j == 0 || j == k) dy = 0;
      Point2 q{Rat(p.x + dx), Rat(p.y + dy)};
      if (!in_unit_square(q)) q = p;
      im.push_back(q);
    }
    GridMap f(k, std::move(im));
    if (is_certified(f)) return f;
  }
  return GridMap::identity(k);
}

/// Candidate images for one vertex: boundary vertices slide by +-step along
/// the perimeter, interior vertices take the 8 king moves clipped to the
/// square.
inline std::vector<Point2> moves(const GridMap& f, std::size_t v, const Rat& step) {
  std::vector<Point2> out;
  const Point2& p = f.image(v);
  if (f.topology().is_boundary_vertex(v)) {
    Rat t = perimeter_param(p);
    for (int s : {-1, 1}) {
      Rat u = t + s * step;
      if (sgn(u) < 0) u += 4;
      if (u >= 4) u -= 4;
      out.push_back(perimeter_point(u));
    }
    return out;
  }
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy) {
      if (!dx && !dy) continue;
      Point2 q{Rat(p.x + dx * step), Rat(p.y + dy * step)};
      if (in_unit_square(q)) out.push_back(q);
    }
  return out;
}

inline GridMap with_image(const GridMap& f, std::size_t v, const Point2& p) {
  auto im = f.images();
  im[v] = p;
  return GridMap(f.k(), std::move(im));
}

}  // namespace detail

/// Local search over certified pairs on the k-grid. Every evaluated pair is a
/// certified homeomorphism pair, so each objective upper bound is a valid
/// upper bound on the distance.
inline SearchResult upper_bound_search(const GridSurface& A, const GridSurface& B, const SearchParams& params) {
  if (params.budget == 0) throw std::invalid_argument("search budget must be positive");
  if (params.k == 0) throw std::invalid_argument("grid resolution must be positive");
  SearchResult res;
  std::mt19937_64 rng(params.seed);
  const std::size_t k = params.k;

  std::vector<std::pair<GridMap, GridMap>> starts;
  auto id = GridMap::identity(k);
  starts.emplace_back(id, id);
  for (int q = 1; q < 4; ++q) starts.emplace_back(GridMap::rotation(k, q), id);
  for (int q = 1; q < 4; ++q) starts.emplace_back(id, GridMap::rotation(k, q));
  for (const auto& s : params.extra_starts) starts.push_back(s);
  for (std::size_t r = 0; r < params.restarts; ++r) {
    auto phi = detail::random_start(rng, k);
    auto psi = detail::random_start(rng, k);
    starts.emplace_back(std::move(phi), std::move(psi));
  }

  Rat best;
  auto done = [&]() {
    if (res.evaluations >= params.budget) return true;
    if (past(params.deadline)) {
      res.timed_out = true;
      return true;
    }
    return res.best && params.stop_at && best <= *params.stop_at;
  };
  auto evaluate = [&](const GridMap& phi, const GridMap& psi) {
    ++res.evaluations;
    Rat u = objective({A, B, phi, psi}, params.tol).upper();
    if (!res.best || u < best) {
      best = u;
      res.best = std::make_pair(phi, psi);
      res.report.offer(Side::Upper, u, Provenance::pair(phi, psi, params.tol), res.evaluations);
    }
    return u;
  };

  Rat min_step = Rat(1, static_cast<unsigned long>(2 * k)) / 64;
  // every start is evaluated once, then descents run best start first
  std::vector<std::pair<Rat, std::size_t>> order;
  for (std::size_t i = 0; i < starts.size() && !done(); ++i) {
    const auto& [phi0, psi0] = starts[i];
    if (phi0.k() != k || psi0.k() != k || !is_certified(phi0) || !is_certified(psi0)) continue;
    order.emplace_back(evaluate(phi0, psi0), i);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [start_value, idx] : order) {
    if (done()) break;
    std::pair<GridMap, GridMap> cur = starts[idx];
    Rat value = start_value;
    for (Rat step = Rat(1, static_cast<unsigned long>(2 * k)); step >= min_step && !done(); step /= 2) {
      while (!done()) {
        // best strictly improving move; ties keep the first in iteration order
        std::optional<std::pair<GridMap, GridMap>> choice;
        Rat choice_value = value;
        for (int side = 0; side < 2 && !done(); ++side) {
          const GridMap& f = side == 0 ? cur.first : cur.second;
          for (std::size_t v = 0; v < f.topology().vertex_count() && !done(); ++v)
            for (const auto& p : detail::moves(f, v, step)) {
              if (done()) break;
              GridMap g = detail::with_image(f, v, p);
              if (!is_certified(g)) continue;
              const GridMap& phi = side == 0 ? g : cur.first;
              const GridMap& psi = side == 0 ? cur.second : g;
              Rat u = evaluate(phi, psi);
              if (u < choice_value) {
                choice_value = u;
                choice = std::make_pair(phi, psi);
              }
            }
        }
        if (!choice) break;
        cur = std::move(*choice);
        value = choice_value;
      }
    }
  }
  return res;
}

struct EnumerateResult {
  Rat value;
  bool heuristic = true;
  std::size_t net_size = 0;
  std::uint64_t pairs = 0;
};

class net_too_large : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Minimum over all net pairs of the objective lower bound, minus 2^-n. The
/// net is only known to be dense enough for a certified bound when its
/// resolution matches the modulus schedule, which no feasible (k, delta)
/// reaches; the result is therefore always flagged heuristic.
inline EnumerateResult lower_bound_enumerate(const GridSurface& A, const GridSurface& B, unsigned n, std::size_t k,
                                             const Rat& delta, std::size_t cap = 4096) {
  SearchSchedule sched{n, modulus_of(A), modulus_of(B)};
  auto net = enumerate_net(k, delta, sched);
  std::vector<GridMap> maps;
  while (auto m = net.next()) {
    if (maps.size() >= cap)
      throw net_too_large("net at k=" + std::to_string(k) + ", delta=" + to_string(delta) + " exceeds the cap of " +
                          std::to_string(cap) + " maps");
    maps.push_back(std::move(*m));
  }
  if (maps.empty()) throw std::logic_error("empty net");
  const std::size_t N = maps.size();
  // rtol only matters for Euclidean square roots; the lower side stays sound
  Rat rtol = pow2(-static_cast<long>(n) - 8);
  std::vector<Rat> row_min(N);
  parallel_for(N, [&](std::size_t i) {
    Rat m;
    for (std::size_t j = 0; j < N; ++j) {
      Rat v = objective({A, B, maps[i], maps[j]}, rtol).lower();
      if (j == 0 || v < m) m = v;
    }
    row_min[i] = m;
  });
  Rat best = row_min[0];
  for (const auto& r : row_min) best = rat_min(best, r);
  return {Rat(best - pow2(-static_cast<long>(n))), true, N, static_cast<std::uint64_t>(N) * N};
}

}  // namespace frechet
