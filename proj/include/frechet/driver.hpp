#pragma once

#include "frechet/curves.hpp"
#include "frechet/hausdorff.hpp"
#include "frechet/search.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

namespace frechet {

struct NetRequest {
  unsigned n;
  std::size_t k;
  unsigned long inv_delta;
};

struct DriverParams {
  Rat tol = Rat(1, 100);
  std::size_t k_max = 2;
  std::size_t restarts = 2;
  std::uint64_t budget = 2000;  // objective evaluations per resolution
  std::uint64_t seed = 1;
  std::vector<NetRequest> nets;
  std::size_t net_cap = 4096;
  std::optional<double> time_limit_s;
  // called after every tightening, in order
  std::function<void(const BoundEntry&)> on_entry;
};

struct DriverResult {
  BoundReport report;
  bool converged = false;
  bool timed_out = false;
  std::vector<std::string> skipped;  // phases that could not run, with reasons
};

/// Converging enclosure of the Fréchet distance between two surfaces. The
/// enclosure is sound after every step; it stops once the width is at most
/// tol, or when the time limit is hit (then marked not converged).
inline DriverResult frechet_distance(const GridSurface& A, const GridSurface& B, const DriverParams& params) {
  if (sgn(params.tol) <= 0) throw std::invalid_argument("tolerance must be positive");
  if (!A.space().same_as(B.space())) throw std::invalid_argument("surfaces live in different spaces");
  DriverResult res;
  auto& rep = res.report;
  Deadline deadline;
  if (params.time_limit_s)
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(*params.time_limit_s));

  std::size_t emitted = 0;
  auto flush = [&]() {
    for (; emitted < rep.history().size(); ++emitted)
      if (params.on_entry) params.on_entry(rep.history()[emitted]);
  };
  auto converged = [&]() {
    auto w = rep.enclosure().width();
    return w && *w <= params.tol;
  };

  rep.offer(Side::Lower, Rat(0), Provenance::trivial());
  flush();
  bool table = A.space().is_table();
  if (table) {
    res.skipped.push_back("hausdorff: table metric");
    res.skipped.push_back("boundary curves: table metric");
  } else {
    auto h = hausdorff_images(A, B, params.tol);
    rep.offer(Side::Lower, h.lower(), Provenance::geometric(Source::HausdorffImages, params.tol));
    flush();
    if (!past(deadline)) {
      auto b = boundary_lower_bound(A, B, params.tol);
      rep.offer(Side::Lower, b.lower(), Provenance::geometric(Source::BoundaryCurves, params.tol));
      flush();
    }
  }

  std::optional<std::pair<GridMap, GridMap>> best;
  for (std::size_t k = 1; k <= params.k_max && !converged(); ++k) {
    if (past(deadline)) {
      res.timed_out = true;
      break;
    }
    SearchParams sp;
    sp.k = k;
    sp.restarts = params.restarts;
    sp.budget = params.budget;
    sp.seed = params.seed + k;
    sp.tol = params.tol;
    sp.stop_at = Rat(rep.enclosure().lower() + params.tol);
    sp.deadline = deadline;
    // the best pair so far, refined onto the finer grid, is the same map
    if (best && k % best->first.k() == 0)
      sp.extra_starts.emplace_back(best->first.refined(k / best->first.k()), best->second.refined(k / best->second.k()));
    auto s = upper_bound_search(A, B, sp);
    for (const auto& e : s.report.history()) rep.offer(e.side, e.bound, e.provenance, e.work);
    flush();
    if (s.best) best = s.best;
    if (s.timed_out) res.timed_out = true;
  }

  for (const auto& req : params.nets) {
    if (past(deadline)) {
      res.timed_out = true;
      break;
    }
    Rat delta(1, req.inv_delta);
    try {
      auto e = lower_bound_enumerate(A, B, req.n, req.k, delta, params.net_cap);
      rep.offer_heuristic(e.value, Provenance::net(req.n, req.k, delta, e.net_size), e.pairs);
    } catch (const std::exception& ex) {
      res.skipped.push_back("net n=" + std::to_string(req.n) + " k=" + std::to_string(req.k) +
                            " 1/delta=" + std::to_string(req.inv_delta) + ": " + ex.what());
    }
  }

  res.converged = converged() && !res.timed_out;
  rep.converged = res.converged;
  return res;
}

}  // namespace frechet
