#pragma once

#include "frechet/enclosure.hpp"
#include "frechet/grid.hpp"
#include "frechet/io.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace frechet {

enum class Side { Lower, Upper };
enum class Source { CertifiedPair, NetMinimum, HausdorffImages, BoundaryCurves, Trivial };

inline const char* side_name(Side s) { return s == Side::Lower ? "lower" : "upper"; }
inline const char* source_name(Source s) {
  switch (s) {
    case Source::CertifiedPair: return "CertifiedPair";
    case Source::NetMinimum: return "NetMinimum";
    case Source::HausdorffImages: return "HausdorffImages";
    case Source::BoundaryCurves: return "BoundaryCurves";
    case Source::Trivial: return "Trivial";
  }
  return "?";
}

/// Everything needed to re-derive a bound.
struct Provenance {
  Source source = Source::Trivial;
  std::optional<GridMap> phi, psi;  // CertifiedPair
  std::string phi_digest, psi_digest;
  unsigned n = 0;  // NetMinimum
  std::size_t k = 0;
  Rat delta;
  std::size_t net_size = 0;
  Rat tol;  // precision the bound was computed with

  static Provenance trivial() { return {}; }
  static Provenance pair(const GridMap& phi, const GridMap& psi, const Rat& tol) {
    Provenance p;
    p.source = Source::CertifiedPair;
    p.phi = phi;
    p.psi = psi;
    p.phi_digest = map_digest(phi);
    p.psi_digest = map_digest(psi);
    p.tol = tol;
    return p;
  }
  static Provenance geometric(Source s, const Rat& tol) {
    Provenance p;
    p.source = s;
    p.tol = tol;
    return p;
  }
  static Provenance net(unsigned n, std::size_t k, const Rat& delta, std::size_t size) {
    Provenance p;
    p.source = Source::NetMinimum;
    p.n = n;
    p.k = k;
    p.delta = delta;
    p.net_size = size;
    return p;
  }
};

struct BoundEntry {
  Side side;
  Rat bound;
  Provenance provenance;
  std::uint64_t work = 0;
  double elapsed_ms = 0;
};

/// A streamed enclosure with the provenance of every tightening. Bounds that
/// do not tighten are dropped; bounds flagged heuristic are kept apart and
/// never enter the enclosure.
class BoundReport {
public:
  BoundReport() : start_(std::chrono::steady_clock::now()) {}

  const Enclosure& enclosure() const { return enclosure_; }
  const std::vector<BoundEntry>& history() const { return history_; }
  const std::vector<BoundEntry>& heuristic() const { return heuristic_; }
  bool converged = false;

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

  /// Records a sound bound; returns whether it tightened the enclosure.
  bool offer(Side side, const Rat& bound, Provenance prov, std::uint64_t work = 0) {
    std::optional<Rat> lo, hi;
    (side == Side::Lower ? lo : hi) = bound;
    auto moved = enclosure_.tighten(lo, hi, work);
    if (!moved.lower && !moved.upper) return false;
    history_.push_back({side, bound, std::move(prov), work, elapsed_ms()});
    return true;
  }

  void offer_heuristic(const Rat& bound, Provenance prov, std::uint64_t work = 0) {
    heuristic_.push_back({Side::Lower, bound, std::move(prov), work, elapsed_ms()});
  }

  void merge(const BoundReport& other) {
    for (const auto& e : other.history_) offer(e.side, e.bound, e.provenance, e.work);
    for (const auto& e : other.heuristic_) heuristic_.push_back(e);
  }

private:
  Enclosure enclosure_;
  std::vector<BoundEntry> history_;
  std::vector<BoundEntry> heuristic_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace frechet
