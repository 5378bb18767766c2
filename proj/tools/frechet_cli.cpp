#include "frechet/frechet.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

using namespace frechet;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kParse = 1, kBudget = 2, kUndefined = 3 };

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Point2 parse_point(const std::string& s, const std::string& what) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw parse_error(what + ": expected 'x,y', got '" + s + "'");
  return {parse_rat(parts[0]), parse_rat(parts[1])};
}

Json point_json(const Point2& p) { return Json::array({to_string(p.x), to_string(p.y)}); }

Json provenance_json(const Provenance& p) {
  Json j;
  j["source"] = source_name(p.source);
  switch (p.source) {
    case Source::CertifiedPair:
      j["phi_digest"] = p.phi_digest;
      j["psi_digest"] = p.psi_digest;
      j["k"] = p.phi->k();
      j["phi"] = print_map(*p.phi);
      j["psi"] = print_map(*p.psi);
      j["tol"] = to_string(p.tol);
      break;
    case Source::NetMinimum:
      j["n"] = p.n;
      j["k"] = p.k;
      j["delta"] = to_string(p.delta);
      j["net_size"] = p.net_size;
      break;
    case Source::HausdorffImages:
    case Source::BoundaryCurves: j["tol"] = to_string(p.tol); break;
    case Source::Trivial: break;
  }
  return j;
}

Json entry_json(const BoundEntry& e) {
  Json j;
  j["bound"] = to_string(e.bound);
  j["side"] = side_name(e.side);
  j["provenance"] = provenance_json(e.provenance);
  j["elapsed_ms"] = e.elapsed_ms;
  return j;
}

std::string entry_text(const BoundEntry& e) {
  std::ostringstream out;
  out << side_name(e.side) << " " << to_string(e.bound) << " " << source_name(e.provenance.source);
  if (e.provenance.source == Source::CertifiedPair)
    out << " phi=" << e.provenance.phi_digest << " psi=" << e.provenance.psi_digest;
  return out.str();
}

NetRequest parse_net(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 3) throw parse_error("--net: expected 'n,k,invdelta', got '" + s + "'");
  try {
    long n = std::stol(parts[0]), k = std::stol(parts[1]), inv = std::stol(parts[2]);
    if (n < 0 || k < 1 || inv < 1) throw std::out_of_range("net parameters");
    return {static_cast<unsigned>(n), static_cast<std::size_t>(k), static_cast<unsigned long>(inv)};
  } catch (const std::logic_error&) {
    throw parse_error("--net: bad parameters '" + s + "'");
  }
}

Rat parse_positive(const std::string& s, const std::string& what) {
  Rat r = parse_rat(s);
  if (sgn(r) <= 0) throw parse_error(what + " must be positive");
  return r;
}

struct BoundArgs {
  std::string a, b, tol = "1/100", emit = "json";
  std::optional<double> budget;
  std::size_t k = 2, restarts = 2;
  std::uint64_t seed = 1, evals = 2000;
  std::vector<std::string> nets;
};

int cmd_bound(const BoundArgs& args) {
  auto A = load_surface(args.a);
  auto B = load_surface(args.b);
  if (!A.space().same_as(B.space())) throw parse_error("surfaces use different metric spaces");
  DriverParams p;
  p.tol = parse_positive(args.tol, "--tol");
  p.k_max = args.k;
  p.restarts = args.restarts;
  p.seed = args.seed;
  p.budget = args.evals;
  p.time_limit_s = args.budget;
  for (const auto& n : args.nets) p.nets.push_back(parse_net(n));
  bool text = args.emit == "text";
  if (text) p.on_entry = [](const BoundEntry& e) { std::cout << entry_text(e) << std::endl; };
  auto r = frechet_distance(A, B, p);
  const auto& enc = r.report.enclosure();
  if (text) {
    for (const auto& h : r.report.heuristic()) std::cout << "heuristic " << to_string(h.bound) << " NetMinimum\n";
    for (const auto& s : r.skipped) std::cout << "skipped " << s << "\n";
    std::cout << "enclosure [" << to_string(enc.lower()) << ", " << (enc.has_upper() ? to_string(enc.upper()) : "inf")
              << "] " << (r.converged ? "converged" : "not converged") << "\n";
  } else {
    Json j;
    j["lower"] = to_string(enc.lower());
    j["upper"] = enc.has_upper() ? Json(to_string(enc.upper())) : Json(nullptr);
    j["converged"] = r.converged;
    j["timed_out"] = r.timed_out;
    j["history"] = Json::array();
    for (const auto& e : r.report.history()) j["history"].push_back(entry_json(e));
    j["heuristic"] = Json::array();
    for (const auto& e : r.report.heuristic()) j["heuristic"].push_back(entry_json(e));
    j["skipped"] = r.skipped;
    Json params;
    params["a"] = args.a;
    params["b"] = args.b;
    params["tol"] = to_string(p.tol);
    params["budget_s"] = args.budget ? Json(*args.budget) : Json(nullptr);
    params["k"] = args.k;
    params["restarts"] = args.restarts;
    params["seed"] = args.seed;
    params["evals"] = args.evals;
    params["nets"] = args.nets;
    params["threads"] = thread_count();
    j["params"] = params;
    std::cout << j.dump(2) << "\n";
  }
  return r.converged ? kOk : kBudget;
}

struct DegreeArgs {
  std::string map, region, target, emit = "text";
  std::size_t cell_res = 0;
};

Region parse_region(const std::string& spec, std::size_t default_res) {
  if (spec.empty()) return Region::square();
  if (spec.rfind("cells:", 0) == 0) {
    std::vector<Region::Cell> cells;
    for (const auto& c : split(spec.substr(6), ';')) {
      auto ij = split(c, ',');
      if (ij.size() != 2) throw parse_error("--region: bad cell '" + c + "'");
      try {
        long i = std::stol(ij[0]), j = std::stol(ij[1]);
        if (i < 0 || j < 0) throw std::out_of_range("cell");
        cells.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
      } catch (const std::logic_error&) {
        throw parse_error("--region: bad cell '" + c + "'");
      }
    }
    return Region::cells(default_res, std::move(cells));
  }
  if (spec.rfind("poly:", 0) == 0) {
    Polygon poly;
    for (const auto& v : split(spec.substr(5), ';')) poly.push_back(parse_point(v, "--region"));
    return Region::polygon(std::move(poly));
  }
  throw parse_error("--region: expected 'cells:i,j;...' or 'poly:x,y;...'");
}

int cmd_degree(const DegreeArgs& args) {
  auto f = load_map(args.map);
  Region region = [&] {
    try {
      return parse_region(args.region, args.cell_res ? args.cell_res : f.k());
    } catch (const std::invalid_argument& e) {
      throw parse_error(std::string("--region: ") + e.what());
    }
  }();
  Point2 y = parse_point(args.target, "--target");
  DegreeResult r;
  try {
    r = degree(make_query(f, std::move(region), y));
  } catch (const degree_undefined& e) {
    std::cerr << e.what() << "\n";
    return kUndefined;
  }
  if (args.emit == "json") {
    Json j;
    j["degree"] = r.value;
    if (r.witness) {
      j["witness"]["domain"] = Json::array();
      for (const auto& p : r.witness->domain) j["witness"]["domain"].push_back(point_json(p));
      j["witness"]["preimage"] = point_json(r.witness->preimage);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "degree " << r.value << "\n";
    if (r.witness) {
      std::cout << "witness preimage " << to_string(r.witness->preimage.x) << " " << to_string(r.witness->preimage.y)
                << " in piece";
      for (const auto& p : r.witness->domain) std::cout << " (" << to_string(p.x) << "," << to_string(p.y) << ")";
      std::cout << "\n";
    }
  }
  return kOk;
}

Json violation_json(const GridMap& f, const Violation& v) {
  Json j;
  j["status"] = "violation";
  j["kind"] = kind_name(v.kind);
  j["detail"] = v.detail;
  switch (v.kind) {
    case ViolationKind::NotBoundaryPreserving:
      j["point"] = point_json(v.point);
      j["image"] = point_json(v.image);
      break;
    case ViolationKind::BoundaryNotMonotone:
      j["from"] = point_json(v.from);
      j["to"] = point_json(v.to);
      j["advance"] = to_string(v.advance);
      break;
    case ViolationKind::NotSurjective:
      j["centre"] = point_json(v.centre);
      j["radius"] = to_string(v.radius);
      break;
    case ViolationKind::DegreeSum:
      j["resolution"] = v.resolution;
      j["target"] = point_json(v.target);
      j["family"] = v.family;
      j["degrees"] = v.degrees;
      break;
  }
  j["rechecked"] = recheck(f, v);
  return j;
}

int cmd_autocert(const std::string& path, std::size_t resolution) {
  auto f = load_map(path);
  if (resolution == 0) resolution = 4 * f.k();
  Json j;
  auto c = certify_homeomorphism(f);
  if (c.cert) {
    j["status"] = "certified";
    Rat min_det = c.cert->determinants.front();
    for (const auto& d : c.cert->determinants) min_det = rat_min(min_det, d);
    j["triangles"] = c.cert->determinants.size();
    j["min_determinant"] = to_string(min_det);
    j["boundary_vertices"] = c.cert->itinerary.size();
  } else {
    auto r = falsify_pseudoautomorphism(f, resolution);
    if (auto* v = std::get_if<Violation>(&r)) {
      j = violation_json(f, *v);
      j["all_violations"] = Json::array();
      for (const auto& w : falsify_all(f, resolution)) j["all_violations"].push_back(violation_json(f, w));
    } else {
      j["status"] = "no_violation_at_resolution";
      j["resolution"] = resolution;
    }
    j["certificate_failures"] = c.failures;
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_boundary_lb(const std::string& a, const std::string& b, const std::string& tol_s) {
  auto A = load_surface(a);
  auto B = load_surface(b);
  if (!A.space().same_as(B.space())) throw parse_error("surfaces use different metric spaces");
  if (A.space().is_table()) throw parse_error("boundary curves need a max-norm or Euclidean space");
  Rat tol = parse_positive(tol_s, "--tol");
  BoundReport rep;
  rep.offer(Side::Lower, Rat(0), Provenance::trivial());
  auto e = boundary_lower_bound(A, B, tol);
  rep.offer(Side::Lower, e.lower(), Provenance::geometric(Source::BoundaryCurves, tol));
  Json j;
  j["lower"] = to_string(rep.enclosure().lower());
  j["upper"] = nullptr;
  j["converged"] = true;
  j["boundary_curves"] = {{"lower", to_string(e.lower())}, {"upper", to_string(e.upper())}};
  j["history"] = Json::array();
  for (const auto& h : rep.history()) j["history"].push_back(entry_json(h));
  j["params"] = {{"a", a}, {"b", b}, {"tol", to_string(tol)}};
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Validated enclosures of the Fréchet distance between PL grid surfaces"};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* sb = app.add_subcommand("bound", "Enclose the Fréchet distance between two surfaces");
  sb->add_option("A", bound.a, "First surface file")->required();
  sb->add_option("B", bound.b, "Second surface file")->required();
  sb->add_option("--tol", bound.tol, "Target enclosure width (rational)");
  sb->add_option("--budget", bound.budget, "Wall-clock limit in seconds");
  sb->add_option("--k", bound.k, "Largest search grid resolution");
  sb->add_option("--restarts", bound.restarts, "Random restarts per resolution");
  sb->add_option("--seed", bound.seed, "Random seed");
  sb->add_option("--evals", bound.evals, "Objective evaluations per resolution");
  sb->add_option("--net", bound.nets, "Net enumeration 'n,k,invdelta' (repeatable, heuristic)");
  sb->add_option("--emit", bound.emit, "Output format")->check(CLI::IsMember({"json", "text"}));

  DegreeArgs deg;
  auto* sd = app.add_subcommand("degree", "Brouwer degree of a grid map");
  sd->add_option("map", deg.map, "Map file")->required();
  sd->add_option("--region", deg.region, "cells:i,j;... or poly:x,y;... (default: whole square)");
  sd->add_option("--cell-res", deg.cell_res, "Resolution of cell regions (default: map grid)");
  sd->add_option("--target", deg.target, "Target point x,y")->required();
  sd->add_option("--emit", deg.emit, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string cert_map;
  std::size_t cert_res = 0;
  auto* sa = app.add_subcommand("autocert", "Certify or falsify a map as a reparametrisation");
  sa->add_option("map", cert_map, "Map file")->required();
  sa->add_option("--resolution", cert_res, "Falsifier cell resolution (default: 4k)");

  std::string la, lb, ltol = "1/100";
  auto* sl = app.add_subcommand("boundary-lb", "Lower bound from the boundary curves");
  sl->add_option("A", la, "First surface file")->required();
  sl->add_option("B", lb, "Second surface file")->required();
  sl->add_option("--tol", ltol, "Target width (rational)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*sb) return cmd_bound(bound);
    if (*sd) return cmd_degree(deg);
    if (*sa) return cmd_autocert(cert_map, cert_res);
    if (*sl) return cmd_boundary_lb(la, lb, ltol);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kParse;
}
