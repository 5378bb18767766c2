#pragma once

#include "frechet/grid.hpp"
#include "frechet/metric.hpp"
#include "frechet/rational.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace frechet {

namespace detail {

// Non-blank, non-comment lines split into tokens, each tagged with its
// 1-based line number.
class LineReader {
public:
  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) lines_.push_back({no, std::move(toks)});
    }
    last_ = no;
  }

  bool done() const { return pos_ >= lines_.size(); }

  const std::vector<std::string>& next(const std::string& what) {
    if (done()) throw parse_error("line " + std::to_string(last_ + 1) + ": unexpected end of file, expected " + what);
    return lines_[pos_++].second;
  }
  std::size_t line() const { return pos_ == 0 ? 1 : lines_[pos_ - 1].first; }

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error("line " + std::to_string(line()) + ": " + msg); }

  Rat rat(const std::string& tok) const {
    try {
      return parse_rat(tok);
    } catch (const parse_error& e) {
      fail(e.what());
    }
  }

  std::size_t count(const std::string& tok, const std::string& what) const {
    for (char c : tok)
      if (c < '0' || c > '9') fail("expected a non-negative integer for " + what + ", got '" + tok + "'");
    if (tok.empty() || tok.size() > 9) fail("bad " + what + " '" + tok + "'");
    return std::stoul(tok);
  }

  void expect_done() const {
    if (!done()) throw parse_error("line " + std::to_string(lines_[pos_].first) + ": unexpected trailing data");
  }

private:
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines_;
  std::size_t pos_ = 0;
  std::size_t last_ = 0;
};

inline void expect_header(LineReader& r, const std::string& magic) {
  const auto& h = r.next("header");
  if (h.size() != 2 || h[0] != magic || h[1] != "1") r.fail("expected header '" + magic + " 1'");
}

inline std::size_t read_grid(LineReader& r) {
  const auto& g = r.next("grid line");
  if (g.size() != 2 || g[0] != "grid") r.fail("expected 'grid <n>'");
  std::size_t n = r.count(g[1], "grid size");
  if (n == 0) r.fail("grid size must be positive");
  return n;
}

}  // namespace detail

inline GridSurface parse_surface(const std::string& text) {
  detail::LineReader r(text);
  detail::expect_header(r, "FSURF");
  const auto& m = r.next("metric line");
  MetricSpace space = MetricSpace::max_norm(1);
  std::size_t dim = 0;
  bool table = false;
  if (m.size() == 2 && (m[0] == "maxnorm" || m[0] == "euclid")) {
    dim = r.count(m[1], "dimension");
    if (dim == 0) r.fail("dimension must be positive");
    space = m[0] == "maxnorm" ? MetricSpace::max_norm(dim) : MetricSpace::euclidean(dim);
  } else if (m.size() == 2 && m[0] == "table") {
    std::size_t n = r.count(m[1], "table size");
    if (n == 0) r.fail("table size must be positive");
    std::vector<Rat> dist;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = r.next("table row");
      if (row.size() != n) r.fail("table row needs " + std::to_string(n) + " entries, got " + std::to_string(row.size()));
      for (const auto& t : row) dist.push_back(r.rat(t));
    }
    try {
      space = MetricSpace::table(n, std::move(dist));
    } catch (const std::invalid_argument& e) {
      r.fail(e.what());
    }
    dim = 1;
    table = true;
  } else {
    r.fail("expected 'maxnorm <d>', 'euclid <d>' or 'table <N>'");
  }
  std::size_t grid = detail::read_grid(r);
  std::vector<Vec> samples;
  for (std::size_t v = 0; v < (grid + 1) * (grid + 1); ++v) {
    const auto& row = r.next("sample line " + std::to_string(v + 1));
    if (row.size() != dim) r.fail("sample needs " + std::to_string(dim) + " values, got " + std::to_string(row.size()));
    Vec p;
    for (const auto& t : row) p.push_back(table ? Rat(static_cast<unsigned long>(r.count(t, "point index"))) : r.rat(t));
    try {
      space.check_point(p);
    } catch (const std::logic_error& e) {
      r.fail(e.what());
    }
    samples.push_back(std::move(p));
  }
  r.expect_done();
  return GridSurface(space, grid, std::move(samples));
}

inline GridMap parse_map(const std::string& text) {
  detail::LineReader r(text);
  detail::expect_header(r, "FMAP");
  std::size_t k = detail::read_grid(r);
  std::vector<Point2> images;
  for (std::size_t v = 0; v < (k + 1) * (k + 1); ++v) {
    const auto& row = r.next("image line " + std::to_string(v + 1));
    if (row.size() != 2) r.fail("image needs 2 values, got " + std::to_string(row.size()));
    Point2 p{r.rat(row[0]), r.rat(row[1])};
    if (!in_unit_square(p)) r.fail("image (" + row[0] + ", " + row[1] + ") lies outside [0,1]^2");
    images.push_back(p);
  }
  r.expect_done();
  return GridMap(k, std::move(images));
}

inline std::string print_surface(const GridSurface& s) {
  std::ostringstream out;
  out << "FSURF 1\n";
  const auto& sp = s.space();
  if (sp.is_max_norm()) out << "maxnorm " << sp.point_dim() << "\n";
  else if (sp.is_euclidean()) out << "euclid " << sp.point_dim() << "\n";
  else {
    const auto& t = sp.table_data();
    out << "table " << t.n << "\n";
    for (std::size_t i = 0; i < t.n; ++i) {
      for (std::size_t j = 0; j < t.n; ++j) out << (j ? " " : "") << t.at(i, j).get_str();
      out << "\n";
    }
  }
  out << "grid " << s.m() << "\n";
  for (const auto& p : s.samples()) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i].get_str();
    out << "\n";
  }
  return out.str();
}

inline std::string print_map(const GridMap& f) {
  std::ostringstream out;
  out << "FMAP 1\ngrid " << f.k() << "\n";
  for (const auto& p : f.images()) out << p.x.get_str() << " " << p.y.get_str() << "\n";
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GridSurface load_surface(const std::string& path) {
  try {
    return parse_surface(read_file(path));
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline GridMap load_map(const std::string& path) {
  try {
    return parse_map(read_file(path));
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

/// 64-bit FNV-1a of the map's canonical text form, as 16 hex digits.
inline std::string map_digest(const GridMap& f) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : print_map(f)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace frechet
