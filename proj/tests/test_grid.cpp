#include "frechet/grid.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace frechet;

namespace {

Point2 P(long x, long xd, long y, long yd) { return {make_rat(x, xd), make_rat(y, yd)}; }

GridMap corner_map() { return GridMap(1, {P(0, 1, 0, 1), P(1, 1, 0, 1), P(0, 1, 1, 1), P(1, 2, 1, 2)}); }

}  // namespace

TEST(EvalSurface, VertexReproduction) {
  auto s = GridSurface::from_function(MetricSpace::max_norm(3), 3, [](const Point2& p) {
    return Vec{p.x, p.y, Rat(p.x * p.y)};
  });
  EXPECT_EQ(s.eval(P(0, 1, 0, 1)), s.samples()[0]);
  for (std::size_t v = 0; v < s.topology().vertex_count(); ++v)
    EXPECT_EQ(s.eval(s.topology().point(v)), s.samples()[v]);
}

TEST(EvalSurface, LinearSurfaceIsReproduced) {
  GridSurface s(MetricSpace::euclidean(2), 1, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(s.eval(P(1, 2, 1, 2)), (Vec{Rat(1, 2), Rat(1, 2)}));
  EXPECT_EQ(s.eval(P(3, 4, 1, 4)), (Vec{Rat(3, 4), Rat(1, 4)}));
}

TEST(EvalSurface, TableSurfaceOnlyAtVertices) {
  auto t = MetricSpace::table(2, {0, 1, 1, 0});
  GridSurface s(t, 1, {{0}, {1}, {1}, {0}});
  EXPECT_EQ(s.eval(P(1, 1, 0, 1)), Vec{1});
  EXPECT_THROW(s.eval(P(1, 2, 0, 1)), std::domain_error);
}

TEST(EvalSurface, SampleCountValidated) {
  EXPECT_THROW(GridSurface(MetricSpace::max_norm(1), 1, {{0}, {1}, {2}}), std::invalid_argument);
  EXPECT_THROW(GridSurface(MetricSpace::max_norm(2), 1, {{0}, {1}, {2}, {3}}), dimension_error);
}

TEST(EvalMap, IdentityAndRotation) {
  auto id = GridMap::identity(3);
  auto rot = GridMap::rotation(3);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Point2 x = oracle::random_point(rng, 64);
    EXPECT_EQ(id.eval(x), x);
    EXPECT_EQ(rot.eval(x), (Point2{Rat(1 - x.y), x.x}));
  }
  EXPECT_EQ(rot.eval(P(1, 1, 0, 1)), P(1, 1, 1, 1));
  EXPECT_EQ(corner_map().eval(P(1, 1, 1, 1)), P(1, 2, 1, 2));
}

TEST(EvalMap, ImagesMustLieInSquare) {
  EXPECT_THROW(GridMap(1, {P(0, 1, 0, 1), P(3, 2, 0, 1), P(0, 1, 1, 1), P(1, 1, 1, 1)}), std::invalid_argument);
}

TEST(EvalMap, ContinuousAcrossEdges) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = oracle::random_grid_map(rng, 3, 16);
    auto pl = f.as_pl_map();
    for (std::size_t t = 0; t < f.topology().triangle_count(); ++t) {
      auto tri = f.topology().triangle_polygon(t);
      for (int e = 0; e < 3; ++e) {
        Rat s = oracle::random_rat(rng, 32);
        Point2 x = tri[e] + s * (tri[(e + 1) % 3] - tri[e]);
        Point2 here = pl.pieces()[t].map(x);
        for (std::size_t u = 0; u < pl.pieces().size(); ++u)
          if (in_convex(pl.pieces()[u].domain, x)) EXPECT_EQ(pl.pieces()[u].map(x), here);
        EXPECT_EQ(f.eval(x), here);
      }
    }
  }
}

TEST(Lipschitz, Examples) {
  EXPECT_EQ(lipschitz_constant(GridMap::identity(4)), 1);
  auto half = GridMap::from_function(3, [](const Point2& p) { return Point2{Rat(p.x / 2), p.y}; });
  EXPECT_EQ(lipschitz_constant(half), 1);
  // lower triangle: d/dx = (1,0), d/dy = (-1/2,1/2); upper: d/dx = (1/2,-1/2), d/dy = (0,1)
  EXPECT_EQ(lipschitz_constant(corner_map()), Rat(3, 2));
  EXPECT_EQ(oracle::sampled_lipschitz(corner_map(), 40), Rat(3, 2));
}

TEST(Lipschitz, SoundAndTightOnRandomMaps) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = oracle::random_grid_map(rng, 1 + trial % 3, 8);
    Rat L = lipschitz_constant(f);
    for (int i = 0; i < 100; ++i) {
      Point2 x = oracle::random_point(rng, 64), y = oracle::random_point(rng, 64);
      EXPECT_LE(dist_inf(f.eval(x), f.eval(y)), L * dist_inf(x, y));
    }
    EXPECT_GE(oracle::sampled_lipschitz(f, 24), L - pow2(-20));
  }
}

TEST(Lipschitz, SurfaceMaxNormAndEuclidean) {
  auto plane = GridSurface::from_function(MetricSpace::max_norm(3), 2, [](const Point2& p) {
    return Vec{p.x, p.y, Rat(0)};
  });
  EXPECT_EQ(lipschitz_constant(plane), 1);
  auto e = GridSurface::from_function(MetricSpace::euclidean(2), 2, [](const Point2& p) { return Vec{p.x, p.y}; });
  Rat L = lipschitz_constant(e);
  // Operator norm from the max norm to the Euclidean norm of the identity is sqrt 2.
  EXPECT_GE(L * L, 2);
  EXPECT_LE(L - Rat(14142136, 10000000), Rat(1, 1000000));
  auto table = GridSurface(MetricSpace::table(1, {0}), 1, {{0}, {0}, {0}, {0}});
  EXPECT_THROW(lipschitz_constant(table), std::invalid_argument);
}

TEST(Modulus, Rules) {
  EXPECT_EQ(modulus_from_lipschitz(Rat(1)).rule(5), 5u);
  EXPECT_EQ(modulus_from_lipschitz(Rat(3)).rule(5), 7u);
  EXPECT_EQ(modulus_from_lipschitz(Rat(1, 2)).rule(5), 5u);
  EXPECT_EQ(modulus_from_lipschitz(Rat(4)).rule(0), 2u);
  EXPECT_EQ(modulus_from_lipschitz(Rat(9, 2)).rule(0), 3u);
}

TEST(Modulus, ImpliesImageCloseness) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = oracle::random_grid_map(rng, 2, 8);
    auto mu = modulus_of(f);
    for (unsigned n = 0; n < 4; ++n) {
      Rat r = pow2(-static_cast<long>(mu.rule(n)));
      for (int i = 0; i < 30; ++i) {
        Point2 x = oracle::random_point(rng, 64);
        Point2 y{rat_min(Rat(1), rat_max(Rat(0), Rat(x.x + r * oracle::random_sign_rat(rng)))),
                 rat_min(Rat(1), rat_max(Rat(0), Rat(x.y + r * oracle::random_sign_rat(rng))))};
        EXPECT_LE(dist_inf(f.eval(x), f.eval(y)), pow2(-static_cast<long>(n)));
      }
    }
  }
}

TEST(SupDistance, Examples) {
  auto id = GridMap::identity(2);
  auto half = GridMap::from_function(2, [](const Point2& p) { return Point2{Rat(p.x / 2), p.y}; });
  EXPECT_EQ(sup_distance(id, id), 0);
  EXPECT_EQ(sup_distance(id, half), Rat(1, 2));
  EXPECT_EQ(sup_distance(id, GridMap::rotation(1)), 1);
}

TEST(SupDistance, MatchesDenseSamplingAcrossResolutions) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = oracle::random_grid_map(rng, 2, 8);
    auto b = oracle::random_grid_map(rng, 3, 8);
    Rat exact = sup_distance(a, b);
    Rat sampled = oracle::sampled_sup_distance(a, b, 24);
    EXPECT_LE(sampled, exact);
    // sampling mesh 1/24 contains every overlay vertex of the 2- and 3-grids
    EXPECT_EQ(sampled, exact);
  }
}

TEST(GridMap, RefinementIsExact) {
  std::mt19937_64 rng(13);
  auto f = oracle::random_grid_map(rng, 2, 8);
  auto g = f.refined(2);
  EXPECT_EQ(g.k(), 4u);
  EXPECT_EQ(sup_distance(f, g), 0);
  EXPECT_EQ(lipschitz_constant(f), lipschitz_constant(g));
}
