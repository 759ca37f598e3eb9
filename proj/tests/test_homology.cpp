#include "doctest.h"

#include <cmath>
#include <limits>

#include "cknn/error.hpp"
#include "cknn/homology.hpp"
#include "support/properties.hpp"

using namespace cknn;

namespace {

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  std::uint32_t r = 1;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) e.push_back({static_cast<double>(r++), i, j});
  return Graph::from_edges(n, e);
}

}  // namespace

TEST_CASE("4-cycle has one loop") {
  const auto g = Graph::from_edges(4, {{1, 0, 1}, {2, 1, 2}, {3, 2, 3}, {4, 0, 3}});
  const auto c = vr_complex(g, 2);
  CHECK(c.count(0) == 4);
  CHECK(c.count(1) == 4);
  CHECK(c.count(2) == 0);
  CHECK(betti_numbers(c, 1).betti == std::vector<std::size_t>{1, 1});
}

TEST_CASE("complete graph on 5 vertices") {
  const auto c = vr_complex(complete(5), 3);
  CHECK(c.count(0) == 5);
  CHECK(c.count(1) == 10);
  CHECK(c.count(2) == 10);
  CHECK(c.count(3) == 5);
  CHECK(euler_characteristic(c) == 0);
  CHECK(betti_numbers(c, 2).betti == std::vector<std::size_t>{1, 0, 0});
  // Truncated at dimension 3, the boundary of the 4-simplex is a 3-sphere.
  CHECK(truncated_betti_numbers(c).betti == std::vector<std::size_t>{1, 0, 0, 1});
}

TEST_CASE("octahedron encloses a void") {
  // Six vertices, all pairs except the three antipodal ones.
  std::vector<Edge> e;
  std::uint32_t r = 1;
  for (std::uint32_t i = 0; i < 6; ++i)
    for (std::uint32_t j = i + 1; j < 6; ++j)
      if (j != i + 3) e.push_back({static_cast<double>(r++), i, j});
  const auto c = vr_complex(Graph::from_edges(6, e), 3);
  CHECK(c.count(2) == 8);
  CHECK(c.count(3) == 0);
  CHECK(betti_numbers(c, 2).betti == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("betti contract and simplex cap") {
  const auto c = vr_complex(complete(4), 2);
  CHECK_THROWS_AS(betti_numbers(c, 2), ContractError);
  CHECK_THROWS_AS(vr_complex(complete(30), 2, 100), ResourceLimit);
  const auto d = pairwise_distances(PointCloud::from_rows({{0.0}, {1.0}, {2.0}, {4.0}, {8.0}}));
  CHECK_THROWS_AS(persistent_homology(fixed_eps_filtration(d), 2, 10), ResourceLimit);
  CHECK(simplex_estimate(5, 2) >= 5 + 10 + 10);
}

TEST_CASE("collinear points: H0 bars") {
  // Points 0, 1, 10: merges at 1 and 9, one class lives forever.
  const auto d = pairwise_distances(PointCloud::from_rows({{0.0}, {1.0}, {10.0}}));
  const auto b = persistent_homology(fixed_eps_filtration(d), 2);
  const auto v = b.visible();
  REQUIRE(v.size() == 3);
  CHECK(v[0].dim == 0);
  CHECK(v[0].birth == 0.0);
  CHECK(v[0].death == 1.0);
  CHECK(v[1].death == 9.0);
  CHECK(std::isinf(v[2].death));
}

TEST_CASE("unit square: one H1 bar from 1 to sqrt 2") {
  const auto d = pairwise_distances(PointCloud::from_rows({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}));
  const auto b = persistent_homology(fixed_eps_filtration(d), 2);
  std::size_t h1 = 0;
  for (const auto& bar : b.visible())
    if (bar.dim == 1) {
      ++h1;
      CHECK(bar.birth == 1.0);
      CHECK(bar.death == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
  CHECK(h1 == 1);
  CHECK(b.betti_at_count(4).betti == std::vector<std::size_t>{1, 1});
  CHECK(b.betti_at_count(5).betti == std::vector<std::size_t>{1, 0});
}

TEST_CASE("betti sequence agrees with per-count queries and complexes") {
  props::Gen gen(8);
  for (int rep = 0; rep < 30; ++rep) {
    const auto f = gen.filtration(gen.size(3, 14));
    const auto b = persistent_homology(f, 2);
    const auto seq = b.betti_sequence();
    REQUIRE(seq.size() == f.size() + 1);
    for (std::size_t m = 0; m <= f.size(); ++m) {
      CHECK(seq[m] == b.betti_at_count(m));
      const auto c = vr_complex(graph_at_count(f, m), 2);
      CHECK(betti_numbers(c, 1) == seq[m]);
    }
  }
}

TEST_CASE("stable interval on two far clusters") {
  // Two tight triangles far apart: (2,0) holds from the fourth edge (two
  // connected V shapes) until the first cross edge at distance 49.9.
  const auto d = pairwise_distances(PointCloud::from_rows(
      {{0.0, 0.0}, {0.1, 0.0}, {0.0, 0.1}, {50.0, 0.0}, {50.1, 0.0}, {50.0, 0.1}}));
  const auto f = fixed_eps_filtration(d);
  const auto b = persistent_homology(f, 2);
  const auto s = stable_interval(b, f);
  CHECK(s.betti.betti == std::vector<std::size_t>{2, 0});
  CHECK(s.first_count == 4);
  CHECK(s.last_count == 6);
  CHECK(s.fraction == doctest::Approx(3.0 / 15.0));
  CHECK(s.scale_lo == doctest::Approx(0.1));
  CHECK(s.scale_hi == doctest::Approx(49.9));
  CHECK(graph_at_scale(f, 0.10001).n_edges() == 4);
  CHECK(homology_persistence_fraction(b, BettiVector{{2, 0}}) == doctest::Approx(3.0 / 15.0));
}

TEST_CASE("bars alive at each count match direct Betti numbers") {
  const auto r = props::barcode_vs_direct_betti(40, 31);
  INFO(r.first_failure);
  CHECK(r.ok());
}

TEST_CASE("Euler characteristic identity") {
  const auto r = props::euler_identity(60, 32);
  INFO(r.first_failure);
  CHECK(r.ok());
}
