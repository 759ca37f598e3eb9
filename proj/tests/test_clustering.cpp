#include "doctest.h"

#include "cknn/clustering.hpp"
#include "cknn/error.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace cknn;

namespace {

// Two tight pairs far apart on a line: {0, 0.1} and {5, 5.2}.
EdgeFiltration two_pairs() {
  return fixed_eps_filtration(pairwise_distances(PointCloud::from_rows({{0.0}, {0.1}, {5.0}, {5.2}})));
}

}  // namespace

TEST_CASE("components by depth-first search") {
  const auto g = Graph::from_edges(6, {{1, 0, 3}, {2, 3, 5}, {3, 1, 4}});
  const auto c = connected_components(g);
  CHECK(c.n_components == 3);
  CHECK(c.labels == std::vector<int>{0, 1, 2, 0, 1, 0});
  CHECK(connected_components(Graph(0)).n_components == 0);
}

TEST_CASE("labelling from arbitrary classes") {
  const auto c = ComponentLabeling::from_classes({7, 3, 7, 9, 3});
  CHECK(c.labels == std::vector<int>{0, 1, 0, 3, 1});
  CHECK(c.n_components == 3);
  CHECK(same_partition({5, 5, 2}, {0, 0, 1}));
  CHECK_FALSE(same_partition({5, 5, 2}, {0, 1, 1}));
}

TEST_CASE("binary search on two well separated pairs") {
  const auto f = two_pairs();
  CHECK(binary_search_clusters(f, 2) == 2);
  CHECK(binary_search_clusters(f, 3) == 1);
  CHECK(binary_search_clusters(f, 4) == 0);
  CHECK_THROWS_AS(binary_search_clusters(f, 1), InvalidParameter);
  CHECK_THROWS_AS(binary_search_clusters(f, 5), InvalidParameter);
}

TEST_CASE("binary search when the full filtration keeps enough components") {
  // Only the two short edges are present: the complete prefix still has 2
  // components, so every edge count qualifies.
  const EdgeFiltration f(4, {{0.1, 0, 1}, {0.2, 2, 3}}, FiltrationMethod::FixedEps);
  CHECK(binary_search_clusters(f, 2) == 2);
  const EdgeFiltration empty(3, {}, FiltrationMethod::FixedEps);
  CHECK(binary_search_clusters(empty, 3) == 0);
}

TEST_CASE("component transitions agree between union-find and bisection") {
  props::Gen gen(5);
  for (int rep = 0; rep < 100; ++rep) {
    const auto f = gen.filtration(gen.size(2, 40));
    const auto a = component_transitions(f);
    const auto b = component_transitions_bisect(f);
    REQUIRE(a.size() == b.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
      CHECK(a[t].edge_count == b[t].edge_count);
      CHECK(a[t].n_components == b[t].n_components);
    }
    for (const auto& t : a) CHECK(components_at_count(f, t.edge_count) == t.n_components);
  }
}

TEST_CASE("clustering window and persistence fraction") {
  const auto f = two_pairs();  // 6 pairs; truth partition holds for 2..3 edges
  std::size_t first = 0, last = 0;
  REQUIRE(clustering_window(f, {0, 0, 1, 1}, first, last));
  CHECK(first == 2);
  CHECK(last == 2);
  CHECK(clustering_persistence_fraction(f, {0, 0, 1, 1}) == doctest::Approx(1.0 / 6.0));
  CHECK(clustering_persistence_fraction(f, {0, 1, 0, 1}) == 0.0);
}

TEST_CASE("binary search matches a linear scan") {
  const auto r = props::binary_search_vs_linear_scan(150, 21);
  INFO(r.first_failure);
  CHECK(r.ok());
}

TEST_CASE("connected components match union-find") {
  const auto r = props::components_vs_union_find(150, 22);
  INFO(r.first_failure);
  CHECK(r.ok());
}
