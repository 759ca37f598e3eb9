#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cknn/geometry.hpp"

namespace cknn {

enum class FiltrationMethod { Cknn, Multiscale, FixedEps, KnnOr, KnnAnd };

const char* method_name(FiltrationMethod m);

struct Edge {
  double value;
  std::uint32_t i, j;  // i < j
};

/// All point pairs ordered by (value, i, j).
class EdgeFiltration {
 public:
  EdgeFiltration() = default;
  EdgeFiltration(std::size_t n_vertices, std::vector<Edge> edges, FiltrationMethod method);

  std::size_t n_vertices() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& operator[](std::size_t p) const { return edges_[p]; }
  FiltrationMethod method() const noexcept { return method_; }

  /// Number of edges with value < scale.
  std::size_t count_below(double scale) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  FiltrationMethod method_ = FiltrationMethod::FixedEps;
};

/// Undirected simple graph. Each adjacency entry carries the 1-based position
/// at which the edge entered its filtration (or its lexicographic rank when
/// the graph was not cut from a filtration).
class Graph {
 public:
  struct Neighbor {
    std::uint32_t v;
    std::uint32_t entry;
  };

  explicit Graph(std::size_t n = 0) : adj_(n) {}

  /// Edges are (i, j, entry) with i != j; duplicates rejected.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);

  std::size_t n_vertices() const noexcept { return adj_.size(); }
  std::size_t n_edges() const noexcept { return n_edges_; }
  const std::vector<Neighbor>& neighbors(std::size_t v) const { return adj_[v]; }
  bool has_edge(std::size_t a, std::size_t b) const;
  /// Sorted (i < j) edge list.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list() const;

 private:
  friend Graph graph_from_prefix(const EdgeFiltration&, std::size_t);
  void add(std::uint32_t a, std::uint32_t b, std::uint32_t entry);
  void finish();

  std::vector<std::vector<Neighbor>> adj_;
  std::size_t n_edges_ = 0;
};

/// Value d(i,j)/sqrt(rho(i) rho(j)). Tagged Cknn for knn bandwidths and
/// Multiscale otherwise.
EdgeFiltration cknn_filtration(const DistanceMatrix& d, const BandwidthProfile& rho);
EdgeFiltration fixed_eps_filtration(const DistanceMatrix& d);

/// Pairs ordered by the smallest k at which the kNN rule connects them, so
/// graph_at_scale(f, k + 0.5) == knn_graph(d, k, mode).
EdgeFiltration knn_filtration(const DistanceMatrix& d, bool and_mode);

Graph knn_graph(const DistanceMatrix& d, int k, bool and_mode);
Graph graph_at_scale(const EdgeFiltration& f, double scale);
Graph graph_at_count(const EdgeFiltration& f, std::size_t m_edges);

void write_edges_csv(const std::string& path, const EdgeFiltration& f);

}  // namespace cknn
