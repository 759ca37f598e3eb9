#include "cknn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "cknn/error.hpp"
#include "cknn/io.hpp"

namespace cknn {

const char* method_name(FiltrationMethod m) {
  switch (m) {
    case FiltrationMethod::Cknn: return "cknn";
    case FiltrationMethod::Multiscale: return "multiscale";
    case FiltrationMethod::FixedEps: return "fixed_eps";
    case FiltrationMethod::KnnOr: return "knn_or";
    case FiltrationMethod::KnnAnd: return "knn_and";
  }
  return "?";
}

static bool edge_less(const Edge& a, const Edge& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

EdgeFiltration::EdgeFiltration(std::size_t n_vertices, std::vector<Edge> edges,
                               FiltrationMethod method)
    : n_(n_vertices), edges_(std::move(edges)), method_(method) {
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i == e.j || e.j >= n_) throw InvalidInput("filtration: invalid edge endpoints");
    if (std::isnan(e.value) || e.value < 0.0)
      throw InvalidInput("filtration: edge values must be nonnegative");
  }
  std::sort(edges_.begin(), edges_.end(), edge_less);
  for (std::size_t p = 1; p < edges_.size(); ++p)
    if (edges_[p].i == edges_[p - 1].i && edges_[p].j == edges_[p - 1].j &&
        edges_[p].value == edges_[p - 1].value)
      throw InvalidInput("filtration: duplicate pair");
}

std::size_t EdgeFiltration::count_below(double scale) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), scale,
                             [](const Edge& e, double s) { return e.value < s; });
  return static_cast<std::size_t>(it - edges_.begin());
}

void Graph::add(std::uint32_t a, std::uint32_t b, std::uint32_t entry) {
  adj_[a].push_back({b, entry});
  adj_[b].push_back({a, entry});
  ++n_edges_;
}

void Graph::finish() {
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end(), [](const Neighbor& x, const Neighbor& y) { return x.v < y.v; });
    for (std::size_t t = 1; t < nb.size(); ++t)
      if (nb[t].v == nb[t - 1].v) throw InvalidInput("graph: duplicate edge");
  }
}

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (const auto& e : edges) {
    if (e.i == e.j || e.i >= n || e.j >= n) throw InvalidInput("graph: invalid edge");
    g.add(e.i, e.j, static_cast<std::uint32_t>(e.value));
  }
  g.finish();
  return g;
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
  const auto& nb = adj_[a];
  auto it = std::lower_bound(nb.begin(), nb.end(), b,
                             [](const Neighbor& x, std::size_t v) { return x.v < v; });
  return it != nb.end() && it->v == b;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edge_list() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(n_edges_);
  for (std::uint32_t a = 0; a < adj_.size(); ++a)
    for (const auto& nb : adj_[a])
      if (a < nb.v) out.emplace_back(a, nb.v);
  return out;
}

Graph graph_from_prefix(const EdgeFiltration& f, std::size_t m) {
  Graph g(f.n_vertices());
  for (std::size_t p = 0; p < m; ++p)
    g.add(f[p].i, f[p].j, static_cast<std::uint32_t>(p + 1));
  g.finish();
  return g;
}

EdgeFiltration cknn_filtration(const DistanceMatrix& d, const BandwidthProfile& rho) {
  const std::size_t n = d.size();
  if (rho.size() != n) throw ContractError("bandwidth profile length differs from point count");
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rho.rho[i] > 0.0))
      throw DegenerateBandwidth(i, "bandwidth is not positive at point " + std::to_string(i));
    s[i] = std::sqrt(rho.rho[i]);
  }
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) edges.push_back({d(i, j) / (s[i] * s[j]), i, j});
  auto method = rho.source == BandwidthProfile::Source::Knn ? FiltrationMethod::Cknn
                                                            : FiltrationMethod::Multiscale;
  return EdgeFiltration(n, std::move(edges), method);
}

EdgeFiltration fixed_eps_filtration(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) edges.push_back({d(i, j), i, j});
  return EdgeFiltration(n, std::move(edges), FiltrationMethod::FixedEps);
}

// rank(i, j) = 1 + #{l != i : d(i,l) < d(i,j)}: the smallest k with
// d(i,j) <= d(i, x_k).
static std::vector<std::uint32_t> neighbor_ranks(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  std::vector<std::uint32_t> rank(n * n, 0);
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = d.row(i);
    for (std::uint32_t t = 0; t < n; ++t) order[t] = t;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return row[a] < row[b]; });
    // order[0] is i itself or a duplicate at distance zero; self is skipped
    std::size_t seen = 0;  // non-self entries strictly closer than the current run
    for (std::size_t t = 0; t < n;) {
      std::size_t u = t;
      std::size_t run = 0;
      while (u < n && row[order[u]] == row[order[t]]) {
        if (order[u] != i) ++run;
        ++u;
      }
      for (std::size_t w = t; w < u; ++w) rank[i * n + order[w]] = static_cast<std::uint32_t>(seen + 1);
      seen += run;
      t = u;
    }
  }
  return rank;
}

EdgeFiltration knn_filtration(const DistanceMatrix& d, bool and_mode) {
  const std::size_t n = d.size();
  auto rank = neighbor_ranks(d);
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const auto a = rank[i * n + j], b = rank[j * n + i];
      edges.push_back({static_cast<double>(and_mode ? std::max(a, b) : std::min(a, b)), i, j});
    }
  return EdgeFiltration(n, std::move(edges),
                        and_mode ? FiltrationMethod::KnnAnd : FiltrationMethod::KnnOr);
}

Graph knn_graph(const DistanceMatrix& d, int k, bool and_mode) {
  auto rho = kth_neighbor_distances(d, k);
  const std::size_t n = d.size();
  std::vector<Edge> edges;
  std::uint32_t rank = 0;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      ++rank;
      const double x = d(i, j);
      const bool in_i = x <= rho[i], in_j = x <= rho[j];
      if (and_mode ? (in_i && in_j) : (in_i || in_j))
        edges.push_back({static_cast<double>(rank), i, j});
    }
  return Graph::from_edges(n, edges);
}

Graph graph_at_scale(const EdgeFiltration& f, double scale) {
  if (std::isnan(scale) || scale < 0.0) throw InvalidParameter("scale must be nonnegative");
  return graph_from_prefix(f, f.count_below(scale));
}

Graph graph_at_count(const EdgeFiltration& f, std::size_t m_edges) {
  if (m_edges > f.size())
    throw InvalidParameter("edge count " + std::to_string(m_edges) + " exceeds filtration size " +
                           std::to_string(f.size()));
  return graph_from_prefix(f, m_edges);
}

void write_edges_csv(const std::string& path, const EdgeFiltration& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& e : f.edges()) out << e.i << ',' << e.j << ',' << format_double(e.value) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cknn
