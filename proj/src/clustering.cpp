#include "cknn/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "cknn/error.hpp"

namespace cknn {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --count_;
    return true;
  }
  std::size_t count() const { return count_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t count_;
};

}  // namespace

ComponentLabeling ComponentLabeling::from_classes(const std::vector<int>& classes) {
  ComponentLabeling out;
  out.labels.resize(classes.size());
  std::unordered_map<int, int> first;
  for (std::size_t v = 0; v < classes.size(); ++v) {
    auto [it, inserted] = first.emplace(classes[v], static_cast<int>(v));
    out.labels[v] = it->second;
  }
  out.n_components = first.size();
  return out;
}

ComponentLabeling connected_components(const Graph& g) {
  const std::size_t n = g.n_vertices();
  ComponentLabeling out;
  out.labels.assign(n, -1);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (out.labels[s] >= 0) continue;
    ++out.n_components;
    out.labels[s] = static_cast<int>(s);
    stack.push_back(s);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(v)) {
        if (out.labels[nb.v] < 0) {
          out.labels[nb.v] = static_cast<int>(s);
          stack.push_back(nb.v);
        }
      }
    }
  }
  return out;
}

std::size_t components_at_count(const EdgeFiltration& f, std::size_t m) {
  if (m > f.size()) throw InvalidParameter("edge count exceeds filtration size");
  UnionFind uf(f.n_vertices());
  for (std::size_t p = 0; p < m; ++p) uf.unite(f[p].i, f[p].j);
  return uf.count();
}

std::size_t binary_search_clusters(const EdgeFiltration& f, std::size_t c_target) {
  const std::size_t n = f.n_vertices();
  if (c_target < 2 || c_target > n)
    throw InvalidParameter("cluster count must satisfy 2 <= C <= N (C=" + std::to_string(c_target) +
                           ", N=" + std::to_string(n) + ")");
  std::size_t lo = 0, hi = f.size();
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (components_at_count(f, mid) >= c_target)
      lo = mid;
    else
      hi = mid;
  }
  // The loop never evaluates hi itself; with an empty filtration or a
  // complete graph that still has >= C components, hi is the answer.
  if (hi > lo && components_at_count(f, hi) >= c_target) return hi;
  return lo;
}

std::vector<Transition> component_transitions(const EdgeFiltration& f) {
  std::vector<Transition> out;
  UnionFind uf(f.n_vertices());
  for (std::size_t p = 0; p < f.size(); ++p)
    if (uf.unite(f[p].i, f[p].j)) out.push_back({p + 1, uf.count()});
  return out;
}

std::vector<Transition> component_transitions_bisect(const EdgeFiltration& f) {
  // The k-th merge happens at the smallest m with components(m) <= N - k,
  // i.e. one past the largest m with components(m) >= N - k + 1.
  std::vector<Transition> out;
  const std::size_t n = f.n_vertices();
  const std::size_t final_count = components_at_count(f, f.size());
  std::size_t prev = 0;
  std::size_t c = n;
  while (c > final_count) {
    std::size_t lo = prev, hi = f.size();  // components(lo) >= c, components(hi) < c
    while (lo + 1 < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (components_at_count(f, mid) >= c)
        lo = mid;
      else
        hi = mid;
    }
    const std::size_t after = components_at_count(f, hi);
    out.push_back({hi, after});
    prev = hi;
    c = after;
  }
  return out;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::unordered_map<int, int> ab, ba;
  for (std::size_t v = 0; v < a.size(); ++v) {
    auto [i1, n1] = ab.emplace(a[v], b[v]);
    if (i1->second != b[v]) return false;
    auto [i2, n2] = ba.emplace(b[v], a[v]);
    if (i2->second != a[v]) return false;
  }
  return true;
}

bool clustering_window(const EdgeFiltration& f, const std::vector<int>& truth,
                       std::size_t& first, std::size_t& last) {
  if (truth.size() != f.n_vertices())
    throw ContractError("truth labeling length differs from vertex count");
  const std::size_t classes = ComponentLabeling::from_classes(truth).n_components;
  // While no edge joins two truth classes every component sits inside one
  // class, so the partition matches exactly when the counts agree.
  UnionFind uf(f.n_vertices());
  bool found = false;
  std::size_t a = 0;
  if (uf.count() == classes) {
    found = true;
    a = 0;
  }
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto& e = f[p];
    if (truth[e.i] != truth[e.j]) {
      if (!found) return false;
      first = a;
      last = p;
      return true;
    }
    uf.unite(e.i, e.j);
    if (!found && uf.count() == classes) {
      found = true;
      a = p + 1;
    }
  }
  if (!found) return false;
  first = a;
  last = f.size();
  return true;
}

double clustering_persistence_fraction(const EdgeFiltration& f, const std::vector<int>& truth) {
  std::size_t first = 0, last = 0;
  if (f.size() == 0 || !clustering_window(f, truth, first, last)) return 0.0;
  return static_cast<double>(last - first + 1) / static_cast<double>(f.size());
}

}  // namespace cknn
