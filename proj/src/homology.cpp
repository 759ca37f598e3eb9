#include "cknn/homology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "cknn/error.hpp"
#include "cknn/io.hpp"

namespace cknn {
namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

// Binomial table C(n, k) for n <= n_max, k <= k_max, saturating.
class Binomial {
 public:
  Binomial(std::size_t n_max, std::size_t k_max) : k_max_(k_max), t_((n_max + 1) * (k_max + 1), 0) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      at(n, 0) = 1;
      for (std::size_t k = 1; k <= std::min(n, k_max); ++k) {
        const std::uint64_t a = at(n - 1, k - 1), b = k <= n - 1 ? at(n - 1, k) : 0;
        at(n, k) = a + b < a ? UINT64_MAX : a + b;
      }
    }
  }
  std::uint64_t operator()(std::size_t n, std::size_t k) const {
    return k > k_max_ ? 0 : t_[n * (k_max_ + 1) + k];
  }

 private:
  std::uint64_t& at(std::size_t n, std::size_t k) { return t_[n * (k_max_ + 1) + k]; }
  std::size_t k_max_;
  std::vector<std::uint64_t> t_;
};

std::uint64_t comb_index(std::span<const std::uint32_t> v, const Binomial& bin) {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) s += bin(v[k], k + 1);
  return s;
}

// Dense entry matrix: entry(i,j) = 1-based position of edge {i,j}, or kAbsent.
struct EntryMatrix {
  std::size_t n;
  std::vector<std::uint32_t> e;
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return e[i * n + j]; }
};

EntryMatrix entries_from_graph(const Graph& g) {
  EntryMatrix m{g.n_vertices(), std::vector<std::uint32_t>(g.n_vertices() * g.n_vertices(), kAbsent)};
  for (std::size_t v = 0; v < m.n; ++v)
    for (const auto& nb : g.neighbors(v)) m.e[v * m.n + nb.v] = nb.entry;
  return m;
}

EntryMatrix entries_from_filtration(const EdgeFiltration& f) {
  const std::size_t n = f.n_vertices();
  EntryMatrix m{n, std::vector<std::uint32_t>(n * n, kAbsent)};
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto& e = f[p];
    m.e[e.i * n + e.j] = m.e[e.j * n + e.i] = static_cast<std::uint32_t>(p + 1);
  }
  return m;
}

// Calls visit(vertices, entry) for every clique with exactly d+1 vertices,
// vertices ascending.
template <class Visit>
void for_each_clique(const EntryMatrix& m, int d, Visit&& visit) {
  std::vector<std::uint32_t> verts;
  std::vector<std::vector<std::uint32_t>> cand(d + 1);
  const std::size_t n = m.n;
  auto rec = [&](auto&& self, int depth, std::uint32_t entry) -> void {
    if (depth == d + 1) {
      visit(std::span<const std::uint32_t>(verts), entry);
      return;
    }
    const auto& pool = cand[depth - 1];
    for (std::size_t t = 0; t < pool.size(); ++t) {
      const std::uint32_t v = pool[t];
      std::uint32_t en = entry;
      for (auto u : verts) en = std::max(en, m(u, v));
      verts.push_back(v);
      if (depth < d) {
        auto& next = cand[depth];
        next.clear();
        for (std::size_t s = t + 1; s < pool.size(); ++s)
          if (m(v, pool[s]) != kAbsent) next.push_back(pool[s]);
      }
      self(self, depth + 1, en);
      verts.pop_back();
    }
  };
  for (std::uint32_t v = 0; v < n; ++v) {
    verts.assign(1, v);
    if (d == 0) {
      visit(std::span<const std::uint32_t>(verts), 0u);
      continue;
    }
    auto& c0 = cand[0];
    c0.clear();
    for (std::uint32_t w = v + 1; w < n; ++w)
      if (m(v, w) != kAbsent) c0.push_back(w);
    rec(rec, 1, 0u);
  }
}

// Symmetric difference of two ascending vectors, into a.
template <class T>
void xor_into(std::vector<T>& a, const std::vector<T>& b, std::vector<T>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch));
  a.swap(scratch);
}

// Rank over Z/2 of a matrix given as columns of ascending row indices.
std::size_t rank_z2(std::vector<std::vector<std::uint32_t>> cols) {
  std::unordered_map<std::uint32_t, std::size_t> owner;  // pivot row -> column
  std::vector<std::uint32_t> scratch;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto& col = cols[c];
    while (!col.empty()) {
      auto it = owner.find(col.back());
      if (it == owner.end()) break;
      xor_into(col, cols[it->second], scratch);
    }
    if (!col.empty()) {
      owner.emplace(col.back(), c);
      ++rank;
    }
  }
  return rank;
}

std::size_t boundary_rank(const SimplicialComplex& c, int k, const Binomial& bin) {
  if (k <= 0 || k > c.max_dim || c.count(k) == 0) return 0;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(c.count(k - 1) * 2);
  for (std::size_t s = 0; s < c.count(k - 1); ++s)
    index.emplace(comb_index(c.simplex(k - 1, s), bin), static_cast<std::uint32_t>(s));
  std::vector<std::vector<std::uint32_t>> cols(c.count(k));
  std::vector<std::uint32_t> face(k);
  for (std::size_t s = 0; s < c.count(k); ++s) {
    auto v = c.simplex(k, s);
    for (int drop = 0; drop <= k; ++drop) {
      std::size_t w = 0;
      for (int t = 0; t <= k; ++t)
        if (t != drop) face[w++] = v[t];
      auto it = index.find(comb_index(face, bin));
      if (it == index.end()) throw ContractError("complex is not closed under faces");
      cols[s].push_back(it->second);
    }
    std::sort(cols[s].begin(), cols[s].end());
  }
  return rank_z2(std::move(cols));
}

}  // namespace

std::string BettiVector::str() const {
  std::string s = "(";
  for (std::size_t k = 0; k < betti.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(betti[k]);
  }
  return s + ")";
}

std::size_t simplex_estimate(std::size_t n, int max_dim) {
  Binomial bin(n, static_cast<std::size_t>(max_dim) + 1);
  std::uint64_t total = 0;
  for (int k = 0; k <= max_dim; ++k) {
    const auto c = bin(n, k + 1);
    total = total + c < total ? UINT64_MAX : total + c;
  }
  return static_cast<std::size_t>(total);
}

SimplicialComplex vr_complex(const Graph& g, int max_dim, std::size_t cap) {
  if (max_dim < 1) throw InvalidParameter("max_dim must be at least 1");
  const auto m = entries_from_graph(g);
  SimplicialComplex c;
  c.max_dim = max_dim;
  c.n_vertices = g.n_vertices();
  c.simplices.resize(max_dim + 1);
  c.entry.resize(max_dim + 1);
  std::size_t total = 0;
  for (int d = 0; d <= max_dim; ++d) {
    for_each_clique(m, d, [&](std::span<const std::uint32_t> v, std::uint32_t en) {
      if (++total > cap) {
        // Bound: every clique is a subset of {v} plus v's higher neighbours.
        std::size_t bound = 0;
        for (std::size_t u = 0; u < g.n_vertices(); ++u) {
          std::size_t up = 0;
          for (const auto& nb : g.neighbors(u)) up += nb.v > u;
          Binomial b(up, static_cast<std::size_t>(max_dim));
          for (int k = 0; k <= max_dim; ++k) bound += b(up, k);
        }
        throw ResourceLimit(bound, "clique complex exceeds the simplex cap of " +
                                       std::to_string(cap) + " (estimated " +
                                       std::to_string(bound) + " simplices)");
      }
      c.simplices[d].insert(c.simplices[d].end(), v.begin(), v.end());
      c.entry[d].push_back(en);
    });
  }
  return c;
}

BettiVector betti_numbers(const SimplicialComplex& c, int up_to) {
  if (up_to < 0) throw InvalidParameter("up_to must be nonnegative");
  if (up_to >= c.max_dim)
    throw ContractError("Betti number " + std::to_string(up_to) + " needs simplices of dimension " +
                        std::to_string(up_to + 1) + " but the complex stops at " +
                        std::to_string(c.max_dim));
  Binomial bin(c.n_vertices, static_cast<std::size_t>(c.max_dim) + 1);
  std::vector<std::size_t> rk(up_to + 2, 0);
  for (int k = 1; k <= up_to + 1; ++k) rk[k] = boundary_rank(c, k, bin);
  BettiVector b;
  for (int k = 0; k <= up_to; ++k) b.betti.push_back(c.count(k) - rk[k] - rk[k + 1]);
  return b;
}

BettiVector truncated_betti_numbers(const SimplicialComplex& c) {
  Binomial bin(c.n_vertices, static_cast<std::size_t>(c.max_dim) + 1);
  std::vector<std::size_t> rk(c.max_dim + 2, 0);
  for (int k = 1; k <= c.max_dim; ++k) rk[k] = boundary_rank(c, k, bin);
  BettiVector b;
  for (int k = 0; k <= c.max_dim; ++k) b.betti.push_back(c.count(k) - rk[k] - rk[k + 1]);
  return b;
}

long long euler_characteristic(const SimplicialComplex& c) {
  long long chi = 0;
  for (int k = 0; k <= c.max_dim; ++k)
    chi += (k % 2 ? -1 : 1) * static_cast<long long>(c.count(k));
  return chi;
}

// Persistent cohomology with clearing. For each dimension d the d-simplices
// are processed from latest to earliest; a column's pivot is its earliest
// coface. Keys order simplices by (entry, combinatorial index).
Barcode persistent_homology(const EdgeFiltration& f, int max_dim, std::size_t cap) {
  if (max_dim < 1) throw InvalidParameter("max_dim must be at least 1");
  const std::size_t n = f.n_vertices();
  const std::size_t estimate = simplex_estimate(n, max_dim);
  if (estimate > cap)
    throw ResourceLimit(estimate, "persistent homology up to dimension " + std::to_string(max_dim) +
                                      " on " + std::to_string(n) + " points needs up to " +
                                      std::to_string(estimate) + " simplices (cap " +
                                      std::to_string(cap) + ")");
  Barcode out;
  out.max_dim = max_dim;
  out.n_states = f.size();
  auto value_at = [&](std::size_t entry) { return entry == 0 ? 0.0 : f[entry - 1].value; };

  // H0 by union-find; merging edges are the pivots cleared from dimension 1.
  std::vector<std::uint32_t> parent(n);
  for (std::uint32_t v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Binomial bin(n, static_cast<std::size_t>(max_dim) + 2);
  constexpr int kShift = 36;
  if (bin(n, static_cast<std::size_t>(max_dim) + 1) >= (1ull << kShift) ||
      f.size() >= (1ull << (64 - kShift)))
    throw ResourceLimit(estimate, "filtration too large to index");
  auto make_key = [](std::uint64_t entry, std::uint64_t comb) { return (entry << kShift) | comb; };

  std::unordered_set<std::uint64_t> cleared;
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto a = find(f[p].i), b = find(f[p].j);
    if (a == b) continue;
    parent[std::max(a, b)] = std::min(a, b);
    out.bars.push_back({0, 0, p + 1, 0.0, f[p].value});
    const std::uint32_t v[2] = {f[p].i, f[p].j};
    cleared.insert(make_key(p + 1, comb_index(v, bin)));
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (find(v) == v) out.bars.push_back({0, 0, kInfiniteIndex, 0.0, INFINITY});

  const auto m = entries_from_filtration(f);
  std::vector<std::uint32_t> coface(max_dim + 1);

  for (int d = 1; d < max_dim; ++d) {
    struct Column {
      std::uint64_t key;
      std::uint32_t entry;
      std::vector<std::uint32_t> verts;
    };
    std::vector<Column> cols;
    for_each_clique(m, d, [&](std::span<const std::uint32_t> v, std::uint32_t en) {
      const auto key = make_key(en, comb_index(v, bin));
      if (!cleared.count(key)) cols.push_back({key, en, {v.begin(), v.end()}});
    });
    std::sort(cols.begin(), cols.end(), [](const Column& a, const Column& b) { return a.key > b.key; });

    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> reduced;  // pivot -> column
    std::unordered_set<std::uint64_t> next_cleared;
    std::vector<std::uint64_t> work, scratch;
    for (const auto& col : cols) {
      work.clear();
      for (std::uint32_t w = 0; w < n; ++w) {
        std::uint32_t en = col.entry;
        bool ok = true;
        for (auto u : col.verts) {
          if (u == w) {
            ok = false;
            break;
          }
          const auto e = m(u, w);
          if (e == kAbsent) {
            ok = false;
            break;
          }
          en = std::max(en, e);
        }
        if (!ok) continue;
        std::size_t t = 0;
        bool placed = false;
        for (auto u : col.verts) {
          if (!placed && w < u) {
            coface[t++] = w;
            placed = true;
          }
          coface[t++] = u;
        }
        if (!placed) coface[t++] = w;
        work.push_back(make_key(en, comb_index({coface.data(), t}, bin)));
      }
      std::sort(work.begin(), work.end());
      while (!work.empty()) {
        auto it = reduced.find(work.front());
        if (it == reduced.end()) break;
        xor_into(work, it->second, scratch);
      }
      const std::size_t birth = col.entry;
      if (work.empty()) {
        out.bars.push_back({d, birth, kInfiniteIndex, value_at(birth), INFINITY});
        continue;
      }
      const std::uint64_t piv = work.front();
      const std::size_t death = static_cast<std::size_t>(piv >> kShift);
      if (death > birth) out.bars.push_back({d, birth, death, value_at(birth), value_at(death)});
      next_cleared.insert(piv);
      reduced.emplace(piv, std::move(work));
      work = {};
    }
    cleared.swap(next_cleared);
  }
  return out;
}

std::vector<Bar> Barcode::visible() const {
  std::vector<Bar> out;
  for (const auto& b : bars)
    if (b.birth < b.death) out.push_back(b);
  return out;
}

BettiVector Barcode::betti_at_count(std::size_t m) const {
  BettiVector v;
  v.betti.assign(max_dim, 0);
  for (const auto& b : bars)
    if (b.birth_index <= m && m < b.death_index) ++v.betti[b.dim];
  return v;
}

std::vector<BettiVector> Barcode::betti_sequence() const {
  std::vector<std::vector<long long>> diff(max_dim, std::vector<long long>(n_states + 2, 0));
  for (const auto& b : bars) {
    diff[b.dim][b.birth_index] += 1;
    if (b.death_index != kInfiniteIndex) diff[b.dim][b.death_index] -= 1;
  }
  std::vector<BettiVector> seq(n_states + 1);
  std::vector<long long> run(max_dim, 0);
  for (std::size_t s = 0; s <= n_states; ++s) {
    seq[s].betti.resize(max_dim);
    for (int d = 0; d < max_dim; ++d) {
      run[d] += diff[d][s];
      seq[s].betti[d] = static_cast<std::size_t>(run[d]);
    }
  }
  return seq;
}

StableInterval stable_interval(const Barcode& b, const EdgeFiltration& f) {
  const std::size_t e = f.size();
  if (e == 0) throw InvalidInput("stable interval of an empty filtration");
  if (b.n_states != e) throw ContractError("barcode was not computed from this filtration");
  const auto seq = b.betti_sequence();
  // Runs over states 1..E.
  struct Run {
    std::size_t a, last;
  };
  std::vector<Run> runs;
  for (std::size_t s = 1; s <= e; ++s) {
    if (runs.empty() || !(seq[s] == seq[runs.back().a]))
      runs.push_back({s, s});
    else
      runs.back().last = s;
  }
  std::size_t best = runs.size() - 1;  // the final run, as fallback
  std::size_t best_len = 0;
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
    const std::size_t len = runs[r].last - runs[r].a + 1;
    if (len > best_len) {
      best_len = len;
      best = r;
    }
  }
  const Run& run = runs[best];
  StableInterval si;
  si.first_count = run.a;
  si.last_count = run.last;
  si.fraction = static_cast<double>(run.last - run.a + 1) / static_cast<double>(e);
  si.scale_lo = f[run.a - 1].value;
  si.scale_hi = run.last == e ? INFINITY : f[run.last].value;
  si.betti = seq[run.a];
  return si;
}

double homology_persistence_fraction(const Barcode& b, const BettiVector& target) {
  if (target.betti.size() > static_cast<std::size_t>(b.max_dim))
    throw ContractError("target Betti vector is longer than the computed dimensions");
  if (b.n_states == 0) return 0.0;
  const auto seq = b.betti_sequence();
  std::size_t hits = 0;
  for (std::size_t s = 1; s <= b.n_states; ++s)
    if (std::equal(target.betti.begin(), target.betti.end(), seq[s].betti.begin())) ++hits;
  return static_cast<double>(hits) / static_cast<double>(b.n_states);
}

void write_barcode_csv(const std::string& path, const Barcode& b) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "dim,birth,death\n";
  for (const auto& bar : b.visible())
    out << bar.dim << ',' << format_double(bar.birth) << ',' << format_double(bar.death) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cknn
