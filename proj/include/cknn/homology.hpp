#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cknn/graph.hpp"

namespace cknn {

inline constexpr std::size_t kDefaultSimplexCap = 5'000'000;
inline constexpr std::size_t kInfiniteIndex = std::numeric_limits<std::size_t>::max();

/// Clique complex truncated at max_dim. Simplices of dimension d are stored
/// flat, d+1 sorted vertex ids each; entry[d][s] is the position at which the
/// simplex's latest edge entered (0 for vertices).
struct SimplicialComplex {
  int max_dim = 0;
  std::size_t n_vertices = 0;
  std::vector<std::vector<std::uint32_t>> simplices;
  std::vector<std::vector<std::uint32_t>> entry;

  std::size_t count(int d) const {
    return d < 0 || d > max_dim ? 0 : simplices[d].size() / static_cast<std::size_t>(d + 1);
  }
  std::span<const std::uint32_t> simplex(int d, std::size_t s) const {
    return {simplices[d].data() + s * (d + 1), static_cast<std::size_t>(d + 1)};
  }
};

struct BettiVector {
  std::vector<std::size_t> betti;
  bool operator==(const BettiVector&) const = default;
  std::string str() const;  // "(1,2)"
};

/// Throws ResourceLimit when the complex would hold more than `cap` simplices.
SimplicialComplex vr_complex(const Graph& g, int max_dim, std::size_t cap = kDefaultSimplexCap);

/// beta_0..beta_up_to over Z/2. Needs up_to < c.max_dim so that the rank of
/// the next boundary map is available; otherwise throws ContractError.
BettiVector betti_numbers(const SimplicialComplex& c, int up_to);

/// beta_0..beta_K of the truncated complex itself (top dimension has no
/// boundaries coming in). Satisfies the Euler identity.
BettiVector truncated_betti_numbers(const SimplicialComplex& c);

long long euler_characteristic(const SimplicialComplex& c);

struct Bar {
  int dim;
  std::size_t birth_index;  // edge count at which the class appears
  std::size_t death_index;  // kInfiniteIndex if it never dies
  double birth;
  double death;  // +inf if it never dies
};

/// Bars in dimensions 0..max_dim-1 along an edge filtration. Every bar has
/// birth_index < death_index; bars whose birth and death values coincide are
/// kept here (they matter for edge-count queries) but dropped by visible().
struct Barcode {
  int max_dim = 2;
  std::size_t n_states = 0;  // number of edges in the filtration
  std::vector<Bar> bars;

  std::vector<Bar> visible() const;
  /// Betti vector of the complex on the first m edges.
  BettiVector betti_at_count(std::size_t m) const;
  /// Betti vectors for every edge count 0..n_states.
  std::vector<BettiVector> betti_sequence() const;
};

Barcode persistent_homology(const EdgeFiltration& f, int max_dim = 2,
                            std::size_t cap = kDefaultSimplexCap);

/// Upper bound on the number of simplices persistent_homology would build.
std::size_t simplex_estimate(std::size_t n_vertices, int max_dim);

struct StableInterval {
  std::size_t first_count = 0;  // inclusive edge-count range
  std::size_t last_count = 0;
  double fraction = 0.0;
  double scale_lo = 0.0;  // graph_at_scale(f, s) is in the run for lo < s <= hi
  double scale_hi = 0.0;
  BettiVector betti;
};

/// Longest run of edge counts with constant Betti vector, measured as a
/// fraction of all edges. The empty graph and the final run (which always
/// ends in the complete graph) are only chosen when nothing else exists.
/// Ties go to the earlier run.
StableInterval stable_interval(const Barcode& b, const EdgeFiltration& f);

/// Fraction of the edge counts 1..E whose Betti vector equals target.
double homology_persistence_fraction(const Barcode& b, const BettiVector& target);

void write_barcode_csv(const std::string& path, const Barcode& b);

}  // namespace cknn
