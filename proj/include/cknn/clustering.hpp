#pragma once

#include <cstddef>
#include <vector>

#include "cknn/graph.hpp"

namespace cknn {

/// labels[v] is the smallest vertex index in v's component.
struct ComponentLabeling {
  std::vector<int> labels;
  std::size_t n_components = 0;

  /// Builds from arbitrary class ids; relabels to smallest-member form.
  static ComponentLabeling from_classes(const std::vector<int>& classes);
};

struct Transition {
  std::size_t edge_count;
  std::size_t n_components;
};

/// Depth-first search.
ComponentLabeling connected_components(const Graph& g);

/// Largest L such that the first L edges leave at least c_target components.
std::size_t binary_search_clusters(const EdgeFiltration& f, std::size_t c_target);

/// Component count of the graph made of the first m edges.
std::size_t components_at_count(const EdgeFiltration& f, std::size_t m);

/// Edge counts at which the component count drops, via union-find.
std::vector<Transition> component_transitions(const EdgeFiltration& f);
/// Same sequence recovered by repeated binary search.
std::vector<Transition> component_transitions_bisect(const EdgeFiltration& f);

bool same_partition(const std::vector<int>& a, const std::vector<int>& b);

/// Length of the edge-count window on which the partition equals `truth`,
/// over the total number of pairs. 0 if never matched.
double clustering_persistence_fraction(const EdgeFiltration& f, const std::vector<int>& truth);

/// Inclusive window [first, last] of edge counts matching `truth`, if any.
bool clustering_window(const EdgeFiltration& f, const std::vector<int>& truth,
                       std::size_t& first, std::size_t& last);

}  // namespace cknn
