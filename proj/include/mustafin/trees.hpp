#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mustafin/building.hpp"
#include "mustafin/fiber.hpp"
#include "mustafin/tropical.hpp"

namespace mustafin {

int64_t thickness(const ValuedMatrix& g, const ValuedMatrix& h);

using DistanceMatrix = std::vector<std::vector<int64_t>>;
DistanceMatrix distance_matrix(const Configuration& gamma);

struct TreeEdge {
  int u, v;
  int64_t len;
};

// nodes 0..n_gamma-1 are the points of the configuration, later nodes are Steiner
struct PhylogeneticTree {
  int n_gamma = 0;
  int n_nodes = 0;
  std::vector<TreeEdge> edges;  // sorted by (u, v), u < v

  std::vector<std::vector<std::pair<int, int64_t>>> adjacency() const;
  int degree(int v) const;
  int64_t path_length(int a, int b) const;
  std::string str() const;
};

// exact reconstruction by insertion; rejects metrics not realized by an integer tree
PhylogeneticTree phylogenetic_tree(const DistanceMatrix& dist);

Facets tree_reduction_complex(const PhylogeneticTree& tree);
bool is_monomial_type_tree(const PhylogeneticTree& tree);

struct MonomialEdge {
  int a, b;
  int label;  // configuration index
};

// unoriented; each of the 2^n orientations is one choice of 0 or infinity per factor
struct MonomialTree {
  int n_nodes = 0;
  std::vector<std::string> node_names;
  std::vector<MonomialEdge> edges;
};

MonomialTree monomial_tree(const PhylogeneticTree& tree);

struct D2Check {
  FiberReport fiber;
  Facets fiber_complex;  // on configuration indices via the primary flags
  Facets tree_complex;
  bool count_ok = false, monomial_classes_ok = false, complex_ok = false;
  bool ok() const { return count_ok && monomial_classes_ok && complex_ok; }
};

D2Check cross_check_fiber_d2(const Configuration& gamma);

}  // namespace mustafin
