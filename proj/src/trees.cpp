#include "mustafin/trees.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace mustafin {

int64_t thickness(const ValuedMatrix& g, const ValuedMatrix& h) {
  if (g.rows() != 2 || g.cols() != 2 || h.rows() != 2 || h.cols() != 2)
    throw PreconditionError("thickness needs 2x2 matrices");
  if (det(g).is_zero() || det(h).is_zero()) throw PreconditionError("thickness needs invertible matrices");
  auto pair_det = [&](int i, int j) { return g(0, i) * h(1, j) - g(1, i) * h(0, j); };
  ValuedScalar top = pair_det(0, 0) * pair_det(1, 1) - pair_det(0, 1) * pair_det(1, 0);
  int64_t lo = kInfVal;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) lo = std::min(lo, val(pair_det(i, j)));
  return val(top) - 2 * lo;
}

DistanceMatrix distance_matrix(const Configuration& gamma) {
  int n = gamma.n();
  DistanceMatrix d(static_cast<size_t>(n), std::vector<int64_t>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d[static_cast<size_t>(i)][static_cast<size_t>(j)] = d[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          class_distance(gamma.points[static_cast<size_t>(i)], gamma.points[static_cast<size_t>(j)]);
  return d;
}

// ------------------------------------------------------------------ tree

std::vector<std::vector<std::pair<int, int64_t>>> PhylogeneticTree::adjacency() const {
  std::vector<std::vector<std::pair<int, int64_t>>> adj(static_cast<size_t>(n_nodes));
  for (const auto& e : edges) {
    adj[static_cast<size_t>(e.u)].emplace_back(e.v, e.len);
    adj[static_cast<size_t>(e.v)].emplace_back(e.u, e.len);
  }
  return adj;
}

int PhylogeneticTree::degree(int v) const {
  int k = 0;
  for (const auto& e : edges) k += (e.u == v) + (e.v == v);
  return k;
}

namespace {

// parent pointers and depths of a rooted traversal
void root_at(const std::vector<std::vector<std::pair<int, int64_t>>>& adj, int root, std::vector<int>& parent,
             std::vector<int64_t>& depth) {
  parent.assign(adj.size(), -2);
  depth.assign(adj.size(), 0);
  std::vector<int> stack{root};
  parent[static_cast<size_t>(root)] = -1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, l] : adj[static_cast<size_t>(v)]) {
      if (parent[static_cast<size_t>(w)] != -2) continue;
      parent[static_cast<size_t>(w)] = v;
      depth[static_cast<size_t>(w)] = depth[static_cast<size_t>(v)] + l;
      stack.push_back(w);
    }
  }
}

}  // namespace

int64_t PhylogeneticTree::path_length(int a, int b) const {
  std::vector<int> parent;
  std::vector<int64_t> depth;
  root_at(adjacency(), a, parent, depth);
  return depth[static_cast<size_t>(b)];
}

std::string PhylogeneticTree::str() const {
  auto name = [&](int v) { return v < n_gamma ? "L" + std::to_string(v + 1) : "s" + std::to_string(v - n_gamma + 1); };
  std::string s;
  for (const auto& e : edges) s += name(e.u) + " -- " + name(e.v) + " : " + std::to_string(e.len) + "\n";
  return s;
}

PhylogeneticTree phylogenetic_tree(const DistanceMatrix& dist) {
  int n = static_cast<int>(dist.size());
  for (const auto& row : dist)
    if (static_cast<int>(row.size()) != n) throw PreconditionError("distance matrix is not square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int64_t x = dist[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (x != dist[static_cast<size_t>(j)][static_cast<size_t>(i)] || (i == j) != (x == 0) || x < 0)
        throw PreconditionError("not a metric on distinct points");
    }
  auto D = [&](int i, int j) { return dist[static_cast<size_t>(i)][static_cast<size_t>(j)]; };

  // working tree with edge map; node ids: gamma first, Steiner from n upward
  std::map<std::pair<int, int>, int64_t> edges;
  int next_steiner = n;
  auto add_edge = [&](int a, int b, int64_t l) { edges[{std::min(a, b), std::max(a, b)}] = l; };
  auto adjacency = [&]() {
    std::vector<std::vector<std::pair<int, int64_t>>> adj(static_cast<size_t>(next_steiner));
    for (const auto& [k, l] : edges) {
      adj[static_cast<size_t>(k.first)].emplace_back(k.second, l);
      adj[static_cast<size_t>(k.second)].emplace_back(k.first, l);
    }
    return adj;
  };
  if (n >= 2) add_edge(0, 1, D(0, 1));
  for (int k = 2; k < n; ++k) {
    // attachment depth along the path from 0 toward the deepest split
    int64_t best2 = -1;
    int toward = 1;
    for (int j = 1; j < k; ++j) {
      int64_t twice = D(0, k) + D(0, j) - D(j, k);
      if (twice % 2) throw PreconditionError("distance matrix is not an integer tree metric");
      if (twice > best2) {
        best2 = twice;
        toward = j;
      }
    }
    int64_t a = best2 / 2, hang = D(0, k) - a;
    if (a < 0 || hang < 0) throw PreconditionError("distance matrix violates the four-point condition");
    auto adj = adjacency();
    std::vector<int> parent;
    std::vector<int64_t> depth;
    root_at(adj, 0, parent, depth);
    // walk up from `toward` to the node or edge at depth a
    int v = toward;
    while (parent[static_cast<size_t>(v)] >= 0 && depth[static_cast<size_t>(parent[static_cast<size_t>(v)])] >= a)
      v = parent[static_cast<size_t>(v)];
    if (depth[static_cast<size_t>(v)] < a) throw PreconditionError("distance matrix violates the four-point condition");
    int at;
    if (depth[static_cast<size_t>(v)] == a) {
      at = v;
    } else {
      int p = parent[static_cast<size_t>(v)];
      int64_t full = depth[static_cast<size_t>(v)] - depth[static_cast<size_t>(p)];
      edges.erase({std::min(p, v), std::max(p, v)});
      at = hang == 0 ? k : next_steiner++;
      add_edge(p, at, a - depth[static_cast<size_t>(p)]);
      add_edge(at, v, full - (a - depth[static_cast<size_t>(p)]));
    }
    if (hang > 0) {
      add_edge(at, k, hang);
    } else if (at != k) {
      if (at < n) throw PreconditionError("distance zero between distinct points");
      // Steiner node becomes the point k
      std::map<std::pair<int, int>, int64_t> moved;
      for (const auto& [e, l] : edges) {
        int x = e.first == at ? k : e.first, y = e.second == at ? k : e.second;
        moved[{std::min(x, y), std::max(x, y)}] = l;
      }
      edges = std::move(moved);
    }
  }
  // compact Steiner ids in order of first appearance
  std::map<int, int> ids;
  for (int v = 0; v < n; ++v) ids[v] = v;
  int fresh = n;
  for (const auto& [e, l] : edges)
    for (int v : {e.first, e.second})
      if (!ids.count(v)) ids[v] = fresh++;
  PhylogeneticTree t;
  t.n_gamma = n;
  t.n_nodes = fresh;
  for (const auto& [e, l] : edges) {
    int x = ids[e.first], y = ids[e.second];
    t.edges.push_back({std::min(x, y), std::max(x, y), l});
  }
  std::sort(t.edges.begin(), t.edges.end(), [](const TreeEdge& x, const TreeEdge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  for (const auto& e : t.edges)
    if (e.len <= 0) throw PreconditionError("distance matrix violates the four-point condition");
  for (int v = n; v < t.n_nodes; ++v)
    if (t.degree(v) < 3) throw InternalError("Steiner node of degree below 3");
  for (int i = 0; i < n; ++i) {
    std::vector<int> parent;
    std::vector<int64_t> depth;
    root_at(t.adjacency(), i, parent, depth);
    for (int j = 0; j < n; ++j)
      if (depth[static_cast<size_t>(j)] != D(i, j))
        throw PreconditionError("distance matrix violates the four-point condition");
  }
  return t;
}

// ------------------------------------------------------ punctured tree

namespace {

// components of the tree with the configuration nodes removed, as edge groups
std::vector<std::vector<int>> punctured_components(const PhylogeneticTree& t) {
  size_t m = t.edges.size();
  std::vector<size_t> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  std::map<int, size_t> seen;
  for (size_t k = 0; k < m; ++k)
    for (int v : {t.edges[k].u, t.edges[k].v}) {
      if (v < t.n_gamma) continue;
      auto [it, fresh] = seen.emplace(v, k);
      if (!fresh) uf[find(k)] = find(it->second);
    }
  std::map<size_t, std::vector<int>> groups;
  for (size_t k = 0; k < m; ++k) groups[find(k)].push_back(static_cast<int>(k));
  std::vector<std::vector<int>> out;
  for (auto& [root, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> closure_points(const PhylogeneticTree& t, const std::vector<int>& group) {
  std::set<int> s;
  for (int k : group)
    for (int v : {t.edges[static_cast<size_t>(k)].u, t.edges[static_cast<size_t>(k)].v})
      if (v < t.n_gamma) s.insert(v);
  return {s.begin(), s.end()};
}

}  // namespace

Facets tree_reduction_complex(const PhylogeneticTree& t) {
  if (t.n_gamma == 1) return {{0}};
  std::vector<std::vector<int>> faces;
  for (const auto& g : punctured_components(t)) faces.push_back(closure_points(t, g));
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  Facets out;
  for (const auto& f : faces) {
    bool inside = false;
    for (const auto& g : faces)
      if (g != f && std::includes(g.begin(), g.end(), f.begin(), f.end())) inside = true;
    if (!inside) out.push_back(f);
  }
  return out;
}

bool is_monomial_type_tree(const PhylogeneticTree& t) {
  for (int v = 0; v < t.n_gamma; ++v)
    if (t.degree(v) > 2) return false;
  return true;
}

MonomialTree monomial_tree(const PhylogeneticTree& t) {
  if (!is_monomial_type_tree(t)) throw PreconditionError("configuration is not of monomial type");
  MonomialTree mt;
  int n = t.n_gamma;
  if (n == 1) {
    mt.n_nodes = 2;
    mt.node_names = {"leaf L1", "c1"};
    mt.edges.push_back({0, 1, 0});
    return mt;
  }
  auto groups = punctured_components(t);
  std::vector<int> comp_of_edge(t.edges.size());
  for (size_t c = 0; c < groups.size(); ++c)
    for (int k : groups[c]) comp_of_edge[static_cast<size_t>(k)] = static_cast<int>(c);
  std::vector<int> leaf_node(static_cast<size_t>(n), -1);
  for (int v = 0; v < n; ++v)
    if (t.degree(v) == 1) {
      leaf_node[static_cast<size_t>(v)] = mt.n_nodes++;
      mt.node_names.push_back("leaf L" + std::to_string(v + 1));
    }
  int base = mt.n_nodes;
  for (size_t c = 0; c < groups.size(); ++c) mt.node_names.push_back("c" + std::to_string(c + 1));
  mt.n_nodes += static_cast<int>(groups.size());
  for (int v = 0; v < n; ++v) {
    std::vector<int> comps;
    for (size_t k = 0; k < t.edges.size(); ++k)
      if (t.edges[k].u == v || t.edges[k].v == v) comps.push_back(base + comp_of_edge[k]);
    if (comps.size() == 1)
      mt.edges.push_back({leaf_node[static_cast<size_t>(v)], comps[0], v});
    else
      mt.edges.push_back({std::min(comps[0], comps[1]), std::max(comps[0], comps[1]), v});
  }
  if (mt.n_nodes != n + 1) throw InternalError("monomial tree has the wrong number of nodes");
  return mt;
}

// ------------------------------------------------------------ cross-check

D2Check cross_check_fiber_d2(const Configuration& gamma) {
  if (gamma.d != 2) throw PreconditionError("tree cross-check needs d = 2");
  D2Check c;
  FiberRing r = fiber_ring(2, gamma.n());
  c.fiber = fiber_report(gamma, r);
  c.count_ok = static_cast<int>(c.fiber.components.size()) == gamma.n();
  c.monomial_classes_ok = std::all_of(c.fiber.multidegrees.begin(), c.fiber.multidegrees.end(),
                                      [](const ChowClass& k) { return k.size() == 1; });
  c.tree_complex = tree_reduction_complex(phylogenetic_tree(distance_matrix(gamma)));
  bool all_primary = std::all_of(c.fiber.primary.begin(), c.fiber.primary.end(), [](int f) { return f >= 0; });
  if (c.count_ok && all_primary) {
    for (const auto& f : c.fiber.complex) {
      std::vector<int> g;
      for (int v : f) g.push_back(c.fiber.primary[static_cast<size_t>(v)]);
      std::sort(g.begin(), g.end());
      c.fiber_complex.push_back(g);
    }
    std::sort(c.fiber_complex.begin(), c.fiber_complex.end());
    Facets tc = c.tree_complex;
    std::sort(tc.begin(), tc.end());
    c.complex_ok = c.fiber_complex == tc;
  }
  return c;
}

}  // namespace mustafin
