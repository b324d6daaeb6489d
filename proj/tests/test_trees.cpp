#include <doctest.h>

#include <algorithm>
#include <functional>

#include "mustafin/random.hpp"
#include "mustafin/trees.hpp"

using namespace mustafin;

namespace {

ValuedMatrix M2(const char* a, const char* b, const char* c, const char* d) {
  ValuedMatrix m(2, 2);
  m(0, 0) = ValuedScalar::parse(a);
  m(0, 1) = ValuedScalar::parse(b);
  m(1, 0) = ValuedScalar::parse(c);
  m(1, 1) = ValuedScalar::parse(d);
  return m;
}

Configuration load(const char* name) { return load_configuration(std::string(MUSTAFIN_SOURCE_DIR) + "/data/" + name); }

Configuration diag2(std::vector<int64_t> s) {
  Configuration c;
  c.d = 2;
  for (int64_t e : s) c.points.push_back(LatticeClass::diag({0, e}));
  return c;
}

}  // namespace

TEST_SUITE("trees") {
  TEST_CASE("thickness") {
    ValuedMatrix id = ValuedMatrix::identity(2);
    CHECK(thickness(id, id) == 0);
    CHECK(thickness(id, ValuedMatrix::diag_t({0, 3})) == 3);
    CHECK(thickness(M2("1", "0", "1", "t"), M2("1", "0", "2", "t")) == 2);
    CHECK_THROWS_AS(thickness(id, M2("1", "1", "1", "1")), PreconditionError);
  }

  TEST_CASE("thickness equals distance") {
    Rng rng(51);
    for (int k = 0; k < 100; ++k) {
      ValuedMatrix g = random_lattice_basis(rng, 2, 3, false), h = random_lattice_basis(rng, 2, 3, false);
      int64_t dist = class_distance(LatticeClass(g), LatticeClass(h));
      CHECK(thickness(g, h) == dist);
      CHECK(thickness(g * random_unimodular(rng, 2), h) == dist);
      CHECK(thickness(g, h * random_unimodular(rng, 2)) == dist);
    }
  }

  TEST_CASE("collinear path") {
    PhylogeneticTree t = phylogenetic_tree(distance_matrix(diag2({0, 1, 3})));
    CHECK(t.n_nodes == 3);
    REQUIRE(t.edges.size() == 2);
    CHECK(t.path_length(0, 1) == 1);
    CHECK(t.path_length(1, 2) == 2);
    CHECK(t.degree(1) == 2);
    CHECK(tree_reduction_complex(t) == Facets{{0, 1}, {1, 2}});
    CHECK(is_monomial_type_tree(t));
  }

  TEST_CASE("star metric") {
    PhylogeneticTree t = phylogenetic_tree({{0, 2, 2}, {2, 0, 2}, {2, 2, 0}});
    CHECK(t.n_nodes == 4);
    CHECK(t.degree(3) == 3);
    for (const auto& e : t.edges) CHECK(e.len == 1);
    CHECK(tree_reduction_complex(t) == Facets{{0, 1, 2}});
    MonomialTree mt = monomial_tree(t);
    CHECK(mt.n_nodes == 4);
    CHECK(mt.edges.size() == 3);
    std::vector<int> deg(4);
    for (const auto& e : mt.edges) {
      ++deg[static_cast<size_t>(e.a)];
      ++deg[static_cast<size_t>(e.b)];
    }
    CHECK(*std::max_element(deg.begin(), deg.end()) == 3);
  }

  TEST_CASE("rejects non-tree metrics") {
    CHECK_THROWS_AS(phylogenetic_tree({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}}), PreconditionError);
    CHECK_THROWS_AS(phylogenetic_tree({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), PreconditionError);
  }

  TEST_CASE("interior node is not monomial") {
    // one lattice adjacent to three others in distinct directions
    Configuration c;
    c.d = 2;
    c.points = {LatticeClass::diag({0, 0}), LatticeClass::diag({0, 1}), LatticeClass::diag({1, 0}),
                LatticeClass(M2("1", "0", "1", "t"))};
    PhylogeneticTree t = phylogenetic_tree(distance_matrix(c));
    CHECK(t.n_nodes == 4);
    CHECK(t.degree(0) == 3);
    CHECK_FALSE(is_monomial_type_tree(t));
    CHECK(tree_reduction_complex(t) == Facets{{0, 1}, {0, 2}, {0, 3}});
    CHECK_THROWS_AS(monomial_tree(t), PreconditionError);
  }

  TEST_CASE("eight point tree") {
    Configuration c = load("tree8.json");
    PhylogeneticTree t = phylogenetic_tree(distance_matrix(c));
    int leaves = 0, gamma_internal = 0;
    for (int v = 0; v < t.n_nodes; ++v) {
      if (t.degree(v) == 1) ++leaves;
      if (v < t.n_gamma && t.degree(v) > 1) ++gamma_internal;
    }
    CHECK(leaves == 6);
    CHECK(gamma_internal == 2);
    CHECK(is_monomial_type_tree(t));
    Facets cx = tree_reduction_complex(t);
    std::vector<size_t> sizes;
    for (const auto& f : cx) sizes.push_back(f.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{3, 3, 4});
    MonomialTree mt = monomial_tree(t);
    CHECK(mt.n_nodes == 9);
    CHECK(mt.edges.size() == 8);
  }

  TEST_CASE("two points") {
    MonomialTree mt = monomial_tree(phylogenetic_tree(distance_matrix(diag2({0, 1}))));
    CHECK(mt.n_nodes == 3);
    CHECK(mt.edges.size() == 2);

    D2Check chk = cross_check_fiber_d2(diag2({0, 1}));
    CHECK(chk.ok());
    FiberRing r = fiber_ring(2, 2);
    CHECK(ideal_equal(chk.fiber.fiber_ideal, parse_ideal({"x21*x12"}, r), r.ord));
  }

  TEST_CASE("collinear fiber") {
    D2Check chk = cross_check_fiber_d2(load("collinear.json"));
    CHECK(chk.ok());
    CHECK(chk.fiber.components.size() == 3);
  }

  TEST_CASE("random trees are reconstructed") {
    Rng rng(52);
    for (int k = 0; k < 40; ++k) {
      int m = static_cast<int>(uniform(rng, 2, 9));
      std::vector<std::vector<std::pair<int, int64_t>>> adj(static_cast<size_t>(m));
      for (int v = 1; v < m; ++v) {
        int u = static_cast<int>(uniform(rng, 0, v - 1));
        int64_t len = uniform(rng, 1, 4);
        adj[static_cast<size_t>(u)].push_back({v, len});
        adj[static_cast<size_t>(v)].push_back({u, len});
      }
      // leaves and degree-2 nodes are always labeled, other nodes sometimes
      std::vector<int> labels;
      for (int v = 0; v < m; ++v)
        if (adj[static_cast<size_t>(v)].size() <= 2 || uniform(rng, 0, 1) == 1) labels.push_back(v);
      std::vector<int64_t> depth(static_cast<size_t>(m));
      std::function<void(int, int, int64_t)> walk = [&](int v, int from, int64_t dd) {
        depth[static_cast<size_t>(v)] = dd;
        for (auto [w, l] : adj[static_cast<size_t>(v)])
          if (w != from) walk(w, v, dd + l);
      };
      DistanceMatrix dist(labels.size(), std::vector<int64_t>(labels.size()));
      for (size_t a = 0; a < labels.size(); ++a) {
        walk(labels[a], -1, 0);
        for (size_t b = 0; b < labels.size(); ++b) dist[a][b] = depth[static_cast<size_t>(labels[b])];
      }
      if (labels.size() < 2) continue;
      PhylogeneticTree t = phylogenetic_tree(dist);
      CHECK(t.n_nodes == m);
      for (size_t a = 0; a < labels.size(); ++a)
        for (size_t b = 0; b < labels.size(); ++b)
          CHECK(t.path_length(static_cast<int>(a), static_cast<int>(b)) == dist[a][b]);
      for (int v = t.n_gamma; v < t.n_nodes; ++v) CHECK(t.degree(v) >= 3);
    }
  }

  TEST_CASE("random d = 2 configurations") {
    Rng rng(53);
    for (int k = 0; k < 15; ++k) {
      Configuration c = random_configuration(rng, 2, static_cast<int>(uniform(rng, 2, 4)), 2);
      D2Check chk = cross_check_fiber_d2(c);
      CHECK(chk.ok());
      PhylogeneticTree t = phylogenetic_tree(distance_matrix(c));
      Facets cx = tree_reduction_complex(t);
      std::vector<int> covered(static_cast<size_t>(c.n()));
      for (const auto& f : cx)
        for (int v : f) covered[static_cast<size_t>(v)] = 1;
      CHECK(std::count(covered.begin(), covered.end(), 1) == c.n());
    }
  }
}
