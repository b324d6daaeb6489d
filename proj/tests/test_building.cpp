#include <doctest.h>

#include <set>

#include "mustafin/building.hpp"
#include "mustafin/random.hpp"

using namespace mustafin;

namespace {

LatticeClass D(std::vector<int64_t> e) { return LatticeClass::diag(e); }

LatticeClass M(std::vector<std::vector<const char*>> rows) {
  int d = static_cast<int>(rows.size());
  ValuedMatrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = ValuedScalar::parse(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]);
  return LatticeClass(g);
}

std::set<std::string> keys(const std::vector<LatticeClass>& ls) {
  std::set<std::string> s;
  for (const auto& l : ls) s.insert(class_key(l));
  return s;
}

}  // namespace

TEST_SUITE("building") {
  TEST_CASE("elementary exponents") {
    CHECK(elementary_exponents(D({0, 0, 0}), D({0, 1, 3})) == std::vector<int64_t>{0, 1, 3});
    CHECK(elementary_exponents(D({0, 0, 0}), D({0, 0, 0})) == std::vector<int64_t>{0, 0, 0});
    CHECK(elementary_exponents(D({0, 0}), M({{"1", "1"}, {"0", "t"}})) == std::vector<int64_t>{0, 1});
    CHECK(elementary_exponents(D({0, 0}), M({{"t^2", "1"}, {"0", "t^-1"}})) == std::vector<int64_t>{-1, 2});
  }

  TEST_CASE("class distance") {
    CHECK(class_distance(D({2, 1, 0}), D({4, 2, 0})) == 2);
    CHECK(class_distance(D({2, 1, 0}), D({2, 1, 0})) == 0);
    CHECK(class_distance(D({0, 0, 0}), D({0, 1, 1})) == 1);
    CHECK(same_class(D({0, 1, 1}), D({3, 4, 4})));
    CHECK_FALSE(same_class(D({0, 1, 1}), D({0, 1, 2})));
  }

  TEST_CASE("adjacency") {
    CHECK(adjacent(D({0, 0, 0}), D({0, 1, 1})));
    CHECK_FALSE(adjacent(D({0, 0, 0}), D({0, 2, 0})));
    CHECK_FALSE(adjacent(D({0, 0, 0}), D({0, 0, 0})));
  }

  TEST_CASE("lattice intersection") {
    CHECK(same_class(lattice_intersection(D({0, 0}), D({0, 1}), 0, 0), D({0, 1})));
    LatticeClass l = M({{"1", "1"}, {"2", "t"}});
    CHECK(same_class(lattice_intersection(l, l, 0, 1), l));
    CHECK(same_class(lattice_intersection(D({0, 0}), D({-1, 1}), 0, 0), D({0, 1})));
  }

  TEST_CASE("convex hull") {
    Configuration c;
    c.d = 3;
    c.points = {D({0, 0, 0}), D({0, 1, 1})};
    CHECK(convex_hull(c).size() == 2);

    c.points = {D({-1, 0, 0}), D({0, -1, 0}), D({0, 0, -1})};
    auto h = convex_hull(c);
    CHECK(h.size() == 4);
    CHECK(keys(h).count(class_key(D({0, 0, 0}))) == 1);

    // the segment from (0,0,0) to (0,-1,-3) has tropical length 3, so 4 lattice points
    c.points = {D({0, 0, 0}), D({0, 1, 3})};
    h = convex_hull(c);
    CHECK(h.size() == 4);
    CHECK(keys(h).count(class_key(D({0, 1, 3}))) == 1);
    CHECK(keys(h) == keys({D({0, 0, 0}), D({0, 0, 1}), D({0, 0, 2}), D({0, 1, 3})}));
  }

  TEST_CASE("convex hull is closed") {
    Rng rng(21);
    for (int k = 0; k < 4; ++k) {
      Configuration c = random_configuration(rng, 3, 3, 1);
      auto h = convex_hull(c);
      std::set<std::string> s = keys(h);
      int64_t dmax = 0;
      for (const auto& a : h)
        for (const auto& b : h) dmax = std::max(dmax, class_distance(a, b));
      for (const auto& a : h)
        for (const auto& b : h)
          for (int64_t q = 0; q <= dmax; ++q) CHECK(s.count(class_key(lattice_intersection(a, b, 0, q))) == 1);
    }
  }

  TEST_CASE("common apartment") {
    CommonApartment ca = common_apartment(D({0, 0}), D({0, 2}));
    CHECK(ca.basis == ValuedMatrix::identity(2));
    CHECK(ca.exps_a == std::vector<int64_t>{0, 0});
    CHECK(ca.exps_b == std::vector<int64_t>{0, 2});

    LatticeClass a = D({0, 1, 1}), b = M({{"1", "0", "0"}, {"1", "t", "0"}, {"0", "0", "t"}});
    ca = common_apartment(a, b);
    CHECK(same_class(LatticeClass(ca.basis * ValuedMatrix::diag_t(ca.exps_a)), a));
    CHECK(same_class(LatticeClass(ca.basis * ValuedMatrix::diag_t(ca.exps_b)), b));
  }

  TEST_CASE("common apartment of conjugated pairs") {
    Rng rng(22);
    for (int k = 0; k < 12; ++k) {
      std::vector<int64_t> e{0, uniform(rng, -3, 3), uniform(rng, -3, 3)};
      ValuedMatrix g = random_gl(rng, 3, 1), u = random_unimodular(rng, 3);
      LatticeClass a(g * u), b(g * ValuedMatrix::diag_t(e) * random_unimodular(rng, 3));
      CommonApartment ca = common_apartment(a, b);
      std::vector<int64_t> diff;
      for (int i = 0; i < 3; ++i) diff.push_back(ca.exps_b[static_cast<size_t>(i)] - ca.exps_a[static_cast<size_t>(i)]);
      std::sort(diff.begin(), diff.end());
      std::sort(e.begin(), e.end());
      CHECK(diff == e);
      CHECK(same_class(LatticeClass(ca.basis * ValuedMatrix::diag_t(ca.exps_a)), a));
      CHECK(same_class(LatticeClass(ca.basis * ValuedMatrix::diag_t(ca.exps_b)), b));
    }
  }

  TEST_CASE("first step subspaces") {
    // apartment points (0,0,0) and (0,-1,-1): residue spanned by e1
    ResidueSubspace w = first_step_subspace(D({0, 0, 0}), D({0, 1, 1}));
    REQUIRE(w.dim() == 1);
    CHECK(w.basis[0][0] != 0);
    CHECK(w.basis[1][0] == 0);
    CHECK(w.basis[2][0] == 0);

    w = first_step_subspace(D({0, 0, 0}), D({0, 0, 1}));
    CHECK(w.dim() == 2);
    CHECK(w.basis[2][0] == 0);
    CHECK(w.basis[2][1] == 0);

    // residue spanned by e1 + e2
    w = first_step_subspace(D({0, 0, 0}), M({{"1", "0", "0"}, {"1", "t", "0"}, {"0", "0", "t"}}));
    REQUIRE(w.dim() == 1);
    CHECK(w.basis[0][0] == w.basis[1][0]);
    CHECK(w.basis[0][0] != 0);
    CHECK(w.basis[2][0] == 0);
  }

  TEST_CASE("first step rank is proper") {
    Rng rng(23);
    for (int k = 0; k < 30; ++k) {
      Configuration c = random_configuration(rng, 3, 2, 2);
      int r = first_step_subspace(c.points[0], c.points[1]).dim();
      CHECK(r > 0);
      CHECK(r < 3);
    }
  }

  TEST_CASE("distance is a metric and invariant") {
    Rng rng(24);
    for (int k = 0; k < 40; ++k) {
      Configuration c = random_configuration(rng, 3, 3, 2);
      const auto& a = c.points[0];
      const auto& b = c.points[1];
      const auto& x = c.points[2];
      CHECK(class_distance(a, b) == class_distance(b, a));
      CHECK(class_distance(a, b) > 0);
      CHECK(class_distance(a, x) <= class_distance(a, b) + class_distance(b, x));
      ValuedMatrix g = random_gl(rng, 3, 2);
      CHECK(class_distance(LatticeClass(g * a.gen), LatticeClass(g * b.gen)) == class_distance(a, b));
      CHECK(class_distance(LatticeClass(a.gen * random_unimodular(rng, 3)), b) == class_distance(a, b));
    }
  }

  TEST_CASE("class keys agree with exponents") {
    Rng rng(25);
    for (int k = 0; k < 40; ++k) {
      Configuration c = random_configuration(rng, 3, 2, 1);
      LatticeClass a = c.points[0];
      LatticeClass a2(ValuedMatrix::diag_t({2, 2, 2}) * a.gen * random_unimodular(rng, 3));
      CHECK(class_key(a) == class_key(a2));
      CHECK(class_key(a) != class_key(c.points[1]));
    }
  }

  TEST_CASE("configuration documents") {
    Configuration c = configuration_from_json(
        nlohmann::json::parse(R"({"d":2,"lattices":[{"diag":[0,1]},[["1","0"],["1/2 + t","t^2"]]],"labels":["a","b"]})"));
    CHECK(c.n() == 2);
    CHECK(c.labels[1] == "b");
    Configuration back = configuration_from_json(configuration_to_json(c));
    CHECK(same_class(back.points[1], c.points[1]));
    CHECK_THROWS_AS(configuration_from_json(nlohmann::json::parse(R"({"d":2,"lattices":[{"diag":[0]}]})")), ParseError);
    CHECK_THROWS_AS(configuration_from_json(nlohmann::json::parse(R"({"d":2,"lattices":[{"diag":[0,1]},{"diag":[1,2]}]})")),
                    PreconditionError);
    CHECK_THROWS_AS(configuration_from_json(nlohmann::json::parse(R"({"d":2,"lattices":[[["1","1"],["1","1"]]]})")),
                    PreconditionError);
  }
}
