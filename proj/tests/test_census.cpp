#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "mustafin/census.hpp"
#include "mustafin/random.hpp"

using namespace mustafin;

namespace {

Configuration load(const char* name) { return load_configuration(std::string(MUSTAFIN_SOURCE_DIR) + "/data/" + name); }

nlohmann::json table(const char* name) {
  std::ifstream in(std::string(MUSTAFIN_SOURCE_DIR) + "/tests/data/" + name);
  return nlohmann::json::parse(in);
}

RealizationVector vec(const nlohmann::json& j) {
  RealizationVector rv;
  for (size_t k = 0; k < 8; ++k) rv.v[k] = j[k].get<int>();
  return rv;
}

std::vector<std::string> sorted_strs(const Ideal& i, const FiberRing& r) {
  std::vector<std::string> s = ideal_strs(i, r);
  std::sort(s.begin(), s.end());
  return s;
}

Configuration diag3(std::vector<int64_t> a, std::vector<int64_t> b, std::vector<int64_t> c) {
  Configuration g;
  g.d = 3;
  g.points = {LatticeClass::diag(a), LatticeClass::diag(b), LatticeClass::diag(c)};
  return g;
}

}  // namespace

TEST_SUITE("census") {
  TEST_CASE("bend points") {
    BendPoints bp = bend_points(load("sailboat.json"));
    CHECK(bp.bent_count == 3);
    CHECK(bp.distinct.size() == 1);
    bp = bend_points(load("airplane.json"));
    CHECK(bp.bent_count == 3);
    CHECK(bp.distinct.size() == 2);
    bp = bend_points(diag3({0, 0, 0}, {0, 1, 1}, {0, 0, 1}));
    CHECK(bp.bent_count == 0);
    bp = bend_points(diag3({0, 0, 0}, {0, 1, 3}, {0, 5, 0}));
    REQUIRE(bp.on_pair[0].has_value());
    CHECK(same_class(*bp.on_pair[0], LatticeClass::diag({0, 0, 2})));
    CHECK_THROWS_AS(bend_points(load("collinear.json")), PreconditionError);
  }

  TEST_CASE("expected component counts") {
    CHECK(expected_component_count(load("cyclic_triple.json")) == 6);
    CHECK(expected_component_count(load("sailboat.json")) == 4);
    CHECK(expected_component_count(load("airplane.json")) == 5);
    CHECK(expected_component_count(load("mutant_airplane.json")) == 5);
  }

  TEST_CASE("monomial realizations") {
    FiberRing r = fiber_ring(3, 3, true);
    const auto rows = table("monomial_types.json")["rows"];
    REQUIRE(rows.size() == 13);
    for (const auto& row : rows) {
      CAPTURE(row["type"].get<int>());
      Configuration c = realize_monomial_type(vec(row["vector"]));
      Ideal want = parse_ideal(row["ideal"].get<std::vector<std::string>>(), r);
      CHECK(sorted_strs(special_fiber(c, r), r) == sorted_strs(want, r));
    }
  }

  TEST_CASE("almost monomial realizations") {
    FiberRing r = fiber_ring(3, 3, true);
    const auto rows = table("almost_monomial.json")["rows"];
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
      Configuration c = realize_monomial_type(vec(row["vector"]));
      FiberReport rep = fiber_report(c, r);
      Ideal want = parse_ideal(row["ideal"].get<std::vector<std::string>>(), r);
      CHECK(sorted_strs(rep.fiber_ideal, r) == sorted_strs(want, r));
      CHECK(rep.components.size() == 5);
      int binomial_primes = 0;
      for (const auto& p : rep.components)
        binomial_primes += std::any_of(p.begin(), p.end(), [](const Poly& f) { return !f.is_monomial(); }) ? 1 : 0;
      CHECK(binomial_primes == 1);
    }
  }

  TEST_CASE("degenerate realization vectors") {
    CHECK_THROWS_AS(realize_monomial_type({{0, 0, 0, 0, 0, 0, 0, 0}}), PreconditionError);
  }

  TEST_CASE("signatures are scale and permutation invariant") {
    Configuration c = load("airplane.json");
    FiberRing r = fiber_ring(3, 3, true);
    TriangleSignature s0 = signature(fiber_report(c, r), 3);
    Configuration scaled = c;
    for (auto& p : scaled.points) p = LatticeClass(ValuedMatrix::diag_t({4, 4, 4}) * p.gen);
    CHECK(signature(fiber_report(scaled, r), 3).key == s0.key);
    Configuration perm = c;
    std::swap(perm.points[0], perm.points[2]);
    CHECK(signature(fiber_report(perm, r), 3).key == s0.key);
    CHECK(s0.component_count == 5);
    CHECK_FALSE(s0.monomial_flag);
  }

  TEST_CASE("catalog") {
    const Catalog& cat = census_catalog();
    CHECK(cat.entries.size() == 38);
    CHECK(cat.planar == 18);
    CHECK(cat.non_planar == 20);
    CHECK(catalog_matches_table(cat));
    std::set<std::string> keys;
    int six = 0, six_planar = 0;
    for (const auto& e : cat.entries) {
      keys.insert(e.sig.key);
      if (e.sig.component_count == 6) {
        ++six;
        six_planar += e.planar ? 1 : 0;
        CHECK(e.sig.monomial_flag);
      }
    }
    CHECK(keys.size() == 38);
    CHECK(six == 13);
    CHECK(six_planar == 5);
  }

  TEST_CASE("classification") {
    Classification s = classify_triangle(load("sailboat.json"));
    CHECK(s.bent_count == 3);
    CHECK(s.sig.component_count == 4);
    CHECK_FALSE(s.planar);
    Classification a = classify_triangle(load("airplane.json"));
    Classification m = classify_triangle(load("mutant_airplane.json"));
    CHECK(a.type_id != m.type_id);
    CHECK(a.sig.component_count == 5);
    CHECK(classify_triangle(load("cyclic_triple.json")).planar);
    CHECK_THROWS_AS(classify_triangle(load("collinear.json")), PreconditionError);
  }

  TEST_CASE("classification under coordinate changes") {
    Rng rng(61);
    const Catalog& cat = census_catalog();
    for (size_t k = 0; k < cat.entries.size(); k += 5) {
      Configuration c = cat.entries[k].rep;
      ValuedMatrix g = random_gl(rng, 3, 1);
      for (auto& p : c.points) p = LatticeClass(g * p.gen);
      std::swap(c.points[0], c.points[static_cast<size_t>(uniform(rng, 0, 2))]);
      CHECK(classify_triangle(c, cat).type_id == cat.entries[k].type_id);
    }
  }
}
