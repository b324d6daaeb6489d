#include <doctest.h>

#include <algorithm>
#include <iterator>
#include <set>

#include "mustafin/building.hpp"
#include "mustafin/fiber.hpp"
#include "mustafin/random.hpp"
#include "mustafin/tropical.hpp"

using namespace mustafin;

namespace {

ApartmentPoint A(std::vector<int64_t> c) { return ApartmentPoint(std::move(c)); }
ApartmentPoint E(std::vector<int64_t> m) { return point_from_exponents(m); }

std::vector<ApartmentPoint> four_cells() { return {E({0, 0, 0, 0}), E({0, 1, 0, 1}), E({0, 0, 1, 1})}; }
std::vector<ApartmentPoint> cyclic_triple() { return {E({2, 1, 0}), E({4, 2, 0}), E({6, 3, 0})}; }
std::vector<ApartmentPoint> unit3() { return {A({1, 0, 0}), A({0, 1, 0}), A({0, 0, 1})}; }

}  // namespace

TEST_SUITE("tropical") {
  TEST_CASE("canonical points") {
    CHECK(A({3, 4, 5}) == A({0, 1, 2}));
    CHECK(E({0, 1, 3}) == A({0, -1, -3}));
    CHECK(exponents_from_point(A({0, -1, -3})) == std::vector<int64_t>{0, 1, 3});
  }

  TEST_CASE("distance") {
    CHECK(trop_dist(A({-2, -1, 0}), A({-4, -2, 0})) == 2);
    CHECK(trop_dist(A({0, 5, -2}), A({0, 5, -2})) == 0);
    Rng rng(31);
    for (int k = 0; k < 50; ++k) {
      auto pts = random_points(rng, 3, 2, 4);
      auto m0 = exponents_from_point(pts[0]), m1 = exponents_from_point(pts[1]);
      CHECK(trop_dist(pts[0], pts[1]) == class_distance(LatticeClass::diag(m0), LatticeClass::diag(m1)));
    }
  }

  TEST_CASE("membership") {
    std::vector<ApartmentPoint> g{A({0, 0, 0}), A({0, -1, -3})};
    CHECK(trop_member(g[0], g));
    CHECK(trop_member(g[1], g));
    CHECK(trop_member(A({0, 0, -1}), g));
    CHECK(trop_member(A({0, 0, -2}), g));
    CHECK_FALSE(trop_member(A({0, -1, -1}), g));
    CHECK_FALSE(trop_member(A({0, -3, -1}), g));
  }

  TEST_CASE("lattice points of hulls") {
    auto pts = tconv_lattice_points({A({0, 0, 0}), A({0, -1, -3})});
    CHECK(std::set<ApartmentPoint>(pts.begin(), pts.end()) ==
          std::set<ApartmentPoint>{A({0, 0, 0}), A({0, 0, -1}), A({0, 0, -2}), A({0, -1, -3})});
    pts = tconv_lattice_points(unit3());
    CHECK(pts.size() == 4);
    CHECK(std::count(pts.begin(), pts.end(), A({0, 0, 0})) == 1);
    CHECK(tconv_lattice_points({A({0, 2, 1})}) == std::vector<ApartmentPoint>{A({0, 2, 1})});
  }

  TEST_CASE("hull agrees with the building") {
    Rng rng(32);
    for (int k = 0; k < 15; ++k) {
      auto pts = random_points(rng, 3, 3, 2);
      Configuration c;
      c.d = 3;
      for (const auto& p : pts) c.points.push_back(LatticeClass::diag(exponents_from_point(p)));
      std::set<std::string> hull, trop;
      for (const auto& l : convex_hull(c)) hull.insert(class_key(l));
      for (const auto& p : tconv_lattice_points(pts)) trop.insert(class_key(LatticeClass::diag(exponents_from_point(p))));
      CHECK(hull == trop);
    }
  }

  TEST_CASE("segments") {
    TropicalSegment s = tropical_segment(A({0, 0, 0}), A({0, -1, -3}));
    std::vector<int64_t> len = s.lengths;
    std::sort(len.begin(), len.end());
    CHECK(len == std::vector<int64_t>{1, 2});
    REQUIRE(s.breakpoints.size() == 3);
    CHECK(s.breakpoints[1] == A({0, 0, -2}));

    s = tropical_segment(A({0, 0, 0}), A({0, 0, -3}));
    len = s.lengths;
    std::sort(len.begin(), len.end());
    CHECK(len == std::vector<int64_t>{0, 3});
    CHECK(s.breakpoints.size() == 2);

    s = tropical_segment(A({0, 1, 2}), A({0, 1, 2}));
    CHECK(s.lengths == std::vector<int64_t>{0, 0});
  }

  TEST_CASE("segment lengths reverse and translate") {
    Rng rng(33);
    for (int k = 0; k < 50; ++k) {
      auto p = random_points(rng, 4, 2, 5);
      auto fw = tropical_segment(p[0], p[1]).lengths;
      auto bw = tropical_segment(p[1], p[0]).lengths;
      std::reverse(bw.begin(), bw.end());
      CHECK(fw == bw);
      int64_t sum = 0;
      for (auto l : fw) sum += l;
      CHECK(sum == trop_dist(p[0], p[1]));
    }
  }

  TEST_CASE("lift coefficients") {
    auto g = four_cells();
    CHECK(lift_coefficient(g, {0, 0, 0}) == 0);
    CHECK(lift_coefficient(g, {0, 1, 2}) == 2);
    CHECK(lift_coefficient({A({0, -4, 7})}, {2}) == -7);
    std::multiset<int64_t> heights;
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b)
        for (int c = b; c < 4; ++c) heights.insert(lift_coefficient(g, {a, b, c}));
    CHECK(heights.count(0) == 1);
    CHECK(heights.count(1) == 7);
    CHECK(heights.count(2) == 12);
  }

  TEST_CASE("mixed subdivisions") {
    CHECK(mixed_subdivision(four_cells()).cells.size() == 4);
    CHECK(mixed_subdivision(cyclic_triple()).cells.size() == 6);
    auto one = mixed_subdivision({A({0, 3, 1})});
    REQUIRE(one.cells.size() == 1);
    CHECK(one.cells[0].volume == 1);
    CHECK(mixed_subdivision(unit3()).cells.size() == 4);
  }

  TEST_CASE("volume conservation and anchors") {
    Rng rng(34);
    for (int k = 0; k < 30; ++k) {
      int d = static_cast<int>(uniform(rng, 2, 4)), n = static_cast<int>(uniform(rng, 1, 4));
      auto pts = random_points(rng, d, n, 3);
      auto sub = mixed_subdivision(pts);
      int64_t vol = 0;
      std::set<ApartmentPoint> anchors;
      for (const auto& c : sub.cells) {
        vol += c.volume;
        anchors.insert(c.anchor);
        CHECK(c.volume == cell_volume(c.sets, d));
      }
      int64_t full = 1;
      for (int i = 0; i < d - 1; ++i) full *= n;
      CHECK(vol == full);
      CHECK(anchors.size() == sub.cells.size());
      CHECK(is_general_position(pts) == (static_cast<int64_t>(sub.cells.size()) == binomial(n + d - 2, d - 1)));
    }
  }

  TEST_CASE("general position") {
    CHECK(is_general_position(cyclic_triple()));
    CHECK_FALSE(is_general_position({A({0, 1, 2}), A({0, 1, 2})}));
    CHECK_FALSE(is_general_position(unit3()));
    GeneralPositionReport r = general_position_report(unit3());
    CHECK_FALSE(r.minors_ok);
    CHECK_FALSE(r.count_ok);
  }

  TEST_CASE("monomial fibers") {
    MonomialFiber f = monomial_special_fiber(cyclic_triple());
    CHECK(f.primes.size() == 6);
    CHECK(f.ideal.size() == 9);
    auto sub = mixed_subdivision(cyclic_triple());
    auto prim = classify_cell_vertices(sub, cyclic_triple());
    CHECK(std::count(prim.begin(), prim.end(), true) == 3);
    // a tetrahedron with triangles glued along two adjacent edges
    Facets cx = reduction_complex_from_cells(sub);
    std::sort(cx.begin(), cx.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    REQUIRE(cx.size() == 3);
    CHECK(cx[0].size() == 3);
    CHECK(cx[1].size() == 3);
    CHECK(cx[2].size() == 4);
    auto common = [](const std::vector<int>& a, const std::vector<int>& b) {
      std::vector<int> out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out.size();
    };
    CHECK(common(cx[0], cx[2]) == 2);
    CHECK(common(cx[1], cx[2]) == 2);
    CHECK(common(cx[0], cx[1]) == 1);

    MonomialFiber one = monomial_special_fiber({A({0, 1})});
    CHECK(one.primes.size() == 1);
    CHECK(one.ideal.empty());
    CHECK_THROWS_AS(monomial_special_fiber(unit3()), PreconditionError);
  }

  TEST_CASE("monomial fiber matches the Groebner fiber") {
    Rng rng(35);
    int seen = 0;
    while (seen < 6) {
      auto pts = random_points(rng, 3, 3, 3);
      if (!is_general_position(pts)) continue;
      ++seen;
      Configuration c;
      c.d = 3;
      for (const auto& p : pts) c.points.push_back(LatticeClass::diag(exponents_from_point(p)));
      FiberRing r = fiber_ring(3, 3);
      Ideal fib = special_fiber(c, r);
      MonomialFiber mf = monomial_special_fiber(pts);
      Ideal mono;
      for (SqMono m : mf.ideal) {
        Mono mm;
        for (int v = 0; v < 9; ++v)
          if (m >> v & 1) mm = mono_mul(mm, Mono::var(v));
        mono.push_back(poly_mono(mm));
      }
      CHECK(ideal_str(fib, r) == ideal_str(mono, r));
    }
  }

  TEST_CASE("secondary count") {
    Rng rng(36);
    for (int k = 0; k < 20; ++k) {
      auto pts = random_points(rng, 3, 4, 3);
      if (!is_general_position(pts)) continue;
      auto sub = mixed_subdivision(pts);
      auto prim = classify_cell_vertices(sub, pts);
      CHECK(std::count(prim.begin(), prim.end(), false) == binomial(4 + 1, 2) - 4);
    }
  }
}
