// One line per acceptance criterion; exit status 1 when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "mustafin/census.hpp"
#include "mustafin/random.hpp"
#include "mustafin/trees.hpp"

using namespace mustafin;

namespace {

const std::string kDir = MUSTAFIN_SOURCE_DIR;

struct Result {
  bool ok = false;
  std::string detail;
};

nlohmann::json read_json(const std::string& rel) {
  std::ifstream in(kDir + "/" + rel);
  return nlohmann::json::parse(in);
}

Ideal parse_primes_meet(const nlohmann::json& primes, const FiberRing& r) {
  Ideal meet = parse_ideal(primes[0].get<std::vector<std::string>>(), r);
  for (size_t k = 1; k < primes.size(); ++k)
    meet = ideal_intersection(meet, parse_ideal(primes[k].get<std::vector<std::string>>(), r), r.aux(), r.ord);
  return meet;
}

bool same_primes(const std::vector<Ideal>& got, const nlohmann::json& want, const FiberRing& r) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    Ideal p = parse_ideal(w.get<std::vector<std::string>>(), r);
    int hits = 0;
    for (const auto& q : got) hits += ideal_equal(p, q, r.ord) ? 1 : 0;
    if (hits != 1) return false;
  }
  return true;
}

int primary_count(const FiberReport& rep) {
  return static_cast<int>(std::count_if(rep.primary.begin(), rep.primary.end(), [](int f) { return f >= 0; }));
}

Configuration diagonal(const std::vector<ApartmentPoint>& pts) {
  Configuration c;
  c.d = pts.front().d();
  for (const auto& p : pts) c.points.push_back(LatticeClass::diag(exponents_from_point(p)));
  return c;
}

std::vector<std::string> sorted_strs(const Ideal& i, const FiberRing& r) {
  std::vector<std::string> s = ideal_strs(i, r);
  std::sort(s.begin(), s.end());
  return s;
}

Result golden_fiber(const char* name, bool check_ideal_size) {
  const auto g = read_json("tests/data/fibers.json")[name];
  Configuration c = load_configuration(kDir + "/" + g["config"].get<std::string>());
  FiberRing r = fiber_ring(c.d, c.n(), g.value("xyz", false));
  FiberReport rep = fiber_report(c, r);
  Ideal want = parse_ideal(g["ideal"].get<std::vector<std::string>>(), r);
  bool ok = sorted_strs(rep.fiber_ideal, r) == sorted_strs(want, r) && same_primes(rep.components, g["primes"], r) &&
            primary_count(rep) == 3 && (!check_ideal_size || rep.fiber_ideal.size() == want.size());
  return {ok, std::to_string(rep.fiber_ideal.size()) + " generators, " + std::to_string(rep.components.size()) +
                  " components, " + std::to_string(primary_count(rep)) + " primary"};
}

Result c1() { return golden_fiber("cyclic_triple", true); }

Result c2() { return golden_fiber("borel_fixed", true); }

Result c3() {
  Rng rng(1003);
  int bad = 0;
  std::vector<ValuedMatrix> units;
  for (int k = 0; k < 100; ++k) units.push_back(random_unimodular(rng, 2));
  for (int k = 0; k < 1000; ++k) {
    ValuedMatrix g = random_lattice_basis(rng, 2, 3, false), h = random_lattice_basis(rng, 2, 3, false);
    int64_t dist = class_distance(LatticeClass(g), LatticeClass(h));
    if (thickness(g, h) != dist) ++bad;
    const ValuedMatrix& u = units[static_cast<size_t>(k % 100)];
    if (thickness(g * u, h) != dist || thickness(g, h * u) != dist) ++bad;
  }
  for (const auto& u : units) {
    ValuedMatrix g = random_lattice_basis(rng, 2, 3, false), h = random_lattice_basis(rng, 2, 3, false);
    if (thickness(g * u, h) != thickness(g, h)) ++bad;
  }
  return {bad == 0, "1000 pairs, 100 unimodular factors, " + std::to_string(bad) + " mismatches"};
}

Result c4() {
  Rng rng(1004);
  int bad = 0;
  for (int k = 0; k < 200; ++k) {
    Configuration c = random_configuration(rng, 2, static_cast<int>(uniform(rng, 2, 5)), 3);
    if (!cross_check_fiber_d2(c).ok()) ++bad;
  }
  return {bad == 0, "200 configurations, " + std::to_string(bad) + " failures"};
}

Result c5() {
  Configuration c = load_configuration(kDir + "/data/four_cells.json");
  std::vector<ApartmentPoint> pts;
  for (const auto& l : c.points) pts.push_back(point_from_exponents(*diagonal_exponents(l)));
  std::map<int64_t, int> heights;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b)
      for (int d = b; d < 4; ++d) ++heights[lift_coefficient(pts, {a, b, d})];
  MixedSubdivision sub = mixed_subdivision(pts);
  int64_t vol = 0;
  for (const auto& cell : sub.cells) vol += cell.volume;
  bool ok = lift_coefficient(pts, {0, 0, 0}) == 0 && lift_coefficient(pts, {0, 1, 2}) == 2 &&
            heights == std::map<int64_t, int>{{0, 1}, {1, 7}, {2, 12}} && sub.cells.size() == 4 && vol == 27;
  return {ok, std::to_string(sub.cells.size()) + " cells, volume " + std::to_string(vol)};
}

Result c6() {
  Rng rng(1006);
  FiberRing r = fiber_ring(3, 3);
  int done = 0, bad = 0;
  while (done < 100) {
    auto pts = random_points(rng, 3, 3, 4);
    if (!is_general_position(pts)) continue;
    ++done;
    Configuration c = diagonal(pts);
    MonomialFiber mf = monomial_special_fiber(pts);
    Ideal mono;
    for (SqMono m : mf.ideal) {
      Mono mm;
      for (int v = 0; v < 9; ++v)
        if (m >> v & 1) mm = mono_mul(mm, Mono::var(v));
      mono.push_back(poly_mono(mm));
    }
    FiberReport rep = fiber_report(c, r);
    if (sorted_strs(rep.fiber_ideal, r) != sorted_strs(mono, r) || rep.components.size() != 6 ||
        mf.primes.size() != 6)
      ++bad;
  }
  return {bad == 0, "100 configurations, " + std::to_string(bad) + " mismatches"};
}

Result c7() {
  Rng rng(1007);
  int bad = 0;
  for (int k = 0; k < 200; ++k) {
    int d = static_cast<int>(uniform(rng, 2, 3)), n = static_cast<int>(uniform(rng, 2, 4));
    Configuration c = random_configuration(rng, d, n, 2);
    FiberRing r = fiber_ring(d, n);
    FiberReport rep = fiber_report(c, r);
    ChowClass sum;
    for (const auto& m : rep.multidegrees) sum.insert(sum.end(), m.begin(), m.end());
    std::sort(sum.begin(), sum.end());
    if (static_cast<int64_t>(rep.components.size()) > binomial(n + d - 2, d - 1) || primary_count(rep) != n ||
        sum != full_diagonal_class(d, n))
      ++bad;
  }
  return {bad == 0, "200 configurations, " + std::to_string(bad) + " failures"};
}

RealizationVector vec(const nlohmann::json& j) {
  RealizationVector rv;
  for (size_t k = 0; k < 8; ++k) rv.v[k] = j[k].get<int>();
  return rv;
}

Result c8() {
  FiberRing r = fiber_ring(3, 3, true);
  int good = 0, total = 0;
  const auto rows = read_json("tests/data/monomial_types.json")["rows"];
  for (const auto& row : rows) {
    ++total;
    Ideal got = special_fiber(realize_monomial_type(vec(row["vector"])), r);
    Ideal want = parse_ideal(row["ideal"].get<std::vector<std::string>>(), r);
    if (sorted_strs(got, r) == sorted_strs(want, r)) ++good;
  }
  return {good == 13 && total == 13, std::to_string(good) + " of " + std::to_string(total) + " ideals"};
}

Result c9() {
  FiberRing r = fiber_ring(3, 3, true);
  int good = 0, total = 0;
  const auto rows = read_json("tests/data/almost_monomial.json")["rows"];
  for (const auto& row : rows) {
    ++total;
    FiberReport rep = fiber_report(realize_monomial_type(vec(row["vector"])), r);
    Ideal want = parse_ideal(row["ideal"].get<std::vector<std::string>>(), r);
    int binomial_primes = 0;
    for (const auto& p : rep.components)
      binomial_primes += std::any_of(p.begin(), p.end(), [](const Poly& f) { return !f.is_monomial(); }) ? 1 : 0;
    if (sorted_strs(rep.fiber_ideal, r) == sorted_strs(want, r) && rep.components.size() == 5 && binomial_primes == 1)
      ++good;
  }
  return {good == 6 && total == 6, std::to_string(good) + " of " + std::to_string(total) + " ideals"};
}

Result c10() {
  auto all = read_json("tests/data/fibers.json");
  std::string detail;
  bool ok = true;
  for (const char* name : {"airplane", "mutant_airplane", "sailboat"}) {
    const auto& g = all[name];
    Configuration c = load_configuration(kDir + "/" + g["config"].get<std::string>());
    FiberRing r = fiber_ring(3, 3, true);
    bool eq = ideal_equal(special_fiber(c, r), parse_primes_meet(g["primes"], r), r.ord);
    ok = ok && eq;
    detail += std::string(detail.empty() ? "" : ", ") + name + (eq ? " equal" : " differs");
  }
  return {ok, detail};
}

Result c11() {
  const Catalog& cat = census_catalog();
  bool ok = cat.entries.size() == 38 && cat.planar == 18 && cat.non_planar == 20 && catalog_matches_table(cat);
  Rng rng(1011);
  int bad = 0;
  for (const auto& e : cat.entries) {
    Configuration c = e.rep;
    ValuedMatrix g = random_gl(rng, 3, 2);
    for (auto& p : c.points) p = LatticeClass(g * p.gen);
    std::vector<int> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    Configuration shuffled = c;
    for (size_t k = 0; k < 3; ++k) shuffled.points[k] = c.points[static_cast<size_t>(perm[k])];
    if (classify_triangle(shuffled, cat).type_id != e.type_id) ++bad;
  }
  return {ok && bad == 0, std::to_string(cat.entries.size()) + " types, " + std::to_string(cat.planar) + " planar, " +
                              std::to_string(bad) + " reclassification failures"};
}

Result c12() {
  Rng rng(1012);
  int bad = 0;
  for (int k = 0; k < 100; ++k) {
    int d = static_cast<int>(uniform(rng, 2, 4)), n = static_cast<int>(uniform(rng, 1, 4));
    auto pts = random_points(rng, d, n, 2);
    std::set<std::string> a, b;
    for (const auto& l : convex_hull(diagonal(pts))) a.insert(class_key(l));
    for (const auto& p : tconv_lattice_points(pts)) b.insert(class_key(LatticeClass::diag(exponents_from_point(p))));
    if (a != b) ++bad;
  }
  return {bad == 0, "100 configurations, " + std::to_string(bad) + " mismatches"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 for none
  std::function<Result()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "cyclic diagonal triple fiber and primes", 5, c1},
      {2, "generic bases give the Borel-fixed fiber", 10, c2},
      {3, "thickness equals distance for d = 2", 30, c3},
      {4, "d = 2 reduction complexes match punctured trees", 300, c4},
      {5, "mixed subdivision heights, cells and volume", 0, c5},
      {6, "tropical and Groebner fibers agree", 600, c6},
      {7, "component bound, primary flags, diagonal class", 0, c7},
      {8, "six-component realizations", 120, c8},
      {9, "five-component realizations", 0, c9},
      {10, "airplanes and sailboat", 0, c10},
      {11, "triangle census and invariance", 600, c11},
      {12, "building hull equals tropical hull", 0, c12},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit_s == 0 || s < c.limit_s;
    bool pass = r.ok && in_time;
    if (!pass) ++failed;
    std::printf("%s %2d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(), s,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
