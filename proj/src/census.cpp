#include "mustafin/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "mustafin/tropical.hpp"

namespace mustafin {

namespace {

void require_triangle(const Configuration& g) {
  if (g.d != 3 || g.n() != 3) throw PreconditionError("a Mustafin triangle needs d = 3 and three lattices");
}

constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

// runs f(i) for i in [0, count) on up to `jobs` threads
template <class F>
void parallel_for(size_t count, int jobs, F f) {
  size_t workers = static_cast<size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < count; i += workers) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

BendPoints bend_points(const Configuration& gamma) {
  require_triangle(gamma);
  BendPoints bp;
  for (size_t k = 0; k < kPairs.size(); ++k) {
    const auto& a = gamma.points[static_cast<size_t>(kPairs[k].first)];
    const auto& b = gamma.points[static_cast<size_t>(kPairs[k].second)];
    CommonApartment ca = common_apartment(a, b);
    ApartmentPoint u = point_from_exponents(ca.exps_a), v = point_from_exponents(ca.exps_b);
    TropicalSegment seg = tropical_segment(u, v);
    bool bent = std::all_of(seg.lengths.begin(), seg.lengths.end(), [](int64_t l) { return l > 0; });
    if (!bent) continue;
    LatticeClass p(ca.basis * ValuedMatrix::diag_t(exponents_from_point(seg.breakpoints.at(1))));
    bp.on_pair[k] = p;
    ++bp.bent_count;
    bool seen = false;
    for (const auto& q : bp.distinct) seen = seen || same_class(p, q);
    if (!seen) bp.distinct.push_back(p);
  }
  return bp;
}

int expected_component_count(const Configuration& gamma) {
  BendPoints bp = bend_points(gamma);
  int extra = 0;
  for (const auto& p : bp.distinct) {
    bool in_gamma = false;
    for (const auto& q : gamma.points) in_gamma = in_gamma || same_class(p, q);
    if (!in_gamma) ++extra;
  }
  return 3 + extra;
}

// ------------------------------------------------------------- signature

namespace {

std::string permuted_cycle_str(CycleClass c, const std::vector<int>& perm) {
  for (auto& [a, mult] : c.terms) {
    std::vector<int> b(a.size());
    for (size_t i = 0; i < a.size(); ++i) b[static_cast<size_t>(perm[i])] = a[i];
    a = b;
  }
  std::sort(c.terms.begin(), c.terms.end());
  return cycle_str(c);
}

}  // namespace

TriangleSignature signature(const FiberReport& f, int bent_count) {
  int n = f.n;
  size_t m = f.components.size();
  FiberRing ring = fiber_ring(f.d, n);
  std::vector<CycleClass> meet(size_t{1} << m);
  for (size_t mask = 1; mask < meet.size(); ++mask) {
    if (__builtin_popcountll(mask) < 2) continue;
    Ideal s;
    for (size_t c = 0; c < m; ++c)
      if (mask >> c & 1) s.insert(s.end(), f.components[c].begin(), f.components[c].end());
    meet[mask] = cycle_class(s, ring);
  }
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  TriangleSignature best;
  bool have = false;
  do {
    // factor i becomes factor perm[i]
    std::vector<std::string> md(m);
    for (size_t c = 0; c < m; ++c) {
      ChowClass k;
      for (const auto& a : f.multidegrees[c]) {
        std::vector<int> b(a.size());
        for (int i = 0; i < n; ++i) b[static_cast<size_t>(perm[static_cast<size_t>(i)])] = a[static_cast<size_t>(i)];
        k.push_back(b);
      }
      std::sort(k.begin(), k.end());
      md[c] = chow_str(k);
    }
    std::vector<size_t> prim(static_cast<size_t>(n)), sec;
    for (size_t c = 0; c < m; ++c) {
      if (f.primary[c] >= 0)
        prim[static_cast<size_t>(perm[static_cast<size_t>(f.primary[c])])] = c;
      else
        sec.push_back(c);
    }
    std::sort(sec.begin(), sec.end());
    do {
      std::vector<size_t> order = prim;
      order.insert(order.end(), sec.begin(), sec.end());
      std::vector<int> pos(m);
      for (size_t k = 0; k < m; ++k) pos[order[k]] = static_cast<int>(k);
      TriangleSignature s;
      s.bent_count = bent_count;
      s.component_count = static_cast<int>(m);
      s.monomial_flag = std::all_of(f.multidegrees.begin(), f.multidegrees.end(),
                                    [](const ChowClass& k) { return k.size() == 1; });
      for (size_t k = 0; k < m; ++k) s.multidegrees.push_back(md[order[k]]);
      for (const auto& face : f.complex) {
        std::vector<int> g;
        for (int v : face) g.push_back(pos[static_cast<size_t>(v)]);
        std::sort(g.begin(), g.end());
        s.complex.push_back(g);
      }
      std::sort(s.complex.begin(), s.complex.end());
      std::vector<std::pair<std::vector<int>, std::string>> faces;
      for (size_t mask = 1; mask < meet.size(); ++mask) {
        if (__builtin_popcountll(mask) < 2) continue;
        std::vector<int> face;
        for (size_t c = 0; c < m; ++c)
          if (mask >> c & 1) face.push_back(pos[c]);
        std::sort(face.begin(), face.end());
        faces.emplace_back(face, permuted_cycle_str(meet[mask], perm));
      }
      std::sort(faces.begin(), faces.end());
      for (const auto& [face, cls] : faces) {
        std::string t = "{";
        for (size_t k = 0; k < face.size(); ++k) t += (k ? "," : "") + std::to_string(face[k]);
        s.intersections.push_back(t + "} " + cls);
      }
      s.key = "bends " + std::to_string(s.bent_count) + " | components " + std::to_string(s.component_count) +
              " | monomial " + (s.monomial_flag ? "1" : "0") + " |";
      for (const auto& x : s.multidegrees) s.key += " [" + x + "]";
      s.key += " |";
      for (const auto& face : s.complex) {
        s.key += " {";
        for (size_t k = 0; k < face.size(); ++k) s.key += (k ? "," : "") + std::to_string(face[k]);
        s.key += "}";
      }
      s.key += " |";
      for (const auto& x : s.intersections) s.key += " " + x + ";";
      if (!have || s.key < best.key) {
        best = s;
        have = true;
      }
    } while (std::next_permutation(sec.begin(), sec.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------- realizations

Configuration realize_monomial_type(const RealizationVector& rv) {
  auto [a, b, c, d, e, f, g, h] = rv.v;
  auto tp = [](int k) { return ValuedScalar::t_pow(k); };
  ValuedMatrix G = ValuedMatrix::diag_t({0, a, b});
  ValuedMatrix H(3, 3);
  H(0, 0) = tp(c);
  H(0, 1) = tp(d);
  H(0, 2) = ValuedScalar(RatPoly(std::vector<mpq_class>{1, 1})) * tp(e);
  H(1, 1) = tp(f);
  H(1, 2) = tp(g);
  H(2, 2) = tp(h);
  if (det(H).is_zero()) throw PreconditionError("realization matrix is singular");
  Configuration cfg;
  cfg.d = 3;
  cfg.points = {LatticeClass(ValuedMatrix::identity(3)), LatticeClass(G), LatticeClass(H)};
  cfg.validate();
  return cfg;
}

// ------------------------------------------------------- representatives

namespace {

Configuration parse_config(const char* text) { return configuration_from_json(nlohmann::json::parse(text)); }

Configuration diagonal_triple(const std::vector<int64_t>& u2, const std::vector<int64_t>& u3) {
  Configuration c;
  c.d = 3;
  c.points = {LatticeClass::diag({0, 0, 0}),
              LatticeClass::diag(exponents_from_point(ApartmentPoint(u2))),
              LatticeClass::diag(exponents_from_point(ApartmentPoint(u3)))};
  c.validate();
  return c;
}

// exponent vectors of a diagonal triple (first one 0) per planar type, found by planar_search(4)
const std::vector<std::pair<std::vector<int64_t>, std::vector<int64_t>>> kPlanar = {
    {{0, 1, 1}, {0, -1, -1}},
    {{0, 1, 1}, {0, 1, 0}},
    {{0, 1, 1}, {0, 0, -1}},
    {{0, 1, -1}, {0, -1, -1}},
    {{0, 1, 1}, {0, 1, -1}},
    {{0, 1, 0}, {0, 0, 1}},
    {{0, 1, -1}, {0, -1, 0}},
    {{0, 2, 1}, {0, 0, 2}},
    {{0, 2, -1}, {0, 1, 1}},
    {{0, 1, 0}, {0, -1, 1}},
    {{0, 2, 1}, {0, -1, 1}},
    {{0, 2, 2}, {0, 1, -1}},
    {{0, 2, 1}, {0, 1, -1}},
    {{0, 2, 1}, {0, 1, 2}},
    {{0, 2, 1}, {0, -1, 2}},
    {{0, 1, -1}, {0, -1, 1}},
    {{0, 2, -2}, {0, -2, -1}},
    {{0, 3, 2}, {0, 2, -1}},
};

const std::vector<std::array<int, 8>> kMonomialVectors = {
    {-1, 1, 0, 1, 0, 1, 0, -1}, {-1, 3, -1, 0, 1, 0, 1, 1},   {-1, 2, -1, 0, 0, 1, 1, 0},
    {-1, 1, 1, 1, 2, -1, 0, 0}, {1, -2, 1, 0, 2, 2, 4, 1},    {1, -2, 2, 0, 2, -1, 0, 0},
    {1, 3, 1, 0, 0, 2, -1, 0},  {2, 1, 0, -1, -2, 1, -1, 0},  {-4, 1, 3, 4, 1, 1, 0, 3},
    {-3, -6, 6, 7, 3, 4, 3, 0}, {3, 1, 0, 1, -1, 3, 1, 0},    {-1, 4, 1, -1, -2, 1, -1, 1},
    {2, -2, 1, 0, 0, 1, 0, -2}};
const std::vector<int> kMonomialLabels = {1, 2, 3, 4, 5, 8, 9, 10, 11, 13, 14, 15, 16};

const std::vector<std::array<int, 8>> kAlmostMonomialVectors = {
    {-2, 2, 0, 1, -1, -2, -1, 0}, {-3, -1, 4, 5, 4, 1, 0, 1}, {-1, -3, 1, 4, 2, 2, 0, -1},
    {-3, -4, 3, 2, 3, 0, -1, 0},  {-3, -1, 2, 1, 2, -1, 0, 0}, {-2, -4, 3, 2, 3, 1, 0, -1}};

std::string vec_str(const std::array<int, 8>& v) {
  std::string s = "(";
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

}  // namespace

std::vector<Representative> catalog_representatives() {
  std::vector<Representative> reps;
  for (size_t k = 0; k < kPlanar.size(); ++k) {
    const auto& [u2, u3] = kPlanar[k];
    Configuration c;
    c.d = 3;
    c.points = {LatticeClass::diag({0, 0, 0}), LatticeClass::diag(u2), LatticeClass::diag(u3)};
    c.validate();
    reps.push_back({"planar search #" + std::to_string(k + 1), true, c});
  }
  for (size_t k = 0; k < kMonomialVectors.size(); ++k)
    reps.push_back({"monomial realization type " + std::to_string(kMonomialLabels[k]) + " " +
                        vec_str(kMonomialVectors[k]),
                    false, realize_monomial_type({kMonomialVectors[k]})});
  for (const auto& v : kAlmostMonomialVectors)
    reps.push_back({"almost monomial " + vec_str(v), false, realize_monomial_type({v})});
  reps.push_back({"airplane", false,
                  parse_config(R"({"d":3,"lattices":[{"diag":[1,1,0]},{"diag":[0,2,2]},
                     [["1","0","0"],["t","t^2","0"],["0","0","t^2"]]]})")});
  reps.push_back({"mutant airplane", false,
                  parse_config(R"({"d":3,"lattices":[{"diag":[1,0,1]},{"diag":[0,2,2]},
                     [["1","0","0"],["t","t^2","0"],["0","0","t^2"]]]})")});
  reps.push_back({"sailboat", false,
                  parse_config(R"({"d":3,"lattices":[{"diag":[0,1,1]},{"diag":[1,0,1]},
                     [["1","0","0"],["1","t","0"],["0","0","t"]]]})")});
  reps.push_back({"two unbent lines, form (i)", false,
                  parse_config(R"({"d":3,"lattices":[{"diag":[0,0,0]},{"diag":[0,2,2]},
                     [["1","0","0"],["t","t^2","0"],["0","0","t^2"]]]})")});
  reps.push_back({"two unbent lines, form (ii)", false,
                  parse_config(R"({"d":3,"lattices":[{"diag":[0,0,0]},{"diag":[0,2,2]},
                     [["1","0","0"],["0","1","0"],["t","0","t^2"]]]})")});
  reps.push_back({"two unbent lines, form (iii)", false,
                  parse_config(R"({"d":3,"lattices":[{"diag":[0,0,0]},{"diag":[0,0,2]},
                     [["1","0","0"],["0","1","0"],["t","0","t^2"]]]})")});
  return reps;
}

// ---------------------------------------------------------------- catalog

namespace {

struct Analysis {
  FiberReport fiber;
  BendPoints bends;
  TriangleSignature sig;
  int expected = 0;
};

Analysis analyze(const Configuration& gamma) {
  require_triangle(gamma);
  Analysis a;
  a.fiber = fiber_report(gamma, fiber_ring(3, 3, true));
  a.bends = bend_points(gamma);
  a.sig = signature(a.fiber, a.bends.bent_count);
  a.expected = expected_component_count(gamma);
  return a;
}

const std::array<std::array<std::pair<int, int>, 4>, 4> kTable = {{
    {{{2, 0}, {1, 0}, {0, 0}, {0, 0}}},
    {{{0, 0}, {3, 3}, {1, 0}, {1, 1}}},
    {{{0, 0}, {0, 0}, {5, 6}, {0, 2}}},
    {{{0, 0}, {0, 0}, {0, 0}, {5, 8}}},
}};

}  // namespace

Catalog build_catalog(const CatalogOptions& opt) {
  std::vector<Representative> reps = catalog_representatives();
  std::vector<Analysis> res(reps.size());
  parallel_for(reps.size(), opt.jobs, [&](size_t i) { res[i] = analyze(reps[i].config); });

  Catalog cat;
  std::map<std::string, size_t> by_key;
  for (size_t i = 0; i < reps.size(); ++i) {
    const Analysis& a = res[i];
    if (a.sig.component_count != a.expected)
      throw InternalError(reps[i].source + ": " + std::to_string(a.sig.component_count) +
                          " components but bend points predict " + std::to_string(a.expected));
    if (a.sig.monomial_flag != (a.sig.component_count == 6))
      throw InternalError(reps[i].source + ": monomial flag disagrees with the component count");
    auto it = by_key.find(a.sig.key);
    if (it == by_key.end()) {
      by_key[a.sig.key] = cat.entries.size();
      CatalogEntry e;
      e.planar = reps[i].planar;
      e.source = reps[i].source;
      e.rep = reps[i].config;
      e.sig = a.sig;
      cat.entries.push_back(e);
    } else {
      CatalogEntry& e = cat.entries[it->second];
      if (reps[i].planar && !e.planar) throw InternalError(reps[i].source + ": planar representative found late");
      e.also.push_back(reps[i].source);
    }
  }
  std::stable_sort(cat.entries.begin(), cat.entries.end(), [](const CatalogEntry& x, const CatalogEntry& y) {
    auto kx = std::make_tuple(x.sig.component_count, x.sig.bent_count, !x.planar, x.sig.key);
    auto ky = std::make_tuple(y.sig.component_count, y.sig.bent_count, !y.planar, y.sig.key);
    return kx < ky;
  });
  for (size_t k = 0; k < cat.entries.size(); ++k) {
    CatalogEntry& e = cat.entries[k];
    e.type_id = static_cast<int>(k) + 1;
    auto& cell = cat.table[static_cast<size_t>(e.sig.component_count - 3)][static_cast<size_t>(e.sig.bent_count)];
    (e.planar ? cell.first : cell.second)++;
    (e.planar ? cat.planar : cat.non_planar)++;
    if (e.sig.bent_count == 0 && !e.planar) throw InternalError("unbent type without a planar representative");
  }
  return cat;
}

const Catalog& census_catalog() {
  static const Catalog cat = build_catalog({static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))});
  return cat;
}

bool catalog_matches_table(const Catalog& cat) { return cat.table == kTable; }

// --------------------------------------------------------------- classify

Classification classify_triangle(const Configuration& gamma, const Catalog& cat) {
  Analysis a = analyze(gamma);
  if (a.sig.component_count != a.expected)
    throw InternalError(std::to_string(a.sig.component_count) + " components but bend points predict " +
                        std::to_string(a.expected));
  for (const auto& e : cat.entries)
    if (e.sig.key == a.sig.key) {
      Classification c;
      c.type_id = e.type_id;
      c.planar = e.planar;
      c.bent_count = a.bends.bent_count;
      c.expected_components = a.expected;
      c.fiber = std::move(a.fiber);
      c.sig = std::move(a.sig);
      return c;
    }
  throw InternalError("signature not in catalog: " + a.sig.key);
}

// ---------------------------------------------------------- planar search

std::vector<std::pair<TriangleSignature, Configuration>> planar_search(int range, int jobs) {
  std::vector<std::vector<int64_t>> pts;
  for (int64_t b = -range; b <= range; ++b)
    for (int64_t c = -range; c <= range; ++c)
      if (b || c) pts.push_back({0, b, c});
  auto weight = [](const std::vector<int64_t>& p) {
    return std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
  };
  std::vector<std::pair<std::vector<int64_t>, std::vector<int64_t>>> cand;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) cand.emplace_back(pts[i], pts[j]);
  std::stable_sort(cand.begin(), cand.end(), [&](const auto& x, const auto& y) {
    return std::max(weight(x.first), weight(x.second)) < std::max(weight(y.first), weight(y.second));
  });
  std::vector<TriangleSignature> sigs(cand.size());
  parallel_for(cand.size(), jobs, [&](size_t i) {
    Configuration c = diagonal_triple(cand[i].first, cand[i].second);
    sigs[i] = analyze(c).sig;
  });
  std::map<std::string, size_t> first;
  for (size_t i = 0; i < cand.size(); ++i) first.emplace(sigs[i].key, i);
  std::vector<std::pair<TriangleSignature, Configuration>> out;
  for (const auto& [key, i] : first) out.emplace_back(sigs[i], diagonal_triple(cand[i].first, cand[i].second));
  return out;
}

}  // namespace mustafin
