#include "documents.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "mustafin/census.hpp"
#include "mustafin/fiber.hpp"
#include "mustafin/random.hpp"
#include "mustafin/trees.hpp"
#include "mustafin/tropical.hpp"

namespace mustafin::cli {

namespace {

Doc header(const char* verb) {
  Doc d;
  d["schema"] = 1;
  d["verb"] = verb;
  return d;
}

Doc one_based(const Facets& f) {
  Doc out = Doc::array();
  for (const auto& face : f) {
    Doc g = Doc::array();
    for (int v : face) g.push_back(v + 1);
    out.push_back(g);
  }
  return out;
}

std::string set_str(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

Doc matrix_doc(const ValuedMatrix& m) {
  Doc rows = Doc::array();
  for (int r = 0; r < m.rows(); ++r) {
    Doc row = Doc::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

std::vector<ApartmentPoint> diagonal_points(const Configuration& c) {
  std::vector<ApartmentPoint> pts;
  for (size_t k = 0; k < c.points.size(); ++k) {
    auto e = diagonal_exponents(c.points[k]);
    if (!e) throw PreconditionError("lattice " + std::to_string(k + 1) + " is not diagonal in the standard basis");
    pts.push_back(point_from_exponents(*e));
  }
  return pts;
}

Doc components_doc(const FiberReport& rep, const FiberRing& r) {
  Doc comps = Doc::array();
  for (size_t k = 0; k < rep.components.size(); ++k) {
    Doc c;
    c["ideal"] = ideal_strs(rep.components[k], r);
    c["class"] = chow_str(rep.multidegrees[k]);
    c["role"] = rep.primary[k] >= 0 ? "primary " + std::to_string(rep.primary[k] + 1) : "secondary";
    comps.push_back(c);
  }
  return comps;
}

void put_labels(Doc& d, const Configuration& c) {
  if (!c.labels.empty()) d["labels"] = c.labels;
}

}  // namespace

// ------------------------------------------------------------------ verbs

Outcome fiber_doc(const Configuration& c, bool xyz) {
  FiberRing r = fiber_ring(c.d, c.n(), xyz);
  FiberReport rep = fiber_report(c, r);
  Doc d = header("fiber");
  d["d"] = c.d;
  d["n"] = c.n();
  put_labels(d, c);
  d["method"] = rep.method;
  d["fiber_ideal"] = ideal_strs(rep.fiber_ideal, r);
  d["generator_count"] = rep.fiber_ideal.size();
  d["component_count"] = rep.components.size();
  d["component_bound"] = binomial(c.n() + c.d - 2, c.d - 1);
  long prim = std::count_if(rep.primary.begin(), rep.primary.end(), [](int p) { return p >= 0; });
  d["primary_count"] = prim;
  d["secondary_count"] = static_cast<long>(rep.components.size()) - prim;
  d["components"] = components_doc(rep, r);
  d["reduction_complex"] = one_based(rep.complex);
  return {d, 0};
}

Outcome tropical_doc(const Configuration& c) {
  std::vector<ApartmentPoint> pts = diagonal_points(c);
  MixedSubdivision sub = mixed_subdivision(pts);
  std::vector<bool> prim = classify_cell_vertices(sub, pts);
  Doc d = header("tropical");
  d["d"] = c.d;
  d["n"] = c.n();
  put_labels(d, c);
  Doc p = Doc::array();
  for (const auto& u : pts) p.push_back(u.str());
  d["points"] = p;
  d["general_position"] = is_general_position(pts);

  if (binomial(c.n() + c.d - 1, c.n()) <= 500) {
    Doc h;
    std::vector<int> idx(static_cast<size_t>(c.n()), 0);
    std::function<void(int, int)> rec = [&](int k, int lo) {
      if (k == c.n()) {
        std::string key = "c_";
        for (int i : idx) key += (c.d > 9 && key.size() > 2 ? "," : "") + std::to_string(i + 1);
        h[key] = lift_coefficient(pts, idx);
        return;
      }
      for (int i = lo; i < c.d; ++i) {
        idx[static_cast<size_t>(k)] = i;
        rec(k + 1, i);
      }
    };
    rec(0, 0);
    d["heights"] = h;
  }

  Doc cells = Doc::array();
  int64_t vol = 0;
  for (size_t k = 0; k < sub.cells.size(); ++k) {
    const auto& cell = sub.cells[k];
    Doc e;
    e["anchor"] = cell.anchor.str();
    Doc sets = Doc::array();
    for (const auto& s : cell.sets) sets.push_back(set_str(s));
    e["sets"] = sets;
    e["volume"] = cell.volume;
    e["kind"] = prim[k] ? "primary" : "secondary";
    vol += cell.volume;
    cells.push_back(e);
  }
  d["cell_count"] = sub.cells.size();
  d["cells"] = cells;
  d["volume_sum"] = vol;
  Doc hull = Doc::array();
  for (const auto& u : tconv_lattice_points(pts)) hull.push_back(u.str());
  d["tconv_lattice_points"] = hull;
  d["reduction_complex"] = one_based(reduction_complex_from_cells(sub));
  return {d, 0};
}

Outcome tree_doc(const Configuration& c) {
  if (c.d != 2) throw PreconditionError("tree needs d = 2");
  Doc d = header("tree");
  d["n"] = c.n();
  put_labels(d, c);
  DistanceMatrix dist = distance_matrix(c);
  Doc th = Doc::array();
  for (int a = 0; a < c.n(); ++a)
    for (int b = a + 1; b < c.n(); ++b) {
      Doc e;
      e["pair"] = "L" + std::to_string(a + 1) + " L" + std::to_string(b + 1);
      e["distance"] = dist[static_cast<size_t>(a)][static_cast<size_t>(b)];
      e["thickness"] = thickness(c.points[static_cast<size_t>(a)].gen, c.points[static_cast<size_t>(b)].gen);
      th.push_back(e);
    }
  d["pairs"] = th;
  PhylogeneticTree t = phylogenetic_tree(dist);
  d["node_count"] = t.n_nodes;
  Doc edges = Doc::array();
  auto name = [&](int v) { return v < t.n_gamma ? "L" + std::to_string(v + 1) : "s" + std::to_string(v - t.n_gamma + 1); };
  for (const auto& e : t.edges) edges.push_back(name(e.u) + " -- " + name(e.v) + " : " + std::to_string(e.len));
  d["edges"] = edges;
  d["reduction_complex"] = one_based(tree_reduction_complex(t));
  bool mono = is_monomial_type_tree(t);
  d["monomial_type"] = mono;
  if (mono) {
    MonomialTree m = monomial_tree(t);
    Doc mt;
    mt["node_count"] = m.n_nodes;
    mt["nodes"] = m.node_names;
    Doc me = Doc::array();
    for (const auto& e : m.edges)
      me.push_back(m.node_names[static_cast<size_t>(e.a)] + " -- " + m.node_names[static_cast<size_t>(e.b)] +
                   " : L" + std::to_string(e.label + 1));
    mt["edges"] = me;
    d["monomial_tree"] = mt;
  }
  return {d, 0};
}

Outcome segment_doc(const Configuration& c) {
  if (c.n() != 2) throw PreconditionError("segment needs exactly two lattices");
  CommonApartment ca = common_apartment(c.points[0], c.points[1]);
  ApartmentPoint u = point_from_exponents(ca.exps_a), v = point_from_exponents(ca.exps_b);
  TropicalSegment seg = tropical_segment(u, v);
  Doc d = header("segment");
  d["d"] = c.d;
  put_labels(d, c);
  d["basis"] = matrix_doc(ca.basis);
  d["exponents"] = Doc::array({Doc(ca.exps_a), Doc(ca.exps_b)});
  d["distance"] = trop_dist(u, v);
  Doc bp = Doc::array();
  for (const auto& p : seg.breakpoints) bp.push_back(p.str());
  d["breakpoints"] = bp;
  d["lengths"] = seg.lengths;
  Doc bends = Doc::array();
  for (size_t k = 1; k + 1 < seg.breakpoints.size(); ++k) {
    LatticeClass p(ca.basis * ValuedMatrix::diag_t(exponents_from_point(seg.breakpoints[k])));
    bends.push_back(matrix_doc(canonical_rep(p).gen));
  }
  d["bend_points"] = bends;
  return {d, 0};
}

Outcome classify_doc(const Configuration& c, int jobs) {
  Catalog cat = build_catalog({jobs});
  Classification cl = classify_triangle(c, cat);
  FiberRing r = fiber_ring(3, 3, true);
  Doc d = header("classify");
  put_labels(d, c);
  d["type_id"] = cl.type_id;
  d["planar"] = cl.planar;
  d["bent_count"] = cl.bent_count;
  d["components"] = cl.fiber.components.size();
  d["expected_components"] = cl.expected_components;
  d["monomial"] = cl.sig.monomial_flag;
  d["multidegrees"] = cl.sig.multidegrees;
  d["reduction_complex"] = one_based(cl.sig.complex);
  d["fiber_ideal"] = ideal_strs(cl.fiber.fiber_ideal, r);
  d["fiber_components"] = components_doc(cl.fiber, r);
  return {d, 0};
}

Outcome census_doc(int jobs) {
  Catalog cat = build_catalog({jobs});
  Doc d = header("census");
  Doc types = Doc::array();
  for (const auto& e : cat.entries) {
    Doc t;
    t["type_id"] = e.type_id;
    t["planar"] = e.planar;
    t["components"] = e.sig.component_count;
    t["bent_count"] = e.sig.bent_count;
    t["monomial"] = e.sig.monomial_flag;
    t["source"] = e.source;
    t["also"] = e.also;
    t["multidegrees"] = e.sig.multidegrees;
    t["reduction_complex"] = one_based(e.sig.complex);
    types.push_back(t);
  }
  d["types"] = types;
  Doc table;
  for (size_t c = 0; c < cat.table.size(); ++c) {
    Doc row = Doc::array();
    for (const auto& [p, q] : cat.table[c]) row.push_back(std::to_string(p) + "+" + std::to_string(q));
    table["components " + std::to_string(c + 3)] = row;
  }
  d["table_by_bent_count"] = table;
  d["total"] = cat.entries.size();
  d["planar"] = cat.planar;
  d["non_planar"] = cat.non_planar;
  bool ok = cat.entries.size() == 38 && cat.planar == 18 && cat.non_planar == 20 && catalog_matches_table(cat);
  d["verified"] = ok;
  return {d, ok ? 0 : 3};
}

// --------------------------------------------------------------- selftest

namespace {

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

Configuration doc_config(const char* text) { return configuration_from_json(nlohmann::json::parse(text)); }

Check check_cyclic_monomial() {
  Configuration c = doc_config(R"({"d":3,"lattices":[{"diag":[2,1,0]},{"diag":[4,2,0]},{"diag":[6,3,0]}]})");
  FiberRing r = fiber_ring(3, 3);
  FiberReport rep = fiber_report(c, r);
  Ideal want = parse_ideal({"x11*x22", "x11*x32", "x21*x32", "x11*x23", "x11*x33", "x21*x33", "x12*x23",
                            "x12*x33", "x22*x33"},
                           r);
  bool ok = ideal_equal(rep.fiber_ideal, want, r.ord) && rep.fiber_ideal.size() == 9 && rep.components.size() == 6;
  return {"three diagonal lattices give the cyclic monomial fiber", ok, ideal_str(rep.fiber_ideal, r)};
}

Check check_borel_fixed() {
  Configuration c = doc_config(
      R"({"d":3,"lattices":[[["0","-11*t","5*t^2"],["-17","-16*t","14*t^2"],["-14","3*t","17*t^2"]],
          [["-17","12*t","-7*t^2"],["-18","-15*t","7*t^2"],["6","-16*t","-5*t^2"]],
          [["-15","15*t","7*t^2"],["-17","16*t","-13*t^2"],["-6","20*t","20*t^2"]]]})");
  FiberRing r = fiber_ring(3, 3);
  Ideal f = special_fiber(c, r);
  Ideal want = parse_ideal({"x11*x12", "x11*x22", "x21*x12", "x11*x13", "x11*x23", "x13*x21", "x12*x13", "x12*x23",
                            "x13*x22", "x21*x22*x23"},
                           r);
  return {"generic bases give the Borel-fixed fiber", ideal_equal(f, want, r.ord), ideal_str(f, r)};
}

Check check_sailboat() {
  Configuration c =
      doc_config(R"({"d":3,"lattices":[{"diag":[0,1,1]},{"diag":[1,0,1]},[["1","0","0"],["1","t","0"],["0","0","t"]]]})");
  FiberRing r = fiber_ring(3, 3, true);
  FiberReport rep = fiber_report(c, r);
  Ideal boat = parse_ideal({"x1", "y2", "x3", "z1*z2*y3 + z1*x2*z3 - y1*z2*z3"}, r);
  int hits = 0;
  for (size_t k = 0; k < rep.components.size(); ++k)
    if (rep.primary[k] < 0 && ideal_equal(rep.components[k], boat, r.ord)) ++hits;
  bool ok = rep.components.size() == 4 && hits == 1;
  return {"sailboat has three planes and the singular boat", ok, std::to_string(rep.components.size()) + " components"};
}

Check check_thickness(Rng& rng) {
  int bad = 0;
  for (int k = 0; k < 200; ++k) {
    ValuedMatrix g = random_lattice_basis(rng, 2, 3, false), h = random_lattice_basis(rng, 2, 3, false);
    int64_t dist = class_distance(LatticeClass(g), LatticeClass(h));
    if (thickness(g, h) != dist) ++bad;
    if (thickness(g * random_unimodular(rng, 2), h * random_unimodular(rng, 2)) != dist) ++bad;
  }
  return {"thickness equals distance on 200 random pairs", bad == 0, std::to_string(bad) + " mismatches"};
}

Check check_tropical_groebner(Rng& rng) {
  int done = 0, bad = 0;
  FiberRing r = fiber_ring(3, 3);
  while (done < 10) {
    std::vector<ApartmentPoint> pts = random_points(rng, 3, 3, 4);
    if (!is_general_position(pts)) continue;
    ++done;
    Configuration c;
    c.d = 3;
    for (const auto& u : pts) c.points.push_back(LatticeClass::diag(exponents_from_point(u)));
    std::set<SqMono> want, got;
    for (SqMono m : monomial_special_fiber(pts).ideal) want.insert(m);
    for (const auto& g : special_fiber(c, r)) {
      if (!g.is_monomial()) ++bad;
      got.insert(g.lm().mask);
    }
    if (want != got) ++bad;
  }
  return {"tropical and Groebner fibers agree on 10 random diagonal triples", bad == 0,
          std::to_string(bad) + " mismatches"};
}

Check check_hull(Rng& rng) {
  int bad = 0;
  for (int k = 0; k < 10; ++k) {
    std::vector<ApartmentPoint> pts = random_points(rng, 3, 3, 3);
    Configuration c;
    c.d = 3;
    for (const auto& u : pts) c.points.push_back(LatticeClass::diag(exponents_from_point(u)));
    std::set<std::string> a, b;
    for (const auto& l : convex_hull(c)) a.insert(class_key(l));
    for (const auto& u : tconv_lattice_points(pts)) b.insert(class_key(LatticeClass::diag(exponents_from_point(u))));
    if (a != b) ++bad;
  }
  return {"building hull equals tropical hull on 10 random triples", bad == 0, std::to_string(bad) + " mismatches"};
}

Check check_census(int jobs) {
  Catalog cat = build_catalog({jobs});
  bool ok = cat.entries.size() == 38 && cat.planar == 18 && cat.non_planar == 20 && catalog_matches_table(cat);
  return {"triangle census has 38 types, 18 planar", ok,
          std::to_string(cat.entries.size()) + " types, " + std::to_string(cat.planar) + " planar"};
}

}  // namespace

Outcome selftest_doc(uint64_t seed, int jobs) {
  Rng rng(seed);
  std::vector<Check> checks;
  checks.push_back(check_cyclic_monomial());
  checks.push_back(check_borel_fixed());
  checks.push_back(check_sailboat());
  checks.push_back(check_thickness(rng));
  checks.push_back(check_tropical_groebner(rng));
  checks.push_back(check_hull(rng));
  checks.push_back(check_census(jobs));
  Doc d = header("selftest");
  d["seed"] = seed;
  Doc arr = Doc::array();
  bool all = true;
  for (const auto& c : checks) {
    Doc e;
    e["name"] = c.name;
    e["ok"] = c.ok;
    e["detail"] = c.detail;
    arr.push_back(e);
    all = all && c.ok;
  }
  d["checks"] = arr;
  d["passed"] = all;
  return {d, all ? 0 : 3};
}

// -------------------------------------------------------------- rendering

namespace {

std::string scalar_str(const Doc& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool all_scalar(const Doc& a) {
  return std::all_of(a.begin(), a.end(), [](const Doc& x) { return x.is_primitive(); });
}

void emit(const Doc& v, const std::string& path, std::string& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) emit(x, path.empty() ? k : path + "." + k, out);
    return;
  }
  if (!v.is_array()) {
    out += path + ": " + scalar_str(v) + "\n";
    return;
  }
  if (v.empty()) {
    out += path + ": (none)\n";
    return;
  }
  if (all_scalar(v)) {
    out += path + ":";
    for (size_t k = 0; k < v.size(); ++k) out += (k ? ", " : " ") + scalar_str(v[k]);
    out += "\n";
    return;
  }
  bool sets = std::all_of(v.begin(), v.end(), [](const Doc& x) { return x.is_array() && all_scalar(x); });
  if (sets) {
    out += path + ":";
    for (const auto& x : v) {
      out += " {";
      for (size_t k = 0; k < x.size(); ++k) out += (k ? "," : "") + scalar_str(x[k]);
      out += "}";
    }
    out += "\n";
    return;
  }
  for (size_t k = 0; k < v.size(); ++k) emit(v[k], path + "[" + std::to_string(k + 1) + "]", out);
}

}  // namespace

std::string render_text(const Doc& doc) {
  std::string out;
  emit(doc, "", out);
  return out;
}

}  // namespace mustafin::cli
