#include "mustafin/building.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace mustafin {

LatticeClass::LatticeClass(ValuedMatrix g) : gen(std::move(g)) {
  if (gen.rows() != gen.cols()) throw PreconditionError("lattice generator must be square");
  if (gen.rows() < 2) throw PreconditionError("lattice dimension must be at least 2");
  if (det(gen).is_zero()) throw PreconditionError("lattice generator is singular");
}

LatticeClass LatticeClass::diag(const std::vector<int64_t>& exps) {
  return LatticeClass(ValuedMatrix::diag_t(exps));
}

void Configuration::validate() const {
  if (points.empty()) throw PreconditionError("configuration has no lattices");
  for (const auto& p : points)
    if (p.d() != d) throw PreconditionError("lattice dimension differs from d");
  std::map<std::string, int> seen;
  for (int i = 0; i < n(); ++i) {
    auto [it, fresh] = seen.emplace(class_key(points[static_cast<size_t>(i)]), i);
    if (!fresh)
      throw PreconditionError("lattices " + std::to_string(it->second + 1) + " and " +
                              std::to_string(i + 1) + " are the same class");
  }
}

// ------------------------------------------------------------------ Smith

SmithData smith_pair(const LatticeClass& a, const LatticeClass& b) {
  if (a.d() != b.d()) throw PreconditionError("lattices of different dimension");
  int d = a.d();
  ValuedMatrix m = a.gen.inverse() * b.gen;
  ValuedMatrix u = ValuedMatrix::identity(d);
  std::vector<int64_t> exps;
  for (int k = 0; k < d; ++k) {
    int pr = -1, pc = -1;
    int64_t best = kInfVal;
    for (int i = k; i < d; ++i)
      for (int j = k; j < d; ++j) {
        int64_t v = val(m(i, j));
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) throw PreconditionError("singular lattice pair");
    if (pr != k) {
      for (int j = 0; j < d; ++j) std::swap(m(pr, j), m(k, j));
      for (int i = 0; i < d; ++i) std::swap(u(i, pr), u(i, k));
    }
    if (pc != k)
      for (int i = 0; i < d; ++i) std::swap(m(i, pc), m(i, k));
    ValuedScalar piv = m(k, k);
    for (int i = k + 1; i < d; ++i) {
      if (m(i, k).is_zero()) continue;
      ValuedScalar f = m(i, k) / piv;
      for (int j = k; j < d; ++j) m(i, j) -= f * m(k, j);
      // row_i -= f row_k  <=>  U col_k += f U col_i
      for (int r = 0; r < d; ++r) u(r, k) += f * u(r, i);
    }
    for (int j = k + 1; j < d; ++j) m(k, j) = ValuedScalar();
    exps.push_back(best);
  }
  return {a.gen * u, exps};
}

std::vector<int64_t> elementary_exponents(const LatticeClass& a, const LatticeClass& b) {
  auto e = smith_pair(a, b).exps;
  std::sort(e.begin(), e.end());
  return e;
}

int64_t class_distance(const LatticeClass& a, const LatticeClass& b) {
  auto e = elementary_exponents(a, b);
  return e.back() - e.front();
}

bool same_class(const LatticeClass& a, const LatticeClass& b) { return class_distance(a, b) == 0; }

bool adjacent(const LatticeClass& a, const LatticeClass& b) { return class_distance(a, b) == 1; }

LatticeClass lattice_intersection(const LatticeClass& a, const LatticeClass& b, int64_t p,
                                  int64_t q) {
  SmithData s = smith_pair(a, b);
  std::vector<int64_t> m(s.exps.size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = std::max(p, q + s.exps[i]);
  return LatticeClass(s.basis * ValuedMatrix::diag_t(m));
}

// ---------------------------------------------------------------- Hermite

namespace {

ValuedScalar laurent(const std::vector<mpq_class>& c, int lo) {
  RatPoly p(c);
  if (p.is_zero()) return {};
  if (lo >= 0) return ValuedScalar(p.shift(lo));
  return ValuedScalar(p, RatPoly::monomial(1, -lo));
}

}  // namespace

LatticeClass canonical_rep(const LatticeClass& a) {
  int d = a.d();
  ValuedMatrix g = a.gen;
  std::vector<int> k(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    int pc = -1;
    int64_t best = kInfVal;
    for (int j = i; j < d; ++j) {
      int64_t v = val(g(i, j));
      if (v < best) {
        best = v;
        pc = j;
      }
    }
    if (pc < 0) throw PreconditionError("singular lattice generator");
    if (pc != i)
      for (int r = 0; r < d; ++r) std::swap(g(r, pc), g(r, i));
    ValuedScalar piv = g(i, i);
    for (int j = i + 1; j < d; ++j) {
      if (g(i, j).is_zero()) continue;
      ValuedScalar f = g(i, j) / piv;
      for (int r = i; r < d; ++r) g(r, j) -= f * g(r, i);
    }
    ValuedScalar unit = piv / ValuedScalar::t_pow(static_cast<int>(best));
    for (int r = i; r < d; ++r) g(r, i) = g(r, i) / unit;
    k[static_cast<size_t>(i)] = static_cast<int>(best);
  }
  for (int i = 1; i < d; ++i) {
    int ki = k[static_cast<size_t>(i)];
    ValuedScalar tk = ValuedScalar::t_pow(ki);
    for (int j = 0; j < i; ++j) {
      const ValuedScalar& x = g(i, j);
      if (x.is_zero()) continue;
      int64_t v = val(x);
      ValuedScalar trunc;
      if (v < ki) trunc = laurent(x.series(static_cast<int>(v), ki), static_cast<int>(v));
      ValuedScalar c = x - trunc;
      if (c.is_zero()) continue;
      ValuedScalar f = c / tk;
      for (int r = i; r < d; ++r) g(r, j) -= f * g(r, i);
    }
  }
  ValuedScalar s = ValuedScalar::t_pow(-k[0]);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j)
      if (!g(i, j).is_zero()) g(i, j) = g(i, j) * s;
  LatticeClass out;
  out.gen = g;
  return out;
}

std::string class_key(const LatticeClass& a) {
  LatticeClass c = canonical_rep(a);
  std::string key;
  for (int i = 0; i < c.d(); ++i)
    for (int j = 0; j <= i; ++j) {
      key += c.gen(i, j).str();
      key += ';';
    }
  return key;
}

std::optional<std::vector<int64_t>> diagonal_exponents(const LatticeClass& a) {
  LatticeClass c = canonical_rep(a);
  std::vector<int64_t> m;
  for (int i = 0; i < c.d(); ++i) {
    for (int j = 0; j < i; ++j)
      if (!c.gen(i, j).is_zero()) return std::nullopt;
    m.push_back(val(c.gen(i, i)));
  }
  return m;
}

// ------------------------------------------------------------------- hull

std::vector<LatticeClass> convex_hull(const Configuration& gamma) {
  std::vector<LatticeClass> pts;
  std::map<std::string, size_t> index;
  auto add = [&](const LatticeClass& c) {
    auto [it, fresh] = index.emplace(class_key(c), pts.size());
    if (fresh) pts.push_back(c);
    return fresh;
  };
  for (const auto& p : gamma.points) add(p);
  // every new point is paired once with every earlier one
  for (size_t j = 1; j < pts.size(); ++j)
    for (size_t i = 0; i < j; ++i) {
      SmithData s = smith_pair(pts[i], pts[j]);
      int64_t lo = s.exps.front(), hi = s.exps.back();
      for (int64_t delta = -hi + 1; delta <= -lo - 1; ++delta) {
        std::vector<int64_t> m(s.exps.size());
        for (size_t r = 0; r < m.size(); ++r) m[r] = std::max<int64_t>(0, delta + s.exps[r]);
        add(LatticeClass(s.basis * ValuedMatrix::diag_t(m)));
      }
    }
  return pts;
}

CommonApartment common_apartment(const LatticeClass& a, const LatticeClass& b) {
  SmithData s = smith_pair(a, b);
  return {s.basis, std::vector<int64_t>(s.exps.size(), 0), s.exps};
}

ResidueSubspace first_step_subspace(const LatticeClass& base, const LatticeClass& other) {
  SmithData s = smith_pair(base, other);
  int64_t top = s.exps.back();
  if (top == s.exps.front()) throw PreconditionError("first_step_subspace: classes are equal");
  // coordinates of the transform basis relative to gen(base)
  ValuedMatrix u = base.gen.inverse() * s.basis;
  int d = base.d();
  QMatrix cols;
  for (int j = 0; j < d; ++j) {
    if (s.exps[static_cast<size_t>(j)] - top + 1 > 0) continue;
    std::vector<mpq_class> c;
    for (int i = 0; i < d; ++i) c.push_back(residue(u(i, j)));
    cols.push_back(c);
  }
  // row-reduce the spanning vectors to a canonical basis
  QMatrix m = cols;
  auto piv = rref(m);
  ResidueSubspace w;
  w.basis.assign(static_cast<size_t>(d), {});
  for (size_t r = 0; r < piv.size(); ++r)
    for (int i = 0; i < d; ++i) w.basis[static_cast<size_t>(i)].push_back(m[r][static_cast<size_t>(i)]);
  return w;
}

// -------------------------------------------------------------- documents

LatticeClass lattice_from_json(const nlohmann::json& j, int d) {
  if (j.is_object() && j.contains("diag")) {
    auto e = j.at("diag");
    if (!e.is_array() || static_cast<int>(e.size()) != d) throw ParseError("diag entry must list d exponents");
    std::vector<int64_t> m;
    for (const auto& x : e) {
      if (!x.is_number_integer()) throw ParseError("diag exponents must be integers");
      m.push_back(x.get<int64_t>());
    }
    return LatticeClass::diag(m);
  }
  if (!j.is_array() || static_cast<int>(j.size()) != d) throw ParseError("lattice must be a d x d array");
  ValuedMatrix g(d, d);
  for (int r = 0; r < d; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != d) throw ParseError("lattice row must have d entries");
    for (int c = 0; c < d; ++c) {
      const auto& x = row[static_cast<size_t>(c)];
      if (x.is_number_integer())
        g(r, c) = ValuedScalar(x.get<long>());
      else if (x.is_string())
        g(r, c) = ValuedScalar::parse(x.get<std::string>());
      else
        throw ParseError("lattice entries must be strings or integers");
    }
  }
  return LatticeClass(g);
}

Configuration configuration_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("configuration must be an object");
  if (!j.contains("d") || !j.at("d").is_number_integer()) throw ParseError("missing integer field d");
  if (!j.contains("lattices") || !j.at("lattices").is_array()) throw ParseError("missing array field lattices");
  Configuration c;
  c.d = j.at("d").get<int>();
  if (c.d < 2) throw PreconditionError("d must be at least 2");
  for (const auto& l : j.at("lattices")) c.points.push_back(lattice_from_json(l, c.d));
  if (j.contains("labels")) {
    for (const auto& s : j.at("labels")) {
      if (!s.is_string()) throw ParseError("labels must be strings");
      c.labels.push_back(s.get<std::string>());
    }
    if (c.labels.size() != c.points.size()) throw ParseError("labels and lattices differ in length");
  }
  c.validate();
  return c;
}

Configuration load_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return configuration_from_json(j);
}

nlohmann::json configuration_to_json(const Configuration& c) {
  nlohmann::json j;
  j["d"] = c.d;
  j["lattices"] = nlohmann::json::array();
  for (const auto& p : c.points) {
    nlohmann::json m = nlohmann::json::array();
    for (int r = 0; r < c.d; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < c.d; ++k) row.push_back(p.gen(r, k).str());
      m.push_back(row);
    }
    j["lattices"].push_back(m);
  }
  if (!c.labels.empty()) j["labels"] = c.labels;
  return j;
}

}  // namespace mustafin
