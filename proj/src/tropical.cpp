#include "mustafin/tropical.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mustafin/valfield.hpp"

namespace mustafin {

ApartmentPoint::ApartmentPoint(std::vector<int64_t> c) : coords(std::move(c)) {
  if (coords.empty()) return;
  int64_t f = coords[0];
  for (auto& x : coords) x -= f;
}

std::string ApartmentPoint::str() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
  return s + ")";
}

ApartmentPoint point_from_exponents(const std::vector<int64_t>& m) {
  std::vector<int64_t> u(m.size());
  for (size_t i = 0; i < m.size(); ++i) u[i] = -m[i];
  return ApartmentPoint(u);
}

std::vector<int64_t> exponents_from_point(const ApartmentPoint& u) {
  std::vector<int64_t> m(u.coords.size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = -u.coords[i];
  return m;
}

int64_t binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int64_t trop_dist(const ApartmentPoint& u, const ApartmentPoint& v) {
  if (u.d() != v.d()) throw PreconditionError("points of different dimension");
  int64_t lo = INT64_MAX, hi = INT64_MIN;
  for (int i = 0; i < u.d(); ++i) {
    int64_t w = u.coords[static_cast<size_t>(i)] - v.coords[static_cast<size_t>(i)];
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return hi - lo;
}

bool trop_member(const ApartmentPoint& x, const std::vector<ApartmentPoint>& gamma) {
  if (gamma.empty()) return false;
  size_t d = x.coords.size();
  std::vector<int64_t> y(d, INT64_MAX);
  for (const auto& u : gamma) {
    int64_t lam = INT64_MIN;
    for (size_t j = 0; j < d; ++j) lam = std::max(lam, x.coords[j] - u.coords[j]);
    for (size_t j = 0; j < d; ++j) y[j] = std::min(y[j], lam + u.coords[j]);
  }
  return y == x.coords;
}

namespace {

// integer points of a box, coordinate 0 fixed to 0
template <class F>
void for_box(const std::vector<int64_t>& lo, const std::vector<int64_t>& hi, F f) {
  size_t d = lo.size();
  std::vector<int64_t> x = lo;
  x[0] = 0;
  for (;;) {
    f(x);
    size_t k = 1;
    while (k < d) {
      if (x[k] < hi[k]) {
        ++x[k];
        break;
      }
      x[k] = lo[k];
      ++k;
    }
    if (k >= d) return;
  }
}

void bounding_box(const std::vector<ApartmentPoint>& gamma, int pad, std::vector<int64_t>& lo,
                  std::vector<int64_t>& hi) {
  size_t d = gamma.at(0).coords.size();
  lo.assign(d, INT64_MAX);
  hi.assign(d, INT64_MIN);
  for (const auto& u : gamma)
    for (size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], u.coords[j] - pad);
      hi[j] = std::max(hi[j], u.coords[j] + pad);
    }
}

}  // namespace

std::vector<ApartmentPoint> tconv_lattice_points(const std::vector<ApartmentPoint>& gamma) {
  if (gamma.empty()) return {};
  std::vector<int64_t> lo, hi;
  bounding_box(gamma, 0, lo, hi);
  std::vector<ApartmentPoint> out;
  if (lo.size() == 1) return {gamma[0]};
  for_box(lo, hi, [&](const std::vector<int64_t>& x) {
    ApartmentPoint p(x);
    if (trop_member(p, gamma)) out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

TropicalSegment tropical_segment(const ApartmentPoint& u, const ApartmentPoint& v) {
  if (u.d() != v.d()) throw PreconditionError("points of different dimension");
  size_t d = u.coords.size();
  std::vector<int64_t> w(d);
  for (size_t j = 0; j < d; ++j) w[j] = v.coords[j] - u.coords[j];
  std::vector<int64_t> sw = w;
  std::sort(sw.begin(), sw.end());
  TropicalSegment seg;
  for (size_t k = 0; k + 1 < d; ++k) seg.lengths.push_back(sw[k + 1] - sw[k]);
  for (size_t k = 0; k < d; ++k) {
    int64_t mu = -sw[k];
    std::vector<int64_t> x(d);
    for (size_t j = 0; j < d; ++j) x[j] = u.coords[j] + std::min<int64_t>(0, mu + w[j]);
    ApartmentPoint p(x);
    if (seg.breakpoints.empty() || !(seg.breakpoints.back() == p)) seg.breakpoints.push_back(p);
  }
  return seg;
}

int64_t lift_coefficient(const std::vector<ApartmentPoint>& gamma, const std::vector<int>& idx) {
  size_t n = gamma.size();
  if (idx.size() != n) throw PreconditionError("index multiset must have one entry per point");
  if (n > 20) throw PreconditionError("lift_coefficient supports at most 20 points");
  // best assignment of the first popcount(mask) indices to the points in mask
  std::vector<int64_t> dp(size_t{1} << n, INT64_MIN);
  dp[0] = 0;
  for (size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask] == INT64_MIN) continue;
    size_t k = static_cast<size_t>(__builtin_popcountll(mask));
    if (k == n) continue;
    int col = idx[k];
    for (size_t p = 0; p < n; ++p) {
      if (mask >> p & 1) continue;
      int64_t v = dp[mask] - gamma[p].coords.at(static_cast<size_t>(col));
      dp[mask | size_t{1} << p] = std::max(dp[mask | size_t{1} << p], v);
    }
  }
  return dp.back();
}

int cell_dimension(const CellSets& sets, int d) {
  std::vector<int> parent(static_cast<size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<size_t>(a)] != a) a = parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
    return a;
  };
  std::vector<bool> covered(static_cast<size_t>(d), false);
  for (const auto& s : sets) {
    for (int j : s) covered[static_cast<size_t>(j)] = true;
    for (size_t k = 1; k < s.size(); ++k) parent[static_cast<size_t>(find(s[k]))] = find(s[0]);
  }
  int cov = 0, comps = 0;
  for (int j = 0; j < d; ++j) {
    if (!covered[static_cast<size_t>(j)]) continue;
    ++cov;
    if (find(j) == j) ++comps;
  }
  return cov - comps;
}

int64_t cell_volume(const CellSets& sets, int d) {
  int n = static_cast<int>(sets.size());
  int k = d - 1;
  if (k == 0) return 1;
  std::vector<uint32_t> masks;
  for (const auto& s : sets) {
    uint32_t m = 0;
    for (int j : s) m |= 1u << j;
    masks.push_back(m);
  }
  int64_t total = 0;
  std::vector<int> seq(static_cast<size_t>(k), 0);
  for (;;) {
    bool hall = true;
    for (uint32_t sub = 1; sub < (1u << k) && hall; ++sub) {
      uint32_t uni = 0;
      for (int a = 0; a < k; ++a)
        if (sub >> a & 1) uni |= masks[static_cast<size_t>(seq[static_cast<size_t>(a)])];
      if (__builtin_popcount(uni) < __builtin_popcount(sub) + 1) hall = false;
    }
    if (hall) ++total;
    int p = 0;
    while (p < k && ++seq[static_cast<size_t>(p)] == n) seq[static_cast<size_t>(p++)] = 0;
    if (p == k) break;
  }
  return total;
}

MixedSubdivision mixed_subdivision(const std::vector<ApartmentPoint>& gamma) {
  if (gamma.empty()) throw PreconditionError("empty point set");
  MixedSubdivision sub;
  sub.d = gamma[0].d();
  sub.n = static_cast<int>(gamma.size());
  size_t d = static_cast<size_t>(sub.d);
  for (const auto& u : gamma)
    if (u.coords.size() != d) throw PreconditionError("points of different dimension");
  std::vector<int64_t> lo, hi;
  bounding_box(gamma, 1, lo, hi);
  std::map<CellSets, ApartmentPoint> found;
  auto visit = [&](const std::vector<int64_t>& x) {
    CellSets sets;
    for (const auto& u : gamma) {
      int64_t best = INT64_MIN;
      std::vector<int> s;
      for (size_t j = 0; j < d; ++j) {
        int64_t v = x[j] - u.coords[j];
        if (v > best) {
          best = v;
          s.clear();
        }
        if (v == best) s.push_back(static_cast<int>(j));
      }
      sets.push_back(s);
    }
    if (cell_dimension(sets, sub.d) == sub.d - 1) found.emplace(sets, ApartmentPoint(x));
  };
  if (d == 1)
    visit({0});
  else
    for_box(lo, hi, visit);
  for (auto& [sets, anchor] : found) sub.cells.push_back({anchor, sets, cell_volume(sets, sub.d)});
  std::sort(sub.cells.begin(), sub.cells.end(),
            [](const MixedCell& a, const MixedCell& b) { return a.anchor < b.anchor; });
  return sub;
}

GeneralPositionReport general_position_report(const std::vector<ApartmentPoint>& gamma) {
  GeneralPositionReport rep;
  int n = static_cast<int>(gamma.size());
  int d = gamma.at(0).d();
  for (int k = 2; k <= std::min(n, d) && rep.minors_ok; ++k) {
    std::vector<int> rows(static_cast<size_t>(k)), cols(static_cast<size_t>(k));
    std::vector<bool> rsel(static_cast<size_t>(d), false), csel(static_cast<size_t>(n), false);
    std::fill(rsel.end() - k, rsel.end(), true);
    do {
      rows.clear();
      for (int j = 0; j < d; ++j)
        if (rsel[static_cast<size_t>(j)]) rows.push_back(j);
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.end() - k, csel.end(), true);
      do {
        cols.clear();
        for (int i = 0; i < n; ++i)
          if (csel[static_cast<size_t>(i)]) cols.push_back(i);
        std::vector<int> perm(static_cast<size_t>(k));
        std::iota(perm.begin(), perm.end(), 0);
        int64_t best = INT64_MAX;
        int count = 0;
        do {
          int64_t s = 0;
          for (int a = 0; a < k; ++a)
            s += gamma[static_cast<size_t>(cols[static_cast<size_t>(a)])]
                     .coords[static_cast<size_t>(rows[static_cast<size_t>(perm[static_cast<size_t>(a)])])];
          if (s < best) {
            best = s;
            count = 1;
          } else if (s == best) {
            ++count;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (count > 1) {
          rep.minors_ok = false;
          rep.bad_rows = rows;
          rep.bad_cols = cols;
          break;
        }
      } while (std::next_permutation(csel.begin(), csel.end()));
    } while (rep.minors_ok && std::next_permutation(rsel.begin(), rsel.end()));
  }
  auto sub = mixed_subdivision(gamma);
  rep.count_ok = static_cast<int64_t>(sub.cells.size()) == binomial(n + d - 2, d - 1);
  return rep;
}

bool is_general_position(const std::vector<ApartmentPoint>& gamma) {
  auto r = general_position_report(gamma);
  if (r.minors_ok != r.count_ok)
    throw std::logic_error("general position tests disagree");
  return r.minors_ok;
}

SqMono cell_prime(const CellSets& sets, int d) {
  SqMono m = 0;
  for (size_t i = 0; i < sets.size(); ++i)
    for (int j = 0; j < d; ++j)
      if (!std::binary_search(sets[i].begin(), sets[i].end(), j)) m |= SqMono{1} << (i * static_cast<size_t>(d) + static_cast<size_t>(j));
  return m;
}

std::vector<SqMono> minimal_vertex_covers(const std::vector<SqMono>& gens, int nvars) {
  (void)nvars;
  std::vector<SqMono> covers{0};
  for (SqMono g : gens) {
    if (g == 0) return {};  // unit ideal: no prime contains it
    std::vector<SqMono> next;
    for (SqMono c : covers) {
      if (c & g) {
        next.push_back(c);
        continue;
      }
      for (SqMono b = g; b; b &= b - 1) next.push_back(c | (b & -b));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<SqMono> keep;
    for (SqMono c : next) {
      bool minimal = true;
      for (SqMono o : next)
        if (o != c && (o & c) == o) {
          minimal = false;
          break;
        }
      if (minimal) keep.push_back(c);
    }
    covers = std::move(keep);
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

std::vector<SqMono> squarefree_intersection(const std::vector<SqMono>& primes) {
  return minimal_vertex_covers(primes, 64);
}

MonomialFiber monomial_special_fiber(const std::vector<ApartmentPoint>& gamma) {
  auto rep = general_position_report(gamma);
  if (!rep.minors_ok || !rep.count_ok) {
    std::string msg = "configuration is not in general position";
    if (!rep.minors_ok) {
      msg += ": degenerate minor rows {";
      for (size_t k = 0; k < rep.bad_rows.size(); ++k) msg += (k ? "," : "") + std::to_string(rep.bad_rows[k] + 1);
      msg += "} points {";
      for (size_t k = 0; k < rep.bad_cols.size(); ++k) msg += (k ? "," : "") + std::to_string(rep.bad_cols[k] + 1);
      msg += "}";
    }
    throw PreconditionError(msg);
  }
  auto sub = mixed_subdivision(gamma);
  MonomialFiber f;
  for (const auto& c : sub.cells) f.primes.push_back(cell_prime(c.sets, sub.d));
  f.ideal = squarefree_intersection(f.primes);
  return f;
}

// ------------------------------------------------------ cell intersections

namespace {

struct Ineq {
  std::vector<int64_t> a;
  int64_t b;  // a . y >= b
  bool operator<(const Ineq& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
  bool operator==(const Ineq& o) const { return a == o.a && b == o.b; }
};

bool fm_feasible(std::vector<Ineq> sys, size_t nv) {
  for (size_t v = nv; v-- > 0;) {
    std::vector<Ineq> pos, neg, rest;
    for (auto& q : sys) {
      if (q.a[v] > 0)
        pos.push_back(q);
      else if (q.a[v] < 0)
        neg.push_back(q);
      else
        rest.push_back(q);
    }
    for (const auto& p : pos)
      for (const auto& m : neg) {
        int64_t cp = -m.a[v], cm = p.a[v];
        Ineq c{std::vector<int64_t>(nv), cp * p.b + cm * m.b};
        for (size_t k = 0; k < nv; ++k) c.a[k] = cp * p.a[k] + cm * m.a[k];
        rest.push_back(c);
      }
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    sys = std::move(rest);
  }
  for (const auto& q : sys)
    if (0 < q.b) return false;
  return true;
}

}  // namespace

bool cells_intersect(const std::vector<const CellSets*>& cells, int d, int n) {
  // y(J) >= max_c #{i : S_i subset J}, sum y = n; y_{d-1} eliminated
  size_t nv = static_cast<size_t>(d - 1);
  std::vector<Ineq> sys;
  for (uint32_t J = 1; J < (1u << d) - 1; ++J) {
    int64_t f = 0;
    for (const auto* c : cells) {
      int64_t z = 0;
      for (const auto& s : *c) {
        bool in = true;
        for (int j : s) in = in && (J >> j & 1);
        z += in;
      }
      f = std::max(f, z);
    }
    Ineq q{std::vector<int64_t>(nv, 0), 0};
    if (!(J >> (d - 1) & 1)) {
      for (size_t j = 0; j < nv; ++j) q.a[j] = (J >> j & 1) ? 1 : 0;
      q.b = f;
    } else {
      for (size_t j = 0; j < nv; ++j) q.a[j] = (J >> j & 1) ? 0 : -1;
      q.b = f - n;
    }
    sys.push_back(q);
  }
  return fm_feasible(sys, nv);
}

Facets reduction_complex_from_cells(const MixedSubdivision& sub) {
  int m = static_cast<int>(sub.cells.size());
  return facets_of_complex(m, [&](const std::vector<int>& face) {
    if (face.size() == 1) return true;
    std::vector<const CellSets*> cs;
    for (int v : face) cs.push_back(&sub.cells[static_cast<size_t>(v)].sets);
    return cells_intersect(cs, sub.d, sub.n);
  });
}

std::vector<bool> classify_cell_vertices(const MixedSubdivision& sub,
                                         const std::vector<ApartmentPoint>& gamma) {
  std::vector<bool> primary;
  for (const auto& c : sub.cells)
    primary.push_back(std::find(gamma.begin(), gamma.end(), c.anchor) != gamma.end());
  return primary;
}

}  // namespace mustafin
