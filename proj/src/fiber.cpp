#include "mustafin/fiber.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace mustafin {

FiberRing fiber_ring(int d, int n, bool xyz) {
  if (d < 1 || n < 1) throw PreconditionError("fiber ring needs d, n >= 1");
  if (d * n + 1 + d + n > kMaxVars) throw PreconditionError("too many variables for the polynomial kernel");
  if (xyz && d != 3) throw PreconditionError("xyz names require d = 3");
  FiberRing r;
  r.d = d;
  r.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) {
      if (xyz)
        r.names.push_back(std::string(1, "xyz"[j]) + std::to_string(i + 1));
      else if (d < 10 && n < 10)
        r.names.push_back("x" + std::to_string(j + 1) + std::to_string(i + 1));
      else
        r.names.push_back("x" + std::to_string(j + 1) + "_" + std::to_string(i + 1));
    }
  r.names.push_back("t");
  std::vector<int> blk;
  for (int v = 0; v <= d * n; ++v) blk.push_back(v);
  r.ord = MonoOrder({blk});
  return r;
}

// ------------------------------------------------------------------ minors

Ideal minors_ideal(const std::vector<ValuedMatrix>& g, const FiberRing& r) {
  int d = r.d, n = static_cast<int>(g.size());
  if (n != r.n) throw PreconditionError("ring and matrix count differ");
  std::vector<std::vector<Poly>> col(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const ValuedMatrix& m = g[static_cast<size_t>(i)];
    if (m.rows() != d || m.cols() != d) throw PreconditionError("generator has wrong size");
    if (det(m).is_zero()) throw PreconditionError("singular generator for factor " + std::to_string(i + 1));
    ValuedScalar sh = ValuedScalar::t_pow(static_cast<int>(-m.min_val()));
    RatPoly l(mpq_class(1));
    std::vector<ValuedScalar> s;
    for (int a = 0; a < d; ++a)
      for (int k = 0; k < d; ++k) {
        s.push_back(m(a, k) * sh);
        const RatPoly& den = s.back().den();
        RatPoly gg = RatPoly::gcd(l, den), q, rem;
        RatPoly::divmod(l * den, gg, q, rem);
        l = q;
      }
    for (int a = 0; a < d; ++a) {
      std::vector<Term> ts;
      for (int k = 0; k < d; ++k) {
        const ValuedScalar& e = s[static_cast<size_t>(a * d + k)];
        if (e.is_zero()) continue;
        RatPoly q, rem;
        RatPoly::divmod(l * e.num(), e.den(), q, rem);
        const auto& cs = q.coeffs();
        for (size_t p = 0; p < cs.size(); ++p) {
          if (cs[p] == 0) continue;
          Mono mo = Mono::var(r.var(k, i));
          if (p) mo = mono_mul(mo, Mono::var(r.t_var(), static_cast<int>(p)));
          ts.push_back({mo, cs[p]});
        }
      }
      col[static_cast<size_t>(i)].push_back(normalize(std::move(ts), r.ord));
    }
  }
  Ideal out;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const auto& ci = col[static_cast<size_t>(i)];
          const auto& cj = col[static_cast<size_t>(j)];
          Poly m = sub(mul(ci[static_cast<size_t>(a)], cj[static_cast<size_t>(b)], r.ord),
                       mul(ci[static_cast<size_t>(b)], cj[static_cast<size_t>(a)], r.ord), r.ord);
          if (!m.is_zero()) out.push_back(m);
        }
  return out;
}

Ideal saturate_t(const Ideal& gens, const FiberRing& r) {
  return saturate(gens, poly_var(r.t_var()), r.aux(), r.ord);
}

Ideal special_fiber_saturation(const Configuration& gamma, const FiberRing& r) {
  if (gamma.n() != r.n || gamma.d != r.d) throw PreconditionError("ring does not match configuration");
  if (gamma.n() == 1) return {};
  std::vector<ValuedMatrix> gs;
  for (const auto& p : gamma.points) gs.push_back(p.gen);
  Ideal sat = saturate_t(minors_ideal(gs, r), r);
  Ideal k;
  for (const auto& g : sat) {
    Poly s = substitute(g, r.t_var(), 0, r.ord);
    if (!s.is_zero()) k.push_back(s);
  }
  if (k.empty()) return {};
  return minimalize(buchberger(k, r.ord), r.ord);
}

namespace {

using PolyRow = std::vector<RatPoly>;

std::vector<Mono> monomials_of_degree(const std::vector<int>& a, const FiberRing& r) {
  std::vector<Mono> out{Mono{}};
  for (int i = 0; i < r.n; ++i) {
    std::vector<Mono> next;
    for (const auto& m : out) {
      std::function<void(int, int, Mono)> rec = [&](int j, int left, Mono cur) {
        if (j == r.d - 1) {
          if (left) cur = mono_mul(cur, Mono::var(r.var(j, i), left));
          next.push_back(cur);
          return;
        }
        for (int e = 0; e <= left; ++e) rec(j + 1, left - e, e ? mono_mul(cur, Mono::var(r.var(j, i), e)) : cur);
      };
      rec(0, a[static_cast<size_t>(i)], m);
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const Mono& x, const Mono& y) { return r.ord.cmp(x, y) > 0; });
  return out;
}

std::vector<int> multidegree_of(const Mono& m, const FiberRing& r) {
  std::vector<int> a(static_cast<size_t>(r.n), 0);
  for (int v = 0; v < r.d * r.n; ++v) a[static_cast<size_t>(r.block_of(v))] += m.e[static_cast<size_t>(v)];
  return a;
}

constexpr uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

uint64_t mulmod(uint64_t a, uint64_t b) { return static_cast<uint64_t>((unsigned __int128)a * b % kPrime); }
uint64_t powmod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}
uint64_t mpz_mod(const mpz_class& z) { return mpz_fdiv_ui(z.get_mpz_t(), kPrime); }
bool mpq_mod(const mpq_class& q, uint64_t& out) {
  uint64_t dn = mpz_mod(q.get_den());
  if (!dn) return false;
  out = mulmod(mpz_mod(q.get_num()), powmod(dn, kPrime - 2));
  return true;
}

// indices of a maximal K-independent subset of rows, found by specializing t
std::vector<size_t> independent_rows(const std::vector<PolyRow>& rows, size_t n_cols, size_t want) {
  for (uint64_t t0 : {7ULL, 1000003ULL, 123456789ULL, 98765432123ULL}) {
    std::vector<std::pair<size_t, std::vector<uint64_t>>> basis;
    std::vector<size_t> pick;
    bool ok = true;
    for (size_t k = 0; k < rows.size() && pick.size() < want && ok; ++k) {
      std::vector<uint64_t> v(n_cols, 0);
      for (size_t c = 0; c < n_cols && ok; ++c) {
        const auto& cs = rows[k][c].coeffs();
        uint64_t acc = 0;
        for (size_t e = cs.size(); e-- > 0;) {
          uint64_t cm = 0;
          if (!mpq_mod(cs[e], cm)) ok = false;
          acc = (mulmod(acc, t0) + cm) % kPrime;
        }
        v[c] = acc;
      }
      for (const auto& [p, b] : basis) {
        if (!v[p]) continue;
        uint64_t f = v[p];
        for (size_t c = 0; c < n_cols; ++c) v[c] = (v[c] + kPrime - mulmod(f, b[c])) % kPrime;
      }
      size_t p = 0;
      while (p < n_cols && !v[p]) ++p;
      if (p == n_cols) continue;
      uint64_t inv = powmod(v[p], kPrime - 2);
      for (auto& x : v) x = mulmod(x, inv);
      basis.emplace_back(p, std::move(v));
      pick.push_back(k);
    }
    if (ok && pick.size() == want) return pick;
  }
  throw InternalError("could not find a basis of the minors in some degree");
}

// residue mod t of V cap R^N for the K-span V of the given independent rows
QMatrix limit_space(std::vector<PolyRow> rows, size_t n_cols) {
  size_t m = rows.size();
  for (;;) {
    for (auto& row : rows) {
      int lo = INT32_MAX;
      for (const auto& e : row)
        if (!e.is_zero()) lo = std::min(lo, e.order());
      if (lo > 0)
        for (auto& e : row) e = e.shift(-lo);
    }
    struct Piv {
      size_t col;
      std::vector<mpq_class> vec, combo;
    };
    std::vector<Piv> basis;
    bool changed = false;
    for (size_t j = 0; j < m; ++j) {
      std::vector<mpq_class> v(n_cols), combo(m);
      for (size_t c = 0; c < n_cols; ++c) v[c] = rows[j][c].coeff(0);
      combo[j] = 1;
      for (const auto& b : basis) {
        if (v[b.col] == 0) continue;
        mpq_class f = v[b.col];
        for (size_t c = 0; c < n_cols; ++c)
          if (b.vec[c] != 0) v[c] -= f * b.vec[c];
        for (size_t c = 0; c < m; ++c)
          if (b.combo[c] != 0) combo[c] -= f * b.combo[c];
      }
      size_t p = 0;
      while (p < n_cols && v[p] == 0) ++p;
      if (p < n_cols) {
        mpq_class inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (auto& x : combo) x *= inv;
        basis.push_back({p, std::move(v), std::move(combo)});
        continue;
      }
      PolyRow nr(n_cols);
      for (size_t i = 0; i < m; ++i) {
        if (combo[i] == 0) continue;
        for (size_t c = 0; c < n_cols; ++c)
          if (!rows[i][c].is_zero()) nr[c] = nr[c] + rows[i][c].scale(combo[i]);
      }
      rows[j] = std::move(nr);
      changed = true;
    }
    if (!changed) {
      QMatrix q(m, std::vector<mpq_class>(n_cols));
      for (size_t j = 0; j < m; ++j)
        for (size_t c = 0; c < n_cols; ++c) q[j][c] = rows[j][c].coeff(0);
      rref(q);
      return q;
    }
  }
}

}  // namespace

Ideal special_fiber(const Configuration& gamma, const FiberRing& r) {
  if (gamma.n() != r.n || gamma.d != r.d) throw PreconditionError("ring does not match configuration");
  int d = r.d, n = r.n;
  if (n == 1) return {};
  std::vector<ValuedMatrix> gs;
  for (const auto& p : gamma.points) gs.push_back(p.gen);
  Ideal minors = minors_ideal(gs, r);
  std::vector<std::vector<int>> degs;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    if (__builtin_popcount(s) < 2) continue;
    std::vector<int> a(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = s >> i & 1;
    degs.push_back(a);
  }
  std::stable_sort(degs.begin(), degs.end(), [](const auto& x, const auto& y) {
    int sx = std::accumulate(x.begin(), x.end(), 0), sy = std::accumulate(y.begin(), y.end(), 0);
    if (sx != sy) return sx < sy;
    return x > y;
  });
  Ideal gens;
  std::vector<std::vector<int>> gdeg;
  for (const auto& a : degs) {
    std::vector<Mono> cols = monomials_of_degree(a, r);
    std::map<Mono, size_t> at;
    for (size_t c = 0; c < cols.size(); ++c) at[cols[c]] = c;
    auto leq = [&](const std::vector<int>& b) {
      for (int i = 0; i < n; ++i)
        if (b[static_cast<size_t>(i)] > a[static_cast<size_t>(i)]) return false;
      return true;
    };
    auto diff = [&](const std::vector<int>& b) {
      std::vector<int> c(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)];
      return c;
    };
    // K-span of the minors in degree a
    std::vector<PolyRow> rows;
    for (const auto& g : minors) {
      std::vector<int> b = multidegree_of(g.lm(), r);
      if (!leq(b)) continue;
      for (const auto& mm : monomials_of_degree(diff(b), r)) {
        std::vector<std::vector<mpq_class>> acc(cols.size());
        for (const auto& t : g.terms) {
          int e = t.m.e[static_cast<size_t>(r.t_var())];
          Mono x = t.m;
          if (e) x = mono_div(x, Mono::var(r.t_var(), e));
          auto& slot = acc[at.at(mono_mul(x, mm))];
          if (slot.size() <= static_cast<size_t>(e)) slot.resize(static_cast<size_t>(e) + 1);
          slot[static_cast<size_t>(e)] += t.c;
        }
        PolyRow row;
        for (auto& v : acc) row.push_back(RatPoly(std::move(v)));
        rows.push_back(std::move(row));
      }
    }
    int total = std::accumulate(a.begin(), a.end(), 0);
    size_t want = cols.size() - static_cast<size_t>(binomial(total + d - 1, d - 1));
    std::vector<PolyRow> basis;
    for (size_t k : independent_rows(rows, cols.size(), want)) basis.push_back(rows[k]);
    QMatrix lim = limit_space(std::move(basis), cols.size());
    // part already generated in lower degrees
    QMatrix low;
    for (size_t k = 0; k < gens.size(); ++k) {
      if (!leq(gdeg[k])) continue;
      for (const auto& mm : monomials_of_degree(diff(gdeg[k]), r)) {
        std::vector<mpq_class> v(cols.size());
        for (const auto& t : gens[k].terms) v[at.at(mono_mul(t.m, mm))] += t.c;
        low.push_back(std::move(v));
      }
    }
    std::vector<int> piv;
    if (!low.empty()) piv = rref(low);
    for (auto& row : lim)
      for (size_t p = 0; p < piv.size(); ++p) {
        mpq_class f = row[static_cast<size_t>(piv[p])];
        if (f == 0) continue;
        for (size_t c = 0; c < cols.size(); ++c) row[c] -= f * low[p][c];
      }
    rref(lim);
    for (const auto& row : lim) {
      std::vector<Term> ts;
      for (size_t c = 0; c < cols.size(); ++c)
        if (row[c] != 0) ts.push_back({cols[c], row[c]});
      if (ts.empty()) continue;
      gens.push_back(normalize(std::move(ts), r.ord));
      gdeg.push_back(a);
    }
  }
  return gens;
}

// -------------------------------------------------------------- printing

std::vector<std::string> ideal_strs(const Ideal& gens, const FiberRing& r) {
  Ideal s;
  for (const auto& g : gens) s.push_back(make_monic(reorder(g, r.ord)));
  std::sort(s.begin(), s.end(), [&](const Poly& a, const Poly& b) {
    int c = r.ord.cmp(a.lm(), b.lm());
    if (c) return c > 0;
    return poly_str(a, r.names) < poly_str(b, r.names);
  });
  std::vector<std::string> out;
  for (const auto& g : s) out.push_back(poly_str(g, r.names));
  return out;
}

std::string ideal_str(const Ideal& gens, const FiberRing& r) {
  std::string out = "<";
  bool first = true;
  for (const auto& g : ideal_strs(gens, r)) {
    out += (first ? "" : ", ") + g;
    first = false;
  }
  return out + ">";
}

Ideal parse_ideal(const std::vector<std::string>& gens, const FiberRing& r) {
  Ideal out;
  for (const auto& g : gens) out.push_back(parse_poly(g, r.names, r.ord));
  return out;
}

std::string chow_str(const ChowClass& c) {
  std::string s;
  for (size_t k = 0; k < c.size(); ++k) {
    if (k) s += " + ";
    std::string m;
    for (size_t i = 0; i < c[k].size(); ++i) {
      if (!c[k][i]) continue;
      if (!m.empty()) m += "*";
      m += "H" + std::to_string(i + 1);
      if (c[k][i] > 1) m += "^" + std::to_string(c[k][i]);
    }
    s += m.empty() ? "1" : m;
  }
  return s.empty() ? "0" : s;
}

// ------------------------------------------------------------ components

namespace {

bool irrelevant(const Ideal& gb, const FiberRing& r) {
  for (int i = 0; i < r.n; ++i) {
    bool all = true;
    for (int j = 0; j < r.d && all; ++j) all = normal_form(poly_var(r.var(j, i)), gb, r.ord).is_zero();
    if (all) return true;
  }
  return false;
}

std::vector<int> block_degrees(const Mono& m, const FiberRing& r) {
  std::vector<int> b(static_cast<size_t>(r.n), 0);
  for (int v = 0; v < r.d * r.n; ++v) b[static_cast<size_t>(r.block_of(v))] += m.e[static_cast<size_t>(v)];
  return b;
}

enum class FactorResult { Irreducible, Reducible, Unknown };

// Multihomogeneous polynomials of degree <= 1 in every block factor only along
// block partitions; a rank-one flattening exhibits the split.
FactorResult try_factor(const Poly& g, const FiberRing& r, Poly& f1, Poly& f2) {
  // common variable factor
  uint32_t common = ~0u;
  for (const auto& t : g.terms) common &= t.m.mask;
  if (common) {
    int v = __builtin_ctz(common);
    f1 = poly_var(v);
    Mono mv = Mono::var(v);
    f2.terms.clear();
    for (const auto& t : g.terms) f2.terms.push_back({mono_div(t.m, mv), t.c});
    return FactorResult::Reducible;
  }
  std::vector<int> bd = block_degrees(g.lm(), r);
  for (const auto& t : g.terms)
    if (block_degrees(t.m, r) != bd) return FactorResult::Unknown;
  if (g.support() >> r.t_var()) return FactorResult::Unknown;
  std::vector<int> used;
  for (int i = 0; i < r.n; ++i) {
    if (bd[static_cast<size_t>(i)] > 1) return FactorResult::Unknown;
    if (bd[static_cast<size_t>(i)] == 1) used.push_back(i);
  }
  if (used.size() < 2) return FactorResult::Irreducible;
  size_t u = used.size();
  for (uint32_t part = 1; part < (1u << (u - 1)); ++part) {
    uint32_t blockmask = 0;
    for (size_t k = 0; k < u; ++k)
      if (part >> k & 1) blockmask |= 1u << used[k];
    uint32_t varmask = 0;
    for (int v = 0; v < r.d * r.n; ++v)
      if (blockmask >> r.block_of(v) & 1) varmask |= 1u << v;
    std::map<Mono, size_t> rows, cols;
    std::vector<std::tuple<size_t, size_t, mpq_class>> ent;
    std::vector<Mono> rm, cm;
    for (const auto& t : g.terms) {
      Mono a, b;
      for (int v = 0; v < kMaxVars; ++v) {
        auto e = t.m.e[static_cast<size_t>(v)];
        if (!e) continue;
        if (varmask >> v & 1)
          a = mono_mul(a, Mono::var(v, e));
        else
          b = mono_mul(b, Mono::var(v, e));
      }
      auto [ia, fa] = rows.emplace(a, rows.size());
      if (fa) rm.push_back(a);
      auto [ib, fb] = cols.emplace(b, cols.size());
      if (fb) cm.push_back(b);
      ent.emplace_back(ia->second, ib->second, t.c);
    }
    QMatrix m(rows.size(), std::vector<mpq_class>(cols.size()));
    for (auto& [a, b, c] : ent) m[a][b] = c;
    if (rank(m) != 1) continue;
    size_t r0 = 0, c0 = 0;
    for (auto& [a, b, c] : ent) {
      r0 = a;
      c0 = b;
      break;
    }
    std::vector<Term> ta, tb;
    for (size_t a = 0; a < rm.size(); ++a)
      if (m[a][c0] != 0) ta.push_back({rm[a], m[a][c0]});
    for (size_t b = 0; b < cm.size(); ++b)
      if (m[r0][b] != 0) tb.push_back({cm[b], m[r0][b] / m[r0][c0]});
    f1 = normalize(ta, r.ord);
    f2 = normalize(tb, r.ord);
    return FactorResult::Reducible;
  }
  return FactorResult::Irreducible;
}

struct Splitter {
  const FiberRing& r;
  std::set<std::string> seen;
  std::vector<Ideal> leaves;

  void run(const Ideal& gens) {
    Ideal g = buchberger(gens, r.ord);
    if (is_unit_ideal(g)) return;
    std::string key = ideal_str(g, r);
    if (!seen.insert(key).second) return;
    for (const auto& p : g)
      if (p.is_monomial() && p.deg() >= 2) {
        for (uint32_t s = p.lm().mask; s; s &= s - 1) {
          Ideal h = g;
          h.push_back(poly_var(__builtin_ctz(s)));
          run(h);
        }
        return;
      }
    int nonlinear = 0;
    bool certified = true;
    for (const auto& p : g) {
      if (p.deg() < 2) continue;
      ++nonlinear;
      Poly f1, f2;
      FactorResult fr = try_factor(p, r, f1, f2);
      if (fr == FactorResult::Reducible) {
        Ideal h1 = g, h2 = g;
        h1.push_back(f1);
        h2.push_back(f2);
        run(h1);
        run(h2);
        return;
      }
      if (fr == FactorResult::Unknown) certified = false;
    }
    if (nonlinear == 0 || (nonlinear == 1 && certified)) {
      leaves.push_back(g);
      return;
    }
    throw DecompositionUnsupported("decomposition unsupported: base case " + key);
  }
};

std::vector<Ideal> minimal_only(std::vector<Ideal> ps, const FiberRing& r) {
  std::vector<Ideal> out;
  std::vector<bool> drop(ps.size(), false);
  for (size_t a = 0; a < ps.size(); ++a)
    for (size_t b = 0; b < ps.size() && !drop[a]; ++b) {
      if (a == b || drop[b]) continue;
      // ps[b] strictly inside ps[a], or equal with b earlier
      if (ideal_contains(ps[a], ps[b], r.ord)) {
        bool eq = ideal_contains(ps[b], ps[a], r.ord);
        if (!eq || b < a) drop[a] = true;
      }
    }
  for (size_t a = 0; a < ps.size(); ++a)
    if (!drop[a]) out.push_back(ps[a]);
  return out;
}

}  // namespace

std::vector<Ideal> squarefree_components(const Ideal& fiber, const FiberRing& r) {
  std::vector<SqMono> gens;
  for (const auto& g : fiber) {
    if (!g.is_monomial()) throw PreconditionError("squarefree decomposition needs monomial generators");
    SqMono m = 0;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = g.lm().e[static_cast<size_t>(v)];
      if (e > 1) throw PreconditionError("monomial generator is not squarefree");
      if (e) m |= SqMono{1} << v;
    }
    gens.push_back(m);
  }
  std::vector<Ideal> out;
  for (SqMono c : minimal_vertex_covers(gens, r.d * r.n)) {
    Ideal p;
    for (int v = 0; v < r.d * r.n; ++v)
      if (c >> v & 1) p.push_back(poly_var(v));
    if (!irrelevant(p, r)) out.push_back(buchberger(p, r.ord));
  }
  return out;
}

std::vector<Ideal> components(const Ideal& fiber, const FiberRing& r) {
  if (fiber.empty()) return {Ideal{}};
  if (std::all_of(fiber.begin(), fiber.end(), [](const Poly& p) { return p.is_monomial(); }))
    return squarefree_components(fiber, r);
  Splitter s{r, {}, {}};
  s.run(fiber);
  std::vector<Ideal> rel;
  for (auto& p : s.leaves)
    if (!irrelevant(p, r)) rel.push_back(p);
  return minimal_only(rel, r);
}

// ------------------------------------------------------------ hull images

std::vector<Ideal> hull_image_components(const Configuration& gamma, const FiberRing& r) {
  int d = r.d, n = r.n;
  int s0 = r.aux(), l0 = r.aux() + d;
  if (l0 + n > kMaxVars) throw PreconditionError("too many variables for hull images");
  std::vector<LatticeClass> hull = convex_hull(gamma);
  std::vector<ValuedMatrix> inv;
  for (const auto& p : gamma.points) inv.push_back(p.gen.inverse());
  std::mt19937_64 rng(0x5eed);
  std::vector<Ideal> found;
  for (const auto& w : hull) {
    std::vector<QMatrix> a(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      ValuedMatrix m = inv[static_cast<size_t>(i)] * w.gen;
      ValuedScalar sh = ValuedScalar::t_pow(static_cast<int>(-m.min_val()));
      a[static_cast<size_t>(i)].assign(static_cast<size_t>(d), std::vector<mpq_class>(static_cast<size_t>(d)));
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) a[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = residue(m(j, k) * sh);
    }
    // generic rank of the differential of (s, lambda) -> (lambda_i A_i s)
    int best = 0;
    for (int trial = 0; trial < 2; ++trial) {
      std::vector<mpq_class> s(static_cast<size_t>(d)), lam(static_cast<size_t>(n));
      for (auto& x : s) x = static_cast<long>(rng() % 1000) + 1;
      for (auto& x : lam) x = static_cast<long>(rng() % 1000) + 1;
      QMatrix jac;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
          std::vector<mpq_class> row(static_cast<size_t>(d + n));
          mpq_class as = 0;
          for (int k = 0; k < d; ++k) {
            const mpq_class& c = a[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
            row[static_cast<size_t>(k)] = lam[static_cast<size_t>(i)] * c;
            as += c * s[static_cast<size_t>(k)];
          }
          row[static_cast<size_t>(d + i)] = as;
          jac.push_back(row);
        }
      best = std::max(best, rank(jac));
    }
    if (best != d + n - 1) continue;
    MonoOrder ord;
    {
      std::vector<int> e, x;
      for (int v = 0; v < d; ++v) e.push_back(s0 + v);
      for (int v = 0; v < n; ++v) e.push_back(l0 + v);
      ord = MonoOrder({e, r.ord.blocks()[0]});
    }
    Ideal gens;
    uint32_t elim = 0;
    for (int v = s0; v < l0 + n; ++v) elim |= 1u << v;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) {
        std::vector<Term> ts{{Mono::var(r.var(j, i)), 1}};
        for (int k = 0; k < d; ++k) {
          const mpq_class& c = a[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
          if (c != 0) ts.push_back({mono_mul(Mono::var(l0 + i), Mono::var(s0 + k)), -c});
        }
        gens.push_back(normalize(std::move(ts), ord));
      }
    Ideal p = eliminate(gens, elim, r.ord);
    bool dup = false;
    for (const auto& q : found)
      if (q.size() == p.size() && ideal_contains(q, p, r.ord)) dup = true;
    if (!dup) found.push_back(p);
  }
  return found;
}

// ------------------------------------------------------------- multidegree

ChowClass full_diagonal_class(int d, int n) {
  ChowClass out;
  std::vector<int> a(static_cast<size_t>(n), 0);
  int target = (d - 1) * (n - 1);
  for (;;) {
    if (std::accumulate(a.begin(), a.end(), 0) == target) out.push_back(a);
    int k = 0;
    while (k < n && ++a[static_cast<size_t>(k)] == d) a[static_cast<size_t>(k++)] = 0;
    if (k == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// standard monomials of an Artinian monomial ideal in the variables of `vars`
long count_standard(const std::vector<Mono>& gens, const std::vector<int>& vars, int bound) {
  long count = 0;
  Mono cur;
  std::function<void(size_t)> rec = [&](size_t k) {
    for (const auto& g : gens)
      if (divides(g, cur)) return;
    if (k == vars.size()) {
      ++count;
      return;
    }
    int v = vars[k];
    for (int e = 0; e <= bound; ++e) {
      Mono save = cur;
      if (e) cur = mono_mul(cur, Mono::var(v, e));
      bool in = false;
      for (const auto& g : gens) in = in || divides(g, cur);
      if (in) {
        cur = save;
        break;
      }
      rec(k + 1);
      cur = save;
    }
  };
  rec(0);
  return count;
}

}  // namespace

ChowClass multidegree(const Ideal& prime, const FiberRing& r) {
  int d = r.d, n = r.n;
  int codim = (d - 1) * (n - 1);
  Ideal gb = buchberger(prime, r.ord);
  std::vector<Mono> lms;
  std::vector<SqMono> supp;
  int maxe = 1;
  for (const auto& g : gb) {
    lms.push_back(g.lm());
    supp.push_back(g.lm().mask);
    for (int v = 0; v < kMaxVars; ++v) maxe = std::max<int>(maxe, g.lm().e[static_cast<size_t>(v)]);
  }
  ChowClass out;
  if (gb.empty()) {
    if (codim == 0) out.push_back(std::vector<int>(static_cast<size_t>(n), 0));
    return out;
  }
  for (SqMono c : minimal_vertex_covers(supp, d * n)) {
    if (__builtin_popcountll(c) != codim) continue;
    std::vector<int> a(static_cast<size_t>(n), 0);
    for (int v = 0; v < d * n; ++v)
      if (c >> v & 1) ++a[static_cast<size_t>(r.block_of(v))];
    if (*std::max_element(a.begin(), a.end()) >= d) continue;
    if (maxe > 1) {
      std::vector<Mono> loc;
      std::vector<int> vars;
      for (int v = 0; v < d * n; ++v)
        if (c >> v & 1) vars.push_back(v);
      for (const auto& m : lms) {
        Mono k;
        for (int v : vars)
          if (m.e[static_cast<size_t>(v)]) k = mono_mul(k, Mono::var(v, m.e[static_cast<size_t>(v)]));
        loc.push_back(k);
      }
      long mult = count_standard(loc, vars, maxe);
      if (mult != 1)
        throw InternalError("multidegree: multiplicity " + std::to_string(mult) + " in an initial ideal");
    }
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CycleClass cycle_class(const Ideal& gens, const FiberRing& r) {
  int d = r.d, n = r.n;
  CycleClass out;
  Ideal gb = buchberger(gens, r.ord);
  if (is_unit_ideal(gb)) return out;
  std::vector<Mono> lms;
  std::vector<SqMono> supp;
  int maxe = 1;
  for (const auto& g : gb) {
    lms.push_back(g.lm());
    supp.push_back(g.lm().mask);
    for (int v = 0; v < kMaxVars; ++v) maxe = std::max<int>(maxe, g.lm().e[static_cast<size_t>(v)]);
  }
  std::vector<SqMono> covers = gb.empty() ? std::vector<SqMono>{0} : minimal_vertex_covers(supp, d * n);
  std::map<std::vector<int>, long> acc;
  for (SqMono c : covers) {
    std::vector<int> a(static_cast<size_t>(n), 0);
    for (int v = 0; v < d * n; ++v)
      if (c >> v & 1) ++a[static_cast<size_t>(r.block_of(v))];
    if (*std::max_element(a.begin(), a.end()) >= d) continue;
    int cd = __builtin_popcountll(c);
    if (!out.empty && cd > out.codim) continue;
    if (out.empty || cd < out.codim) {
      acc.clear();
      out.empty = false;
      out.codim = cd;
    }
    std::vector<Mono> loc;
    std::vector<int> vars;
    for (int v = 0; v < d * n; ++v)
      if (c >> v & 1) vars.push_back(v);
    for (const auto& m : lms) {
      Mono k;
      for (int v : vars)
        if (m.e[static_cast<size_t>(v)]) k = mono_mul(k, Mono::var(v, m.e[static_cast<size_t>(v)]));
      loc.push_back(k);
    }
    acc[a] += maxe > 1 ? count_standard(loc, vars, maxe) : 1;
  }
  out.terms.assign(acc.begin(), acc.end());
  return out;
}

std::string cycle_str(const CycleClass& c) {
  if (c.empty) return "empty";
  std::string s = "codim " + std::to_string(c.codim) + ":";
  for (size_t k = 0; k < c.terms.size(); ++k) {
    s += k ? " + " : " ";
    if (c.terms[k].second != 1) s += std::to_string(c.terms[k].second) + "*";
    s += chow_str({c.terms[k].first});
  }
  return s;
}

std::vector<int> primary_flags(const std::vector<ChowClass>& classes, int d, int n) {
  std::vector<int> flags(classes.size(), -1);
  for (int i = 0; i < n; ++i) {
    std::vector<int> target(static_cast<size_t>(n), d - 1);
    target[static_cast<size_t>(i)] = 0;
    int hits = 0;
    for (size_t c = 0; c < classes.size(); ++c)
      if (std::find(classes[c].begin(), classes[c].end(), target) != classes[c].end()) {
        if (flags[c] >= 0) throw InternalError("component primary for two factors");
        flags[c] = i;
        ++hits;
      }
    if (hits != 1)
      throw InternalError("factor " + std::to_string(i + 1) + " has " + std::to_string(hits) +
                          " primary components");
  }
  return flags;
}

// --------------------------------------------------------- intersections

bool multiproj_nonempty(const Ideal& gens, const FiberRing& r) {
  Ideal gb = buchberger(gens, r.ord);
  if (is_unit_ideal(gb)) return false;
  int d = r.d, n = r.n;
  bool linear = std::all_of(gb.begin(), gb.end(), [](const Poly& p) { return p.deg() <= 1; });
  if (linear) {
    std::vector<int> cnt(static_cast<size_t>(n), 0);
    for (const auto& g : gb) ++cnt[static_cast<size_t>(r.block_of(__builtin_ctz(g.lm().mask)))];
    for (int c : cnt)
      if (c >= d) return false;
    return true;
  }
  // one coordinate per block is nonzero somewhere on the variety
  std::vector<std::vector<int>> cand(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      int v = r.var(j, i);
      if (!normal_form(poly_var(v), gb, r.ord).is_zero()) cand[static_cast<size_t>(i)].push_back(v);
    }
    if (cand[static_cast<size_t>(i)].empty()) return false;
  }
  std::vector<size_t> pick(static_cast<size_t>(n), 0);
  MonoOrder ext({{r.aux()}, r.ord.blocks()[0]});
  for (;;) {
    Mono m = Mono::var(r.aux());
    for (int i = 0; i < n; ++i) m = mono_mul(m, Mono::var(cand[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]]));
    Ideal h = gb;
    h.push_back(normalize({{m, 1}, {Mono{}, -1}}, ext));
    if (!is_unit_ideal(buchberger(h, ext))) return true;
    int k = 0;
    while (k < n && ++pick[static_cast<size_t>(k)] == cand[static_cast<size_t>(k)].size()) pick[static_cast<size_t>(k++)] = 0;
    if (k == n) return false;
  }
}

bool multiproj_nonempty_intersection(const Ideal& p, const Ideal& q, const FiberRing& r) {
  Ideal s = p;
  s.insert(s.end(), q.begin(), q.end());
  return multiproj_nonempty(s, r);
}

Facets reduction_complex(const std::vector<Ideal>& comps, const FiberRing& r) {
  return facets_of_complex(static_cast<int>(comps.size()), [&](const std::vector<int>& face) {
    if (face.size() == 1) return true;
    Ideal s;
    for (int v : face) s.insert(s.end(), comps[static_cast<size_t>(v)].begin(), comps[static_cast<size_t>(v)].end());
    return multiproj_nonempty(s, r);
  });
}

// ------------------------------------------------------------------ report

namespace {

bool is_coordinate(const Ideal& p) {
  return std::all_of(p.begin(), p.end(), [](const Poly& g) { return g.is_monomial() && g.deg() == 1; });
}

Ideal intersect_all(const std::vector<Ideal>& comps, const FiberRing& r) {
  if (std::all_of(comps.begin(), comps.end(), is_coordinate)) {
    std::vector<SqMono> ps;
    for (const auto& p : comps) {
      SqMono m = 0;
      for (const auto& g : p) m |= g.lm().mask;
      ps.push_back(m);
    }
    Ideal out;
    for (SqMono g : squarefree_intersection(ps)) {
      Mono m;
      for (int v = 0; v < kMaxVars; ++v)
        if (g >> v & 1) m = mono_mul(m, Mono::var(v));
      out.push_back(poly_mono(m));
    }
    return out;
  }
  Ideal acc = comps.at(0);
  for (size_t k = 1; k < comps.size(); ++k) acc = ideal_intersection(acc, comps[k], r.aux(), r.ord);
  return acc;
}

}  // namespace

FiberReport fiber_report(const Configuration& gamma, const FiberRing& r, const FiberOptions& opt) {
  FiberReport rep;
  rep.d = r.d;
  rep.n = r.n;
  rep.fiber_ideal = special_fiber(gamma, r);
  std::vector<Ideal> comps;
  bool monomial = std::all_of(rep.fiber_ideal.begin(), rep.fiber_ideal.end(),
                              [](const Poly& p) { return p.is_monomial(); });
  try {
    comps = components(rep.fiber_ideal, r);
    rep.method = monomial ? "monomial" : "splitter";
  } catch (const DecompositionUnsupported&) {
    if (!opt.allow_hull_images) throw;
    comps = hull_image_components(gamma, r);
    rep.method = "hull-image";
  }
  if (opt.verify && r.n > 1) {
    Ideal inter = intersect_all(comps, r);
    if (!ideal_equal(inter, rep.fiber_ideal, r.ord))
      throw InternalError("components do not intersect to the fiber ideal (" + rep.method + ")");
  }
  std::vector<ChowClass> classes;
  for (const auto& p : comps) classes.push_back(multidegree(p, r));
  std::vector<int> flags = primary_flags(classes, r.d, r.n);
  std::vector<size_t> idx(comps.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::string> keys;
  for (const auto& p : comps) keys.push_back(ideal_str(p, r));
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    int fa = flags[a] < 0 ? r.n : flags[a], fb = flags[b] < 0 ? r.n : flags[b];
    if (fa != fb) return fa < fb;
    return keys[a] < keys[b];
  });
  for (size_t k : idx) {
    rep.components.push_back(comps[k]);
    rep.multidegrees.push_back(classes[k]);
    rep.primary.push_back(flags[k]);
  }
  if (opt.verify) {
    ChowClass all;
    for (const auto& c : rep.multidegrees) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    if (all != full_diagonal_class(r.d, r.n)) throw InternalError("multidegrees do not sum to the diagonal class");
  }
  rep.complex = reduction_complex(rep.components, r);
  return rep;
}

}  // namespace mustafin
