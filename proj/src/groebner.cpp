#include "mustafin/groebner.hpp"

#include <algorithm>
#include <stdexcept>

namespace mustafin {

GroebnerStats& last_groebner_stats() {
  thread_local GroebnerStats s;
  return s;
}

namespace {

struct Elem {
  Poly p;
  int sugar = 0;
  bool active = true;
};

struct Pair {
  int i, j;
  Mono lcm;
  int sugar;
};

// f - c * m * g where the leading terms cancel
Poly reduce_step(const Poly& f, size_t from, const Poly& g, const Mono& m, const mpq_class& c,
                 const MonoOrder& ord) {
  Poly r;
  r.terms.reserve(f.terms.size() - from + g.terms.size());
  size_t i = from + 1, j = 1;
  while (i < f.terms.size() || j < g.terms.size()) {
    if (j < g.terms.size()) {
      Mono gm = mono_mul(g.terms[j].m, m);
      int cmp = i == f.terms.size() ? -1 : ord.cmp(f.terms[i].m, gm);
      if (cmp > 0) {
        r.terms.push_back(f.terms[i++]);
      } else if (cmp < 0) {
        r.terms.push_back({gm, -c * g.terms[j].c});
        ++j;
      } else {
        mpq_class v = f.terms[i].c - c * g.terms[j].c;
        if (v != 0) r.terms.push_back({gm, v});
        ++i;
        ++j;
      }
    } else {
      r.terms.push_back(f.terms[i++]);
    }
  }
  return r;
}

template <class Reducers>
Poly nf_impl(Poly f, const Reducers& red, const MonoOrder& ord, bool full, int* sugar) {
  Poly done;
  while (!f.is_zero()) {
    const Term& lt = f.terms.front();
    int found = -1;
    for (size_t k = 0; k < red.size(); ++k) {
      const Poly* g = red.get(k);
      if (divides(g->lm(), lt.m)) {
        found = static_cast<int>(k);
        break;
      }
    }
    if (found < 0) {
      if (!full) {
        done.terms.insert(done.terms.end(), f.terms.begin(), f.terms.end());
        return done;
      }
      done.terms.push_back(lt);
      f.terms.erase(f.terms.begin());
      continue;
    }
    const Poly* g = red.get(static_cast<size_t>(found));
    Mono m = mono_div(lt.m, g->lm());
    mpq_class c = lt.c / g->lc();
    if (sugar) *sugar = std::max(*sugar, m.deg() + red.sugar(static_cast<size_t>(found)));
    f = reduce_step(f, 0, *g, m, c, ord);
  }
  return done;
}

struct ElemReducers {
  const std::vector<Elem>& elems;
  std::vector<int> idx;
  size_t size() const { return idx.size(); }
  const Poly* get(size_t k) const { return &elems[static_cast<size_t>(idx[k])].p; }
  int sugar(size_t k) const { return elems[static_cast<size_t>(idx[k])].sugar; }
};

struct PlainReducers {
  const Ideal& g;
  size_t size() const { return g.size(); }
  const Poly* get(size_t k) const { return &g[k]; }
  int sugar(size_t) const { return 0; }
};

Poly spoly(const Poly& f, const Poly& g, const Mono& lcm, const MonoOrder& ord) {
  Mono mf = mono_div(lcm, f.lm()), mg = mono_div(lcm, g.lm());
  Poly a = mul_term(f, mf, 1 / f.lc());
  Poly b = mul_term(g, mg, 1 / g.lc());
  return sub(a, b, ord);
}

}  // namespace

Poly normal_form(const Poly& f, const Ideal& gb, const MonoOrder& ord) {
  return nf_impl(f, PlainReducers{gb}, ord, true, nullptr);
}

bool is_unit_ideal(const Ideal& gb) {
  for (const auto& g : gb)
    if (g.is_constant()) return true;
  return false;
}

Ideal buchberger(const Ideal& input, const MonoOrder& ord) {
  auto& stats = last_groebner_stats();
  stats = {};
  std::vector<Elem> elems;
  std::vector<Pair> pairs;
  std::vector<int> active;

  auto update = [&](int h) {
    const Mono& lh = elems[static_cast<size_t>(h)].p.lm();
    std::vector<Pair> c, d;
    for (int g : active) {
      Mono l = mono_lcm(lh, elems[static_cast<size_t>(g)].p.lm());
      int s = std::max(elems[static_cast<size_t>(h)].sugar + l.deg() - lh.deg(),
                       elems[static_cast<size_t>(g)].sugar + l.deg() - elems[static_cast<size_t>(g)].p.lm().deg());
      c.push_back({g, h, l, s});
    }
    for (size_t a = 0; a < c.size(); ++a) {
      bool keep = coprime(lh, elems[static_cast<size_t>(c[a].i)].p.lm());
      if (!keep) {
        keep = true;
        for (size_t b = a + 1; b < c.size() && keep; ++b)
          if (divides(c[b].lcm, c[a].lcm)) keep = false;
        for (size_t b = 0; b < d.size() && keep; ++b)
          if (divides(d[b].lcm, c[a].lcm)) keep = false;
      }
      if (keep) d.push_back(c[a]);
    }
    std::vector<Pair> np;
    for (const auto& p : pairs) {
      const Mono& li = elems[static_cast<size_t>(p.i)].p.lm();
      const Mono& lj = elems[static_cast<size_t>(p.j)].p.lm();
      bool drop = divides(lh, p.lcm) && !(mono_lcm(li, lh) == p.lcm) && !(mono_lcm(lh, lj) == p.lcm);
      if (!drop) np.push_back(p);
    }
    for (const auto& p : d)
      if (!coprime(lh, elems[static_cast<size_t>(p.i)].p.lm())) np.push_back(p);
    pairs = std::move(np);
    std::vector<int> na;
    for (int g : active)
      if (!divides(lh, elems[static_cast<size_t>(g)].p.lm())) na.push_back(g);
      else elems[static_cast<size_t>(g)].active = false;
    na.push_back(h);
    active = std::move(na);
  };

  auto add_elem = [&](Poly p, int sugar) {
    p = make_monic(p);
    elems.push_back({std::move(p), sugar, true});
    int h = static_cast<int>(elems.size()) - 1;
    if (elems.back().p.is_constant()) {
      active = {h};
      pairs.clear();
      return true;
    }
    update(h);
    return false;
  };

  // sort inputs by leading monomial so the result is independent of input order
  std::vector<Poly> in;
  for (const auto& f : input) {
    Poly g = reorder(f, ord);
    if (!g.is_zero()) in.push_back(make_monic(g));
  }
  std::sort(in.begin(), in.end(), [&](const Poly& a, const Poly& b) {
    int c = ord.cmp(a.lm(), b.lm());
    if (c) return c < 0;
    return a.terms.size() < b.terms.size();
  });
  bool unit = false;
  for (auto& f : in) {
    int s = f.deg();
    ElemReducers red{elems, active};
    Poly h = nf_impl(f, red, ord, true, &s);
    if (h.is_zero()) continue;
    if ((unit = add_elem(std::move(h), s))) break;
  }

  while (!unit && !pairs.empty()) {
    size_t best = 0;
    for (size_t k = 1; k < pairs.size(); ++k) {
      const Pair& a = pairs[k];
      const Pair& b = pairs[best];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = k;
        continue;
      }
      int c = ord.cmp(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::tie(a.i, a.j) < std::tie(b.i, b.j))) best = k;
    }
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + static_cast<long>(best));
    ++stats.pairs;
    Poly s = spoly(elems[static_cast<size_t>(p.i)].p, elems[static_cast<size_t>(p.j)].p, p.lcm, ord);
    int sg = p.sugar;
    ElemReducers red{elems, active};
    Poly h = nf_impl(std::move(s), red, ord, true, &sg);
    if (h.is_zero()) {
      ++stats.reductions_to_zero;
      continue;
    }
    unit = add_elem(std::move(h), sg);
  }

  Ideal gb;
  if (unit) {
    gb.push_back(poly_const(1));
    stats.basis_size = 1;
    return gb;
  }
  for (int a : active) gb.push_back(elems[static_cast<size_t>(a)].p);
  // interreduce tails
  for (size_t k = 0; k < gb.size(); ++k) {
    Ideal others;
    for (size_t o = 0; o < gb.size(); ++o)
      if (o != k) others.push_back(gb[o]);
    Poly head;
    head.terms.push_back(gb[k].terms.front());
    Poly tail;
    tail.terms.assign(gb[k].terms.begin() + 1, gb[k].terms.end());
    tail = normal_form(tail, others, ord);
    gb[k] = make_monic(add(head, tail, ord));
  }
  std::sort(gb.begin(), gb.end(), [&](const Poly& a, const Poly& b) { return ord.cmp(a.lm(), b.lm()) > 0; });
  stats.basis_size = static_cast<long>(gb.size());
  return gb;
}

bool ideal_contains(const Ideal& gb_big, const Ideal& small, const MonoOrder& ord) {
  for (const auto& f : small)
    if (!normal_form(reorder(f, ord), gb_big, ord).is_zero()) return false;
  return true;
}

bool ideal_equal(const Ideal& a, const Ideal& b, const MonoOrder& ord) {
  Ideal ga = buchberger(a, ord), gb = buchberger(b, ord);
  if (ga.size() != gb.size()) return false;
  for (size_t k = 0; k < ga.size(); ++k)
    if (!poly_equal(ga[k], gb[k])) return false;
  return true;
}

Ideal eliminate(const Ideal& gens, uint32_t elim_vars, const MonoOrder& rest) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> e;
  for (int v = 0; v < kMaxVars; ++v)
    if (elim_vars >> v & 1) e.push_back(v);
  blocks.push_back(e);
  for (const auto& b : rest.blocks()) {
    std::vector<int> nb;
    for (int v : b)
      if (!(elim_vars >> v & 1)) nb.push_back(v);
    if (!nb.empty()) blocks.push_back(nb);
  }
  MonoOrder ord(blocks);
  Ideal gb = buchberger(gens, ord);
  Ideal out;
  for (const auto& g : gb)
    if (!(g.support() & elim_vars)) out.push_back(reorder(g, rest));
  std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) { return rest.cmp(a.lm(), b.lm()) > 0; });
  return out;
}

Ideal saturate(const Ideal& gens, const Poly& f, int aux, const MonoOrder& ord) {
  if (gens.empty()) return {};
  std::vector<std::vector<int>> blocks{{aux}};
  for (const auto& b : ord.blocks()) blocks.push_back(b);
  MonoOrder ext(blocks);
  Ideal g = gens;
  Poly yf = mul(poly_var(aux), f, ext);
  g.push_back(sub(yf, poly_const(1), ext));
  return eliminate(g, 1u << aux, ord);
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b, int aux, const MonoOrder& ord) {
  std::vector<std::vector<int>> blocks{{aux}};
  for (const auto& bl : ord.blocks()) blocks.push_back(bl);
  MonoOrder ext(blocks);
  Ideal g;
  Poly w = poly_var(aux), onew = sub(poly_const(1), poly_var(aux), ext);
  for (const auto& f : a) g.push_back(mul(w, f, ext));
  for (const auto& f : b) g.push_back(mul(onew, f, ext));
  return eliminate(g, 1u << aux, ord);
}

Ideal minimalize(const Ideal& gens, const MonoOrder& ord) {
  Ideal s;
  for (const auto& g : gens)
    if (!g.is_zero()) s.push_back(make_monic(reorder(g, ord)));
  std::stable_sort(s.begin(), s.end(), [&](const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    return ord.cmp(a.lm(), b.lm()) < 0;
  });
  bool all_mono = std::all_of(s.begin(), s.end(), [](const Poly& p) { return p.is_monomial(); });
  Ideal kept;
  if (all_mono) {
    for (const auto& g : s) {
      bool red = false;
      for (const auto& k : kept) red = red || divides(k.lm(), g.lm());
      if (!red) kept.push_back(g);
    }
  } else {
    Ideal gb;
    for (const auto& g : s) {
      if (!gb.empty() && normal_form(g, gb, ord).is_zero()) continue;
      kept.push_back(g);
      gb = buchberger(kept, ord);
    }
  }
  std::sort(kept.begin(), kept.end(), [&](const Poly& a, const Poly& b) { return ord.cmp(a.lm(), b.lm()) > 0; });
  return kept;
}

}  // namespace mustafin
