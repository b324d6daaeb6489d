#include "mustafin/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "mustafin/valfield.hpp"

namespace mustafin {

Mono Mono::var(int i, int k) {
  if (i < 0 || i >= kMaxVars) throw std::out_of_range("variable index out of range");
  Mono m;
  m.e[static_cast<size_t>(i)] = static_cast<uint8_t>(k);
  if (k) m.mask = 1u << i;
  return m;
}

int Mono::deg() const {
  int s = 0;
  for (uint32_t b = mask; b; b &= b - 1) s += e[static_cast<size_t>(__builtin_ctz(b))];
  return s;
}

bool divides(const Mono& a, const Mono& b) {
  if (a.mask & ~b.mask) return false;
  for (uint32_t m = a.mask; m; m &= m - 1) {
    size_t i = static_cast<size_t>(__builtin_ctz(m));
    if (a.e[i] > b.e[i]) return false;
  }
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r = a;
  for (uint32_t m = b.mask; m; m &= m - 1) {
    size_t i = static_cast<size_t>(__builtin_ctz(m));
    unsigned s = unsigned{r.e[i]} + b.e[i];
    if (s > 250) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<uint8_t>(s);
  }
  r.mask |= b.mask;
  return r;
}

Mono mono_div(const Mono& a, const Mono& b) {
  Mono r = a;
  for (uint32_t m = b.mask; m; m &= m - 1) {
    size_t i = static_cast<size_t>(__builtin_ctz(m));
    r.e[i] = static_cast<uint8_t>(r.e[i] - b.e[i]);
    if (!r.e[i]) r.mask &= ~(1u << i);
  }
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r = a;
  for (uint32_t m = b.mask; m; m &= m - 1) {
    size_t i = static_cast<size_t>(__builtin_ctz(m));
    r.e[i] = std::max(r.e[i], b.e[i]);
  }
  r.mask |= b.mask;
  return r;
}

bool coprime(const Mono& a, const Mono& b) { return (a.mask & b.mask) == 0; }

MonoOrder::MonoOrder(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
  uint32_t seen = 0;
  for (const auto& b : blocks_)
    for (int v : b) {
      if (v < 0 || v >= kMaxVars || (seen >> v & 1)) throw std::invalid_argument("bad block order");
      seen |= 1u << v;
      nvars_ = std::max(nvars_, v + 1);
    }
}

MonoOrder MonoOrder::grevlex(int nvars) {
  std::vector<int> b(static_cast<size_t>(nvars));
  for (int i = 0; i < nvars; ++i) b[static_cast<size_t>(i)] = i;
  return MonoOrder({b});
}

int MonoOrder::cmp(const Mono& a, const Mono& b) const {
  if (a.e == b.e) return 0;
  for (const auto& blk : blocks_) {
    int da = 0, db = 0;
    for (int v : blk) {
      da += a.e[static_cast<size_t>(v)];
      db += b.e[static_cast<size_t>(v)];
    }
    if (da != db) return da > db ? 1 : -1;
    for (size_t k = blk.size(); k-- > 0;) {
      auto v = static_cast<size_t>(blk[k]);
      if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? 1 : -1;
    }
  }
  // variables outside every block are compared lexicographically last
  for (size_t v = 0; v < kMaxVars; ++v)
    if (a.e[v] != b.e[v]) return a.e[v] > b.e[v] ? 1 : -1;
  return 0;
}

int Poly::deg() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, t.m.deg());
  return d;
}

uint32_t Poly::support() const {
  uint32_t s = 0;
  for (const auto& t : terms) s |= t.m.mask;
  return s;
}

Poly poly_const(const mpq_class& c) {
  Poly p;
  if (c != 0) p.terms.push_back({Mono{}, c});
  return p;
}

Poly poly_var(int i) {
  Poly p;
  p.terms.push_back({Mono::var(i), 1});
  return p;
}

Poly poly_mono(const Mono& m, const mpq_class& c) {
  Poly p;
  if (c != 0) p.terms.push_back({m, c});
  return p;
}

Poly normalize(std::vector<Term> terms, const MonoOrder& ord) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms.empty() && p.terms.back().m == t.m) {
      p.terms.back().c += t.c;
      if (p.terms.back().c == 0) p.terms.pop_back();
    } else if (t.c != 0) {
      p.terms.push_back(std::move(t));
    }
  }
  return p;
}

Poly reorder(const Poly& p, const MonoOrder& ord) { return normalize(p.terms, ord); }

namespace {

// a + s*b, both sorted
Poly merge(const Poly& a, const Poly& b, const mpq_class& s, const MonoOrder& ord) {
  Poly r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    int c = i == a.terms.size() ? -1 : j == b.terms.size() ? 1 : ord.cmp(a.terms[i].m, b.terms[j].m);
    if (c > 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (c < 0) {
      r.terms.push_back({b.terms[j].m, s * b.terms[j].c});
      ++j;
    } else {
      mpq_class v = a.terms[i].c + s * b.terms[j].c;
      if (v != 0) r.terms.push_back({a.terms[i].m, v});
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

Poly add(const Poly& a, const Poly& b, const MonoOrder& ord) { return merge(a, b, 1, ord); }
Poly sub(const Poly& a, const Poly& b, const MonoOrder& ord) { return merge(a, b, -1, ord); }

Poly scale(const Poly& a, const mpq_class& c) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& t : r.terms) t.c *= c;
  return r;
}

Poly mul_term(const Poly& a, const Mono& m, const mpq_class& c) {
  if (c == 0) return {};
  Poly r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back({mono_mul(t.m, m), t.c * c});
  return r;  // monomial multiplication preserves the order
}

Poly mul(const Poly& a, const Poly& b, const MonoOrder& ord) {
  std::vector<Term> ts;
  ts.reserve(a.terms.size() * b.terms.size());
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) ts.push_back({mono_mul(x.m, y.m), x.c * y.c});
  return normalize(std::move(ts), ord);
}

Poly make_monic(const Poly& a) {
  if (a.is_zero() || a.lc() == 1) return a;
  return scale(a, 1 / a.lc());
}

Poly substitute(const Poly& p, int var, const mpq_class& value, const MonoOrder& ord) {
  std::vector<Term> ts;
  auto v = static_cast<size_t>(var);
  for (const auto& t : p.terms) {
    Term n = t;
    int k = n.m.e[v];
    if (k) {
      n.m.e[v] = 0;
      n.m.mask &= ~(1u << var);
      mpq_class f = 1;
      for (int i = 0; i < k; ++i) f *= value;
      n.c *= f;
    }
    if (n.c != 0) ts.push_back(std::move(n));
  }
  return normalize(std::move(ts), ord);
}

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (!(a.terms[i].m == b.terms[i].m) || a.terms[i].c != b.terms[i].c) return false;
  return true;
}

std::string mono_str(const Mono& m, const Names& names) {
  std::string s;
  for (size_t i = 0; i < kMaxVars; ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += "*";
    s += i < names.size() ? names[i] : "v" + std::to_string(i);
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string poly_str(const Poly& p, const Names& names) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms) {
    bool neg = t.c < 0;
    mpq_class a = abs(t.c);
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (t.m.is_one()) {
      s += a.get_str();
    } else {
      if (a != 1) s += a.get_str() + "*";
      s += mono_str(t.m, names);
    }
  }
  return s;
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& s, const Names& names, const MonoOrder& ord)
      : s_(s), names_(names), ord_(ord) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& w) const {
    throw ParseError("polynomial '" + s_ + "': " + w + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly p = term();
    for (;;) {
      if (eat('+'))
        p = add(p, term(), ord_);
      else if (eat('-'))
        p = sub(p, term(), ord_);
      else
        return p;
    }
  }
  Poly term() {
    Poly p = unary();
    for (;;) {
      if (eat('*')) {
        p = mul(p, unary(), ord_);
      } else if (eat('/')) {
        Poly d = unary();
        if (!d.is_constant()) fail("division by a non-constant");
        p = scale(p, 1 / d.lc());
      } else {
        skip();
        // juxtaposition of variables, as in x1y2
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
          p = mul(p, unary(), ord_);
        else
          return p;
      }
    }
  }
  Poly unary() {
    if (eat('-')) return scale(unary(), -1);
    if (eat('+')) return unary();
    Poly b = atom();
    if (eat('^')) {
      skip();
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("expected exponent");
      int k = std::stoi(s_.substr(st, pos_ - st));
      Poly r = poly_const(1);
      for (int i = 0; i < k; ++i) r = mul(r, b, ord_);
      return r;
    }
    return b;
  }
  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return poly_const(mpq_class(mpz_class(s_.substr(st, pos_ - st))));
    }
    // longest variable name match
    size_t best = 0;
    int idx = -1;
    for (size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (n.size() > best && s_.compare(pos_, n.size(), n) == 0) {
        best = n.size();
        idx = static_cast<int>(i);
      }
    }
    if (idx < 0) fail("unknown variable");
    pos_ += best;
    return poly_var(idx);
  }

  const std::string& s_;
  const Names& names_;
  const MonoOrder& ord_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const Names& names, const MonoOrder& ord) {
  return PolyParser(text, names, ord).run();
}

}  // namespace mustafin
