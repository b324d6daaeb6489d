#include "mustafin/valfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mustafin {

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(mpq_class c) {
  if (c != 0) c_.push_back(std::move(c));
}

RatPoly::RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(mpq_class c, int k) {
  if (c == 0) return {};
  std::vector<mpq_class> v(static_cast<size_t>(k) + 1);
  v[static_cast<size_t>(k)] = std::move(c);
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int RatPoly::order() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

mpq_class RatPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(k)];
}

mpq_class RatPoly::low() const {
  int o = order();
  return o < 0 ? mpq_class(0) : c_[static_cast<size_t>(o)];
}

RatPoly RatPoly::shift(int k) const {
  if (is_zero() || k == 0) return *this;
  if (k > 0) {
    std::vector<mpq_class> v(static_cast<size_t>(k));
    v.insert(v.end(), c_.begin(), c_.end());
    return RatPoly(std::move(v));
  }
  if (order() < -k) throw std::logic_error("RatPoly::shift: not divisible by t");
  return RatPoly(std::vector<mpq_class>(c_.begin() - k, c_.end()));
}

RatPoly RatPoly::scale(const mpq_class& s) const {
  if (s == 0) return {};
  RatPoly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  return scale(1 / lead());
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-() const { return scale(-1); }

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(v));
}

void RatPoly::divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> rem = a.c_;
  int db = b.degree();
  std::vector<mpq_class> quo(rem.size() > static_cast<size_t>(db) ? rem.size() - db : 0);
  for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
    if (rem[static_cast<size_t>(k)] == 0) continue;
    mpq_class f = rem[static_cast<size_t>(k)] / b.lead();
    quo[static_cast<size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k - db + j)] -= f * b.c_[static_cast<size_t>(j)];
  }
  q = RatPoly(std::move(quo));
  r = RatPoly(std::move(rem));
}

RatPoly RatPoly::gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// ---------------------------------------------------------- ValuedScalar

ValuedScalar::ValuedScalar() : den_(mpq_class(1)) {}
ValuedScalar::ValuedScalar(long v) : num_(mpq_class(v)), den_(mpq_class(1)) {}
ValuedScalar::ValuedScalar(const mpq_class& q) : num_(q), den_(mpq_class(1)) {}
ValuedScalar::ValuedScalar(const RatPoly& p) : num_(p), den_(mpq_class(1)) {}
ValuedScalar::ValuedScalar(const RatPoly& num, const RatPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void ValuedScalar::normalize() {
  if (num_.is_zero()) {
    den_ = RatPoly(mpq_class(1));
    return;
  }
  RatPoly g = RatPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    RatPoly q, r;
    RatPoly::divmod(num_, g, q, r);
    num_ = q;
    RatPoly::divmod(den_, g, q, r);
    den_ = q;
  }
  mpq_class s = 1 / den_.low();
  num_ = num_.scale(s);
  den_ = den_.scale(s);
}

ValuedScalar ValuedScalar::t_pow(int k) {
  if (k >= 0) return ValuedScalar(RatPoly::monomial(1, k));
  return ValuedScalar(RatPoly(mpq_class(1)), RatPoly::monomial(1, -k));
}

ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return ValuedScalar(a.num_ + b.num_, a.den_);
  return ValuedScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ValuedScalar ValuedScalar::operator-() const {
  ValuedScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b) { return a + (-b); }

ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ValuedScalar(a.num_ * b.num_, a.den_ * b.den_);
}

ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b) {
  if (b.is_zero()) throw std::domain_error("division by zero scalar");
  if (a.is_zero()) return {};
  return ValuedScalar(a.num_ * b.den_, a.den_ * b.num_);
}

std::vector<mpq_class> ValuedScalar::series(int lo, int hi) const {
  std::vector<mpq_class> out(static_cast<size_t>(std::max(0, hi - lo)));
  if (is_zero() || hi <= lo) return out;
  int a = num_.order(), b = den_.order();
  RatPoly n1 = num_.shift(-a), d1 = den_.shift(-b);
  int v = a - b;
  int need = hi - v;  // number of unit-series coefficients required
  std::vector<mpq_class> c(static_cast<size_t>(std::max(0, need)));
  mpq_class d0 = d1.coeff(0);
  for (int k = 0; k < need; ++k) {
    mpq_class acc = n1.coeff(k);
    for (int j = 1; j <= k && j <= d1.degree(); ++j) acc -= d1.coeff(j) * c[static_cast<size_t>(k - j)];
    c[static_cast<size_t>(k)] = acc / d0;
  }
  for (int m = lo; m < hi; ++m) {
    int k = m - v;
    if (k >= 0 && k < need) out[static_cast<size_t>(m - lo)] = c[static_cast<size_t>(k)];
  }
  return out;
}

int64_t val(const ValuedScalar& s) {
  if (s.is_zero()) return kInfVal;
  return s.num().order() - s.den().order();
}

mpq_class residue(const ValuedScalar& s) {
  if (s.is_zero()) return 0;
  int64_t v = val(s);
  if (v < 0) throw PreconditionError("residue of an element with negative valuation");
  if (v > 0) return 0;
  return s.num().coeff(0) / s.den().coeff(0);
}

// ------------------------------------------------------------- printing

namespace {

std::string q_str(const mpq_class& q) { return q.get_str(); }

bool single_term(const RatPoly& p) {
  int n = 0;
  for (const auto& c : p.coeffs()) n += (c != 0);
  return n <= 1;
}

}  // namespace

std::string poly_str(const RatPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  const auto& cs = p.coeffs();
  for (size_t k = 0; k < cs.size(); ++k) {
    if (cs[k] == 0) continue;
    mpq_class a = abs(cs[k]);
    bool neg = cs[k] < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (k == 0) {
      out += q_str(a);
      continue;
    }
    if (a != 1) out += q_str(a) + "*";
    out += "t";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string ValuedScalar::str() const {
  if (den_ == RatPoly(mpq_class(1))) return poly_str(num_);
  std::string n = poly_str(num_), d = poly_str(den_);
  if (!single_term(num_)) n = "(" + n + ")";
  if (!single_term(den_)) d = "(" + d + ")";
  return n + "/" + d;
}

// -------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ValuedScalar run() {
    ValuedScalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("scalar '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
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
  ValuedScalar expr() {
    ValuedScalar v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  ValuedScalar term() {
    ValuedScalar v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        ValuedScalar d = unary();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }
  ValuedScalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  ValuedScalar power() {
    ValuedScalar b = atom();
    if (!eat('^')) return b;
    bool neg = eat('-');
    long e = integer();
    if (e > 4096) fail("exponent too large");
    if (neg && b.is_zero()) fail("zero to a negative power");
    ValuedScalar r(1L);
    for (long i = 0; i < e; ++i) r = r * b;
    return neg ? ValuedScalar(1L) / r : r;
  }
  long integer() {
    skip();
    size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected integer");
    if (pos_ - st > 9) fail("integer exponent too long");
    return std::stol(s_.substr(st, pos_ - st));
  }
  ValuedScalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ValuedScalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 't') {
      ++pos_;
      return ValuedScalar::t_pow(1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ValuedScalar(mpq_class(mpz_class(s_.substr(st, pos_ - st))));
    }
    fail("unexpected character");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

ValuedScalar ValuedScalar::parse(const std::string& text) { return Parser(text).run(); }

// --------------------------------------------------------------- matrices

ValuedMatrix::ValuedMatrix(int rows, int cols)
    : r_(rows), c_(cols), e_(static_cast<size_t>(rows * cols)) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
}

ValuedMatrix ValuedMatrix::identity(int d) {
  ValuedMatrix m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = ValuedScalar(1L);
  return m;
}

ValuedMatrix ValuedMatrix::diag_t(const std::vector<int64_t>& exps) {
  int d = static_cast<int>(exps.size());
  ValuedMatrix m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = ValuedScalar::t_pow(static_cast<int>(exps[static_cast<size_t>(i)]));
  return m;
}

ValuedMatrix operator*(const ValuedMatrix& a, const ValuedMatrix& b) {
  if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
  ValuedMatrix m(a.r_, b.c_);
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.c_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += a(i, k) * b(k, j);
    }
  return m;
}

ValuedMatrix ValuedMatrix::transpose() const {
  ValuedMatrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ValuedMatrix ValuedMatrix::column(int j) const {
  ValuedMatrix m(r_, 1);
  for (int i = 0; i < r_; ++i) m(i, 0) = (*this)(i, j);
  return m;
}

int64_t ValuedMatrix::min_val() const {
  int64_t m = kInfVal;
  for (const auto& x : e_) m = std::min(m, val(x));
  return m;
}

std::string ValuedMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

ValuedMatrix ValuedMatrix::inverse() const {
  if (r_ != c_) throw std::invalid_argument("inverse of a non-square matrix");
  int n = r_;
  ValuedMatrix a = *this, inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!a(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) throw PreconditionError("singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    ValuedScalar p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / p;
      inv(col, j) = inv(col, j) / p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      ValuedScalar f = a(i, col);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

ValuedScalar det(const ValuedMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of a non-square matrix");
  int n = m.rows();
  // clear denominators row by row, then Bareiss over Q[t]
  std::vector<std::vector<RatPoly>> a(static_cast<size_t>(n), std::vector<RatPoly>(static_cast<size_t>(n)));
  RatPoly scale(mpq_class(1));
  for (int i = 0; i < n; ++i) {
    RatPoly l(mpq_class(1));
    for (int j = 0; j < n; ++j) {
      const RatPoly& d = m(i, j).den();
      RatPoly g = RatPoly::gcd(l, d), q, r;
      RatPoly::divmod(l * d, g, q, r);
      l = q;
    }
    for (int j = 0; j < n; ++j) {
      RatPoly q, r;
      RatPoly::divmod(l * m(i, j).num(), m(i, j).den(), q, r);
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = q;
    }
    scale = scale * l;
  }
  int sign = 1;
  RatPoly prev(mpq_class(1));
  for (int k = 0; k < n - 1; ++k) {
    auto K = static_cast<size_t>(k);
    if (a[K][K].is_zero()) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a[static_cast<size_t>(i)][K].is_zero()) {
          sw = i;
          break;
        }
      if (sw < 0) return {};
      std::swap(a[K], a[static_cast<size_t>(sw)]);
      sign = -sign;
    }
    for (size_t i = K + 1; i < static_cast<size_t>(n); ++i)
      for (size_t j = K + 1; j < static_cast<size_t>(n); ++j) {
        RatPoly q, r;
        RatPoly::divmod(a[i][j] * a[K][K] - a[i][K] * a[K][j], prev, q, r);
        a[i][j] = q;
      }
    prev = a[K][K];
  }
  RatPoly d = a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
  if (sign < 0) d = -d;
  return ValuedScalar(d, scale);
}

// ------------------------------------------------------- rational algebra

std::vector<int> rref(QMatrix& m) {
  std::vector<int> piv;
  if (m.empty()) return piv;
  size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    mpq_class inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    piv.push_back(static_cast<int>(c));
    ++r;
  }
  return piv;
}

int rank(QMatrix m) { return static_cast<int>(rref(m).size()); }

}  // namespace mustafin
