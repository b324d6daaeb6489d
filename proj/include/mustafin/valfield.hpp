#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mustafin {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dense univariate polynomial over Q, coefficients in ascending degree
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(mpq_class c);
  explicit RatPoly(std::vector<mpq_class> coeffs);
  static RatPoly monomial(mpq_class c, int k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int order() const;  // lowest nonzero degree, -1 for zero
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int k) const;
  const mpq_class& lead() const { return c_.back(); }
  mpq_class low() const;  // lowest nonzero coefficient

  RatPoly shift(int k) const;  // times t^k, k may be negative if divisible
  RatPoly scale(const mpq_class& s) const;
  RatPoly monic() const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  RatPoly operator-() const;
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  static void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
  static RatPoly gcd(RatPoly a, RatPoly b);

 private:
  void trim();
  std::vector<mpq_class> c_;
};

constexpr int64_t kInfVal = INT64_MAX;

class ValuedScalar {
 public:
  ValuedScalar();
  ValuedScalar(long v);  // NOLINT implicit from integer literals is convenient
  explicit ValuedScalar(const mpq_class& q);
  explicit ValuedScalar(const RatPoly& p);
  ValuedScalar(const RatPoly& num, const RatPoly& den);

  static ValuedScalar t_pow(int k);
  static ValuedScalar parse(const std::string& text);

  const RatPoly& num() const { return num_; }
  const RatPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b);
  ValuedScalar operator-() const;
  ValuedScalar& operator+=(const ValuedScalar& o) { return *this = *this + o; }
  ValuedScalar& operator-=(const ValuedScalar& o) { return *this = *this - o; }
  ValuedScalar& operator*=(const ValuedScalar& o) { return *this = *this * o; }
  friend bool operator==(const ValuedScalar& a, const ValuedScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const;

  // Laurent expansion coefficients of t^lo .. t^(hi-1)
  std::vector<mpq_class> series(int lo, int hi) const;

 private:
  void normalize();
  RatPoly num_, den_;
};

int64_t val(const ValuedScalar& s);
mpq_class residue(const ValuedScalar& s);
std::string poly_str(const RatPoly& p);

class ValuedMatrix {
 public:
  ValuedMatrix() = default;
  ValuedMatrix(int rows, int cols);
  static ValuedMatrix identity(int d);
  static ValuedMatrix diag_t(const std::vector<int64_t>& exps);

  int rows() const { return r_; }
  int cols() const { return c_; }
  ValuedScalar& operator()(int i, int j) { return e_[static_cast<size_t>(i * c_ + j)]; }
  const ValuedScalar& operator()(int i, int j) const {
    return e_[static_cast<size_t>(i * c_ + j)];
  }

  friend ValuedMatrix operator*(const ValuedMatrix& a, const ValuedMatrix& b);
  friend bool operator==(const ValuedMatrix& a, const ValuedMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
  }

  ValuedMatrix inverse() const;
  ValuedMatrix transpose() const;
  ValuedMatrix column(int j) const;
  int64_t min_val() const;
  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<ValuedScalar> e_;
};

ValuedScalar det(const ValuedMatrix& m);

// rational matrix helpers used by several modules
using QMatrix = std::vector<std::vector<mpq_class>>;
int rank(QMatrix m);
// reduced row echelon form in place, returns pivot columns
std::vector<int> rref(QMatrix& m);

}  // namespace mustafin
