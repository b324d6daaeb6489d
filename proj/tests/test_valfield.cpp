#include <doctest.h>

#include "mustafin/random.hpp"
#include "mustafin/valfield.hpp"

using namespace mustafin;

namespace {
ValuedScalar P(const char* s) { return ValuedScalar::parse(s); }
}  // namespace

TEST_SUITE("valfield") {
  TEST_CASE("valuation") {
    CHECK(val(P("t")) == 1);
    CHECK(val(ValuedScalar()) == kInfVal);
    CHECK(val(P("(t + t^2)/(2*t^3)")) == -2);
    CHECK(val(P("1/t^4")) == -4);
  }

  TEST_CASE("residue") {
    CHECK(residue(P("3 + t")) == 3);
    CHECK(residue(P("t^2")) == 0);
    CHECK(residue(P("(1+t)/(1-t)")) == 1);
    CHECK(residue(P("(2 + t)/(4 - t^3)")) == mpq_class(1, 2));
    CHECK_THROWS_AS(residue(P("1/t")), PreconditionError);
  }

  TEST_CASE("determinant") {
    CHECK(det(ValuedMatrix::identity(3)) == ValuedScalar(1));
    CHECK(det(ValuedMatrix::diag_t({2, 1, 0})) == ValuedScalar::t_pow(3));
    ValuedMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 1;
    m(1, 1) = P("t");
    CHECK(det(m) == P("t"));
  }

  TEST_CASE("canonical form") {
    ValuedScalar a = P("(2*t + 2*t^2)/(4*t)");
    CHECK(a == P("1/2 + 1/2*t"));
    CHECK(P("0") == ValuedScalar());
    CHECK(P("(t - t)/(1 + t)").den() == RatPoly(mpq_class(1)));
    // lowest denominator coefficient is 1
    ValuedScalar b = P("1/(3*t + 6*t^2)");
    CHECK(b.den().low() == 1);
  }

  TEST_CASE("printing round-trips") {
    for (const char* s : {"1 + 2*t^3", "-3/4*t^-2", "t", "0", "(1 + t)/(1 - t)", "1/(2 + t^2)"}) {
      ValuedScalar a = P(s);
      CHECK(ValuedScalar::parse(a.str()) == a);
      CHECK(ValuedScalar::parse(a.str()).str() == a.str());
    }
    CHECK(P("2*t^3 + 1").str() == "1 + 2*t^3");
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(P("1 + "), ParseError);
    CHECK_THROWS_AS(P("(t"), ParseError);
    CHECK_THROWS_AS(P("x"), ParseError);
    CHECK_THROWS_AS(P("1/0"), ParseError);
  }

  TEST_CASE("valuation and residue laws on random samples") {
    Rng rng(11);
    for (int k = 0; k < 300; ++k) {
      ValuedScalar a = random_monomial(rng, 3) + random_monomial(rng, 3);
      ValuedScalar b = random_monomial(rng, 3) * (ValuedScalar(1) + random_monomial(rng, 2));
      if (a.is_zero() || b.is_zero()) continue;
      CHECK(val(a * b) == val(a) + val(b));
      ValuedScalar s = a + b;
      if (!s.is_zero()) {
        CHECK(val(s) >= std::min(val(a), val(b)));
        if (val(a) != val(b)) CHECK(val(s) == std::min(val(a), val(b)));
      }
      if (val(a) >= 0 && val(b) >= 0) {
        CHECK(residue(a + b) == residue(a) + residue(b));
        CHECK(residue(a * b) == residue(a) * residue(b));
      }
    }
  }

  TEST_CASE("determinant is multiplicative") {
    Rng rng(12);
    for (int k = 0; k < 20; ++k) {
      ValuedMatrix a = random_gl(rng, 3, 2), b = random_gl(rng, 3, 2);
      CHECK(det(a * b) == det(a) * det(b));
      CHECK(a * a.inverse() == ValuedMatrix::identity(3));
    }
  }
}
