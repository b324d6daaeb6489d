#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mustafin {

constexpr int kMaxVars = 32;

struct Mono {
  std::array<uint8_t, kMaxVars> e{};
  uint32_t mask = 0;

  static Mono var(int i, int k = 1);
  int deg() const;
  bool is_one() const { return mask == 0; }
  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
  friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; }
};

bool divides(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& a, const Mono& b);  // requires divides(b, a)
Mono mono_lcm(const Mono& a, const Mono& b);
bool coprime(const Mono& a, const Mono& b);

// Block order: blocks compared in sequence, degree reverse lexicographic inside
// each block. Variables listed in a block from largest to smallest.
class MonoOrder {
 public:
  MonoOrder() = default;
  explicit MonoOrder(std::vector<std::vector<int>> blocks);
  static MonoOrder grevlex(int nvars);
  int cmp(const Mono& a, const Mono& b) const;
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int nvars() const { return nvars_; }

 private:
  std::vector<std::vector<int>> blocks_;
  int nvars_ = 0;
};

struct Term {
  Mono m;
  mpq_class c;
};

struct Poly {
  std::vector<Term> terms;  // strictly descending in the order used to build it

  bool is_zero() const { return terms.empty(); }
  const Mono& lm() const { return terms.front().m; }
  const mpq_class& lc() const { return terms.front().c; }
  int deg() const;
  bool is_monomial() const { return terms.size() == 1; }
  bool is_constant() const { return terms.size() == 1 && terms[0].m.is_one(); }
  uint32_t support() const;
};

Poly poly_const(const mpq_class& c);
Poly poly_var(int i);
Poly poly_mono(const Mono& m, const mpq_class& c = 1);
// sort and combine according to the order
Poly normalize(std::vector<Term> terms, const MonoOrder& ord);
Poly reorder(const Poly& p, const MonoOrder& ord);
Poly add(const Poly& a, const Poly& b, const MonoOrder& ord);
Poly sub(const Poly& a, const Poly& b, const MonoOrder& ord);
Poly mul(const Poly& a, const Poly& b, const MonoOrder& ord);
Poly scale(const Poly& a, const mpq_class& c);
Poly mul_term(const Poly& a, const Mono& m, const mpq_class& c);
Poly make_monic(const Poly& a);
// substitute x_var = value (rational)
Poly substitute(const Poly& p, int var, const mpq_class& value, const MonoOrder& ord);
bool poly_equal(const Poly& a, const Poly& b);

using Names = std::vector<std::string>;
std::string mono_str(const Mono& m, const Names& names);
std::string poly_str(const Poly& p, const Names& names);
// parse a polynomial over the named variables; coefficients rational
Poly parse_poly(const std::string& text, const Names& names, const MonoOrder& ord);

}  // namespace mustafin
