#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "mustafin/valfield.hpp"

namespace mustafin {

struct LatticeClass {
  ValuedMatrix gen;

  LatticeClass() = default;
  explicit LatticeClass(ValuedMatrix g);
  static LatticeClass diag(const std::vector<int64_t>& exps);
  int d() const { return gen.rows(); }
};

struct ResidueSubspace {
  QMatrix basis;  // d rows, one column per basis vector
  int dim() const { return basis.empty() ? 0 : static_cast<int>(basis[0].size()); }
};

struct Configuration {
  int d = 0;
  std::vector<LatticeClass> points;
  std::vector<std::string> labels;

  int n() const { return static_cast<int>(points.size()); }
  // checks common dimension, invertibility and pairwise distinctness
  void validate() const;
};

// Smith form of gen(a)^{-1} gen(b) over R: L_a = basis R^d, L_b = basis diag(t^e) R^d.
struct SmithData {
  ValuedMatrix basis;
  std::vector<int64_t> exps;  // nondecreasing, pivot order
};
SmithData smith_pair(const LatticeClass& a, const LatticeClass& b);

std::vector<int64_t> elementary_exponents(const LatticeClass& a, const LatticeClass& b);
int64_t class_distance(const LatticeClass& a, const LatticeClass& b);
bool same_class(const LatticeClass& a, const LatticeClass& b);
bool adjacent(const LatticeClass& a, const LatticeClass& b);
LatticeClass lattice_intersection(const LatticeClass& a, const LatticeClass& b, int64_t p,
                                  int64_t q);

// Hermite form over R, scaled so the first diagonal exponent is 0.
LatticeClass canonical_rep(const LatticeClass& a);
std::string class_key(const LatticeClass& a);
// exponent vector m when the class is diag(t^m) in the standard basis (m_0 = 0)
std::optional<std::vector<int64_t>> diagonal_exponents(const LatticeClass& a);

std::vector<LatticeClass> convex_hull(const Configuration& gamma);

struct CommonApartment {
  ValuedMatrix basis;
  std::vector<int64_t> exps_a, exps_b;
};
CommonApartment common_apartment(const LatticeClass& a, const LatticeClass& b);

ResidueSubspace first_step_subspace(const LatticeClass& base, const LatticeClass& other);

// configuration documents
LatticeClass lattice_from_json(const nlohmann::json& j, int d);
Configuration configuration_from_json(const nlohmann::json& j);
Configuration load_configuration(const std::string& path);
nlohmann::json configuration_to_json(const Configuration& c);

}  // namespace mustafin
