#pragma once

#include <vector>

#include "mustafin/poly.hpp"

namespace mustafin {

using Ideal = std::vector<Poly>;

// reduced Groebner basis, sorted by descending leading monomial
Ideal buchberger(const Ideal& gens, const MonoOrder& ord);
Poly normal_form(const Poly& f, const Ideal& gb, const MonoOrder& ord);
bool is_unit_ideal(const Ideal& gb);

// both inputs arbitrary generators; compares via reduced bases
bool ideal_equal(const Ideal& a, const Ideal& b, const MonoOrder& ord);
bool ideal_contains(const Ideal& gb_big, const Ideal& small, const MonoOrder& ord);

// elements of a Groebner basis free of the listed variables
Ideal eliminate(const Ideal& gens, uint32_t elim_vars, const MonoOrder& rest_order);
// I : f^infinity via the auxiliary variable y (index `aux`)
Ideal saturate(const Ideal& gens, const Poly& f, int aux, const MonoOrder& ord);
// I cap J via a tag variable (index `aux`)
Ideal ideal_intersection(const Ideal& a, const Ideal& b, int aux, const MonoOrder& ord);
// greedy minimal generating set of a homogeneous ideal
Ideal minimalize(const Ideal& gens, const MonoOrder& ord);

struct GroebnerStats {
  long pairs = 0, reductions_to_zero = 0, basis_size = 0;
};
GroebnerStats& last_groebner_stats();

}  // namespace mustafin
