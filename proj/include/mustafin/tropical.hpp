#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mustafin {

struct ApartmentPoint {
  std::vector<int64_t> coords;

  ApartmentPoint() = default;
  explicit ApartmentPoint(std::vector<int64_t> c);  // canonicalizes
  int d() const { return static_cast<int>(coords.size()); }
  friend bool operator==(const ApartmentPoint& a, const ApartmentPoint& b) { return a.coords == b.coords; }
  friend bool operator<(const ApartmentPoint& a, const ApartmentPoint& b) { return a.coords < b.coords; }
  std::string str() const;
};

// lattice diag(t^m) <-> point -m
ApartmentPoint point_from_exponents(const std::vector<int64_t>& m);
std::vector<int64_t> exponents_from_point(const ApartmentPoint& u);

using CellSets = std::vector<std::vector<int>>;  // S_1..S_n, 0-based coordinate indices

struct MixedCell {
  ApartmentPoint anchor;
  CellSets sets;
  int64_t volume = 0;  // normalized: vol(Delta_{d-1}) = 1
};

struct MixedSubdivision {
  int d = 0, n = 0;
  std::vector<MixedCell> cells;  // sorted by anchor
};

using Facets = std::vector<std::vector<int>>;

int64_t trop_dist(const ApartmentPoint& u, const ApartmentPoint& v);
bool trop_member(const ApartmentPoint& x, const std::vector<ApartmentPoint>& gamma);
std::vector<ApartmentPoint> tconv_lattice_points(const std::vector<ApartmentPoint>& gamma);

struct TropicalSegment {
  std::vector<ApartmentPoint> breakpoints;  // u, interior pseudo-vertices, v (distinct)
  std::vector<int64_t> lengths;             // d-1 gaps, listed from u
};
TropicalSegment tropical_segment(const ApartmentPoint& u, const ApartmentPoint& v);

// indices 0-based, multiset of size n
int64_t lift_coefficient(const std::vector<ApartmentPoint>& gamma, const std::vector<int>& idx);

int64_t cell_volume(const CellSets& sets, int d);
int cell_dimension(const CellSets& sets, int d);
MixedSubdivision mixed_subdivision(const std::vector<ApartmentPoint>& gamma);

struct GeneralPositionReport {
  bool minors_ok = true;
  bool count_ok = true;
  std::vector<int> bad_rows, bad_cols;  // first degenerate minor found
};
GeneralPositionReport general_position_report(const std::vector<ApartmentPoint>& gamma);
bool is_general_position(const std::vector<ApartmentPoint>& gamma);

// squarefree monomials over the d*n variables x_{ji}, bit (i*d + j)
using SqMono = uint64_t;

struct MonomialFiber {
  std::vector<SqMono> primes;  // one per maximal cell, generators as a bit set
  std::vector<SqMono> ideal;   // minimal squarefree generators
};
MonomialFiber monomial_special_fiber(const std::vector<ApartmentPoint>& gamma);
SqMono cell_prime(const CellSets& sets, int d);

std::vector<SqMono> squarefree_intersection(const std::vector<SqMono>& primes);
std::vector<SqMono> minimal_vertex_covers(const std::vector<SqMono>& gens, int nvars);

bool cells_intersect(const std::vector<const CellSets*>& cells, int d, int n);
Facets reduction_complex_from_cells(const MixedSubdivision& sub);
std::vector<bool> classify_cell_vertices(const MixedSubdivision& sub,
                                         const std::vector<ApartmentPoint>& gamma);

// facets of the complex on vertices 0..m-1 whose faces satisfy the predicate
template <class Pred>
Facets facets_of_complex(int m, Pred nonempty);

int64_t binomial(int64_t n, int64_t k);

}  // namespace mustafin

#include "mustafin/complex_impl.hpp"
