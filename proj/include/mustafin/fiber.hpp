#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mustafin/building.hpp"
#include "mustafin/groebner.hpp"
#include "mustafin/tropical.hpp"

namespace mustafin {

struct DecompositionUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// variables x_{ji} (coordinate j, factor i) at index (i-1)*d + (j-1), then t
struct FiberRing {
  int d = 0, n = 0;
  Names names;
  MonoOrder ord;
  int t_var() const { return d * n; }
  int aux() const { return d * n + 1; }
  int var(int j, int i) const { return i * d + j; }  // 0-based j, i
  int block_of(int v) const { return v / d; }
};

// xyz names (x1, y1, z1, ...) are only available for d = 3
FiberRing fiber_ring(int d, int n, bool xyz = false);

Ideal minors_ideal(const std::vector<ValuedMatrix>& g, const FiberRing& r);
Ideal saturate_t(const Ideal& gens, const FiberRing& r);
Ideal special_fiber(const Configuration& gamma, const FiberRing& r);
// same ideal through t-saturation of the minors; slower, kept as a cross-check
Ideal special_fiber_saturation(const Configuration& gamma, const FiberRing& r);

// prime components, each as a reduced Groebner basis
std::vector<Ideal> components(const Ideal& fiber, const FiberRing& r);
std::vector<Ideal> squarefree_components(const Ideal& fiber, const FiberRing& r);
std::vector<Ideal> hull_image_components(const Configuration& gamma, const FiberRing& r);

using ChowClass = std::vector<std::vector<int>>;  // exponent vectors a, sorted
ChowClass multidegree(const Ideal& prime, const FiberRing& r);
// top-dimensional cycle of V(I) in the product of projective spaces, with multiplicities
struct CycleClass {
  bool empty = true;
  int codim = 0;
  std::vector<std::pair<std::vector<int>, long>> terms;  // sorted by exponent vector
};
CycleClass cycle_class(const Ideal& gens, const FiberRing& r);
std::string cycle_str(const CycleClass& c);

// factor index (0-based) for primary components, -1 otherwise
std::vector<int> primary_flags(const std::vector<ChowClass>& classes, int d, int n);
bool multiproj_nonempty(const Ideal& gens, const FiberRing& r);
bool multiproj_nonempty_intersection(const Ideal& p, const Ideal& q, const FiberRing& r);
Facets reduction_complex(const std::vector<Ideal>& comps, const FiberRing& r);
ChowClass full_diagonal_class(int d, int n);

struct FiberReport {
  int d = 0, n = 0;
  Ideal fiber_ideal;
  std::vector<Ideal> components;
  std::vector<ChowClass> multidegrees;
  std::vector<int> primary;
  Facets complex;
  std::string method;  // monomial | splitter | hull-image
};

struct FiberOptions {
  bool allow_hull_images = true;
  bool verify = true;
};

FiberReport fiber_report(const Configuration& gamma, const FiberRing& r, const FiberOptions& opt = {});

// canonical text of an ideal: monic generators sorted by leading monomial
std::string ideal_str(const Ideal& gens, const FiberRing& r);
std::vector<std::string> ideal_strs(const Ideal& gens, const FiberRing& r);
Ideal parse_ideal(const std::vector<std::string>& gens, const FiberRing& r);
std::string chow_str(const ChowClass& c);

}  // namespace mustafin
