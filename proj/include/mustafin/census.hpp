#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mustafin/building.hpp"
#include "mustafin/fiber.hpp"

namespace mustafin {

// pairs (1,2), (1,3), (2,3)
struct BendPoints {
  std::array<std::optional<LatticeClass>, 3> on_pair;
  int bent_count = 0;
  std::vector<LatticeClass> distinct;  // distinct bend points, pair order
};

BendPoints bend_points(const Configuration& gamma);
int expected_component_count(const Configuration& gamma);

struct TriangleSignature {
  int bent_count = 0;
  int component_count = 0;
  bool monomial_flag = false;
  std::vector<std::string> multidegrees;  // canonical vertex order
  Facets complex;                         // on the canonical vertex order
  // "{i,j,...} class" for every set of two or more components, by vertex set
  std::vector<std::string> intersections;
  std::string key;                        // byte-stable text of all fields
};

TriangleSignature signature(const FiberReport& fiber, int bent_count);

struct RealizationVector {
  std::array<int, 8> v{};  // a, b, c, d, e, f, g, h
};
Configuration realize_monomial_type(const RealizationVector& rv);

struct CatalogEntry {
  int type_id = 0;
  bool planar = false;
  std::string source;  // where the representative comes from
  Configuration rep;
  TriangleSignature sig;
  std::vector<std::string> also;  // other shipped realizations of the same type
};

struct Catalog {
  std::vector<CatalogEntry> entries;  // ordered by type id
  // Table of type counts: [components - 3][bent lines] -> (planar, non-planar)
  std::array<std::array<std::pair<int, int>, 4>, 4> table{};
  int planar = 0, non_planar = 0;
};

struct CatalogOptions {
  int jobs = 1;
};

// Builds and verifies the catalog; throws InternalError when the checks fail.
Catalog build_catalog(const CatalogOptions& opt = {});
const Catalog& census_catalog();
// true when the per-cell counts equal the published table of types
bool catalog_matches_table(const Catalog& cat);

// shipped representatives, before classification
struct Representative {
  std::string source;
  bool planar;
  Configuration config;
};
std::vector<Representative> catalog_representatives();

struct Classification {
  int type_id = 0;
  bool planar = false;
  int bent_count = 0;
  int expected_components = 0;
  FiberReport fiber;
  TriangleSignature sig;
};

Classification classify_triangle(const Configuration& gamma, const Catalog& cat = census_catalog());

// diagonal triples with coordinates in [-range, range], first point at the origin;
// one representative per planar signature, ordered by signature key
std::vector<std::pair<TriangleSignature, Configuration>> planar_search(int range, int jobs = 1);

}  // namespace mustafin
