#include "mustafin/random.hpp"

#include <algorithm>

namespace mustafin {

int64_t uniform(Rng& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

ValuedScalar random_monomial(Rng& rng, int range) {
  int64_t c = uniform(rng, 1, 3) * (rng() % 2 ? 1 : -1);
  return ValuedScalar(static_cast<long>(c)) * ValuedScalar::t_pow(static_cast<int>(uniform(rng, -range, range)));
}

ValuedMatrix random_lattice_basis(Rng& rng, int d, int range, bool diagonal) {
  for (;;) {
    ValuedMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i != j && (diagonal || rng() % 2)) continue;
        m(i, j) = random_monomial(rng, range);
      }
    if (!det(m).is_zero()) return m;
  }
}

ValuedMatrix random_unimodular(Rng& rng, int d) {
  for (;;) {
    ValuedMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m(i, j) = ValuedScalar(RatPoly(std::vector<mpq_class>{uniform(rng, -2, 2), uniform(rng, -2, 2)}));
    ValuedScalar dt = det(m);
    if (!dt.is_zero() && val(dt) == 0) return m;
  }
}

ValuedMatrix random_gl(Rng& rng, int d, int range) {
  for (;;) {
    ValuedMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m(i, j) = ValuedScalar(RatPoly(std::vector<mpq_class>{uniform(rng, -3, 3), uniform(rng, -3, 3)})) *
                  ValuedScalar::t_pow(static_cast<int>(uniform(rng, -range, range)));
    if (!det(m).is_zero()) return m;
  }
}

Configuration random_configuration(Rng& rng, int d, int n, int range, bool all_diagonal) {
  Configuration c;
  c.d = d;
  while (c.n() < n) {
    bool diag = all_diagonal || rng() % 3 == 0;
    LatticeClass l(random_lattice_basis(rng, d, range, diag));
    bool dup = false;
    for (const auto& p : c.points) dup = dup || same_class(p, l);
    if (!dup) c.points.push_back(l);
  }
  return c;
}

std::vector<ApartmentPoint> random_points(Rng& rng, int d, int n, int range) {
  std::vector<ApartmentPoint> pts;
  while (static_cast<int>(pts.size()) < n) {
    std::vector<int64_t> u(static_cast<size_t>(d), 0);
    for (int j = 1; j < d; ++j) u[static_cast<size_t>(j)] = uniform(rng, -range, range);
    ApartmentPoint p(u);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return pts;
}

}  // namespace mustafin
