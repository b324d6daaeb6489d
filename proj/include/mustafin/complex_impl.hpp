#pragma once

#include <algorithm>
#include <set>
#include <vector>

namespace mustafin {

// Grows faces vertex by vertex; a face is tested only when all its
// codimension-one subfaces are present.
template <class Pred>
Facets facets_of_complex(int m, Pred nonempty) {
  std::set<std::vector<int>> all;
  std::vector<std::vector<int>> layer;
  for (int v = 0; v < m; ++v) {
    std::vector<int> f{v};
    if (nonempty(f)) {
      layer.push_back(f);
      all.insert(f);
    }
  }
  while (!layer.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& f : layer)
      for (int v = f.back() + 1; v < m; ++v) {
        std::vector<int> g = f;
        g.push_back(v);
        bool subs = true;
        for (size_t drop = 0; drop + 1 < g.size() && subs; ++drop) {
          std::vector<int> h;
          for (size_t k = 0; k < g.size(); ++k)
            if (k != drop) h.push_back(g[k]);
          subs = all.count(h) > 0;
        }
        if (subs && nonempty(g)) {
          next.push_back(g);
          all.insert(g);
        }
      }
    layer = std::move(next);
  }
  Facets facets;
  for (const auto& f : all) {
    bool maximal = true;
    for (int v = 0; v < m && maximal; ++v) {
      if (std::binary_search(f.begin(), f.end(), v)) continue;
      std::vector<int> g = f;
      g.insert(std::upper_bound(g.begin(), g.end(), v), v);
      if (all.count(g)) maximal = false;
    }
    if (maximal) facets.push_back(f);
  }
  std::sort(facets.begin(), facets.end());
  return facets;
}

}  // namespace mustafin
