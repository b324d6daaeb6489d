#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mustafin/building.hpp"

namespace mustafin::cli {

using Doc = nlohmann::ordered_json;

struct Outcome {
  Doc doc;
  int exit_code = 0;
};

Outcome fiber_doc(const Configuration& c, bool xyz);
Outcome tropical_doc(const Configuration& c);
Outcome tree_doc(const Configuration& c);
Outcome segment_doc(const Configuration& c);
Outcome classify_doc(const Configuration& c, int jobs);
Outcome census_doc(int jobs);
Outcome selftest_doc(uint64_t seed, int jobs);

// one "path: value" line per leaf, stable order
std::string render_text(const Doc& doc);

}  // namespace mustafin::cli
