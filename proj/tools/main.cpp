#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "documents.hpp"
#include "mustafin/fiber.hpp"

using namespace mustafin;

int main(int argc, char** argv) {
  CLI::App app{"Mustafin varieties: special fibers, tropical subdivisions, trees and the triangle census"};
  app.require_subcommand(1);

  std::string format = "text", out_path, input;
  uint64_t seed = 1;
  int jobs = 1;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "write the report here instead of stdout");

  bool xyz = false;
  auto* fiber = app.add_subcommand("fiber", "special fiber, components, classes and reduction complex");
  fiber->add_option("config", input, "configuration document")->required();
  fiber->add_flag("--xyz", xyz, "name coordinates x_i, y_i, z_i (d = 3)");
  auto* tropical = app.add_subcommand("tropical", "mixed subdivision and tropical hull of a diagonal configuration");
  tropical->add_option("config", input, "configuration document")->required();
  auto* tree = app.add_subcommand("tree", "phylogenetic tree and monomial tree (d = 2)");
  tree->add_option("config", input, "configuration document")->required();
  auto* segment = app.add_subcommand("segment", "tropical segment and bend points of two lattices");
  segment->add_option("config", input, "configuration document")->required();
  auto* classify = app.add_subcommand("classify", "combinatorial type of a triangle (d = n = 3)");
  classify->add_option("config", input, "configuration document")->required();
  app.add_subcommand("census", "rebuild and verify the catalog of triangle types");
  app.add_subcommand("selftest", "golden and seeded randomized checks");

  // global flags are accepted after the verb too
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cli::Outcome res;
  try {
    const std::string verb = app.get_subcommands().front()->get_name();
    if (verb == "census") {
      res = cli::census_doc(jobs);
    } else if (verb == "selftest") {
      res = cli::selftest_doc(seed, jobs);
    } else {
      Configuration c = load_configuration(input);
      if (verb == "fiber") res = cli::fiber_doc(c, xyz);
      if (verb == "tropical") res = cli::tropical_doc(c);
      if (verb == "tree") res = cli::tree_doc(c);
      if (verb == "segment") res = cli::segment_doc(c);
      if (verb == "classify") res = cli::classify_doc(c, jobs);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const DecompositionUnsupported& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  }

  std::string text = format == "json" ? res.doc.dump(2) + "\n" : cli::render_text(res.doc);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  return res.exit_code;
}
